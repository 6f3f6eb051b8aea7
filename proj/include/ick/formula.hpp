#ifndef ICK_FORMULA_HPP
#define ICK_FORMULA_HPP

// Formula AST for intuitionistic common-knowledge logic: bottom, atoms,
// conjunction, disjunction, implication, per-agent knowledge K_a and common
// knowledge C. Formulas are hash-consed: equal structure means equal pointer,
// so formula sets are cheap. A deterministic structural order is provided for
// reproducible enumeration.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ick {

enum class Kind : uint8_t { Bottom, Atom, And, Or, Implies, Know, Com };

struct Formula;
using F = const Formula*;

struct Formula {
  Kind kind;
  std::string name;  // atom name or agent name (Know)
  F lhs = nullptr;   // left child / modal body
  F rhs = nullptr;   // right child (binary connectives)
};

namespace detail {

struct FormulaKey {
  Kind kind;
  std::string name;
  F lhs;
  F rhs;
  bool operator==(const FormulaKey& o) const {
    return kind == o.kind && name == o.name && lhs == o.lhs && rhs == o.rhs;
  }
};

struct FormulaKeyHash {
  size_t operator()(const FormulaKey& k) const {
    size_t h = std::hash<int>()(static_cast<int>(k.kind));
    h = h * 1000003u ^ std::hash<std::string>()(k.name);
    h = h * 1000003u ^ std::hash<const void*>()(k.lhs);
    h = h * 1000003u ^ std::hash<const void*>()(k.rhs);
    return h;
  }
};

inline F intern(Kind kind, const std::string& name, F lhs, F rhs) {
  static std::unordered_map<FormulaKey, std::unique_ptr<Formula>, FormulaKeyHash> pool;
  FormulaKey key{kind, name, lhs, rhs};
  auto it = pool.find(key);
  if (it != pool.end()) return it->second.get();
  auto node = std::make_unique<Formula>(Formula{kind, name, lhs, rhs});
  F raw = node.get();
  pool.emplace(std::move(key), std::move(node));
  return raw;
}

}  // namespace detail

inline F f_bottom() { return detail::intern(Kind::Bottom, "", nullptr, nullptr); }
inline F f_atom(const std::string& p) { return detail::intern(Kind::Atom, p, nullptr, nullptr); }
inline F f_and(F l, F r) { return detail::intern(Kind::And, "", l, r); }
inline F f_or(F l, F r) { return detail::intern(Kind::Or, "", l, r); }
inline F f_imp(F l, F r) { return detail::intern(Kind::Implies, "", l, r); }
inline F f_know(const std::string& agent, F body) { return detail::intern(Kind::Know, agent, body, nullptr); }
inline F f_com(F body) { return detail::intern(Kind::Com, "", body, nullptr); }

inline F f_neg(F x) { return f_imp(x, f_bottom()); }
inline F f_top() { return f_imp(f_bottom(), f_bottom()); }

// Agent sets are sorted, duplicate-free name lists.
using Agents = std::vector<std::string>;

inline Agents make_agents(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (names.empty()) throw std::invalid_argument("agent set must be nonempty");
  return names;
}

// E phi = conjunction of K_a phi over all agents, right-folded over the
// sorted agent list; a single agent yields just K_a phi.
inline F f_everybody(const Agents& agents, F body) {
  F acc = nullptr;
  for (auto it = agents.rbegin(); it != agents.rend(); ++it) {
    F k = f_know(*it, body);
    acc = acc ? f_and(k, acc) : k;
  }
  return acc;
}

// Deterministic structural total order (independent of interning order).
inline int struct_cmp(F a, F b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  if (a->lhs != b->lhs) {
    int c = struct_cmp(a->lhs, b->lhs);
    if (c) return c;
  }
  if (a->rhs != b->rhs) {
    if (!a->rhs) return -1;
    if (!b->rhs) return 1;
    return struct_cmp(a->rhs, b->rhs);
  }
  return 0;
}

struct StructLess {
  bool operator()(F a, F b) const { return struct_cmp(a, b) < 0; }
};

using FSet = std::set<F, StructLess>;

// --- complexity (Def: atoms and bottom are 0; every connective adds 1) -----

inline int complexity(F f) {
  switch (f->kind) {
    case Kind::Bottom:
    case Kind::Atom: return 0;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies: return complexity(f->lhs) + complexity(f->rhs) + 1;
    case Kind::Know:
    case Kind::Com: return complexity(f->lhs) + 1;
  }
  return 0;
}

inline int complexity(const FSet& fs) {
  int total = 0;
  for (F f : fs) total += complexity(f);
  return total;
}

// --- closure operators ------------------------------------------------------

// Smallest superset closed under: subformulas; K_a psi adds psi; C psi adds
// psi and K_a C psi for every agent.
inline FSet closure(const FSet& start, const Agents& agents) {
  FSet out;
  std::vector<F> work(start.begin(), start.end());
  auto push = [&](F f) {
    if (out.insert(f).second) work.push_back(f);
  };
  for (F f : start) out.insert(f);
  work.assign(out.begin(), out.end());
  while (!work.empty()) {
    F f = work.back();
    work.pop_back();
    switch (f->kind) {
      case Kind::Bottom:
      case Kind::Atom: break;
      case Kind::And:
      case Kind::Or:
      case Kind::Implies:
        push(f->lhs);
        push(f->rhs);
        break;
      case Kind::Know: push(f->lhs); break;
      case Kind::Com:
        push(f->lhs);
        for (const auto& a : agents) push(f_know(a, f));
        break;
    }
  }
  return out;
}

// Negation closure: closure conditions plus K_a psi adds ~K_a psi.
inline FSet negation_closure(const FSet& start, const Agents& agents) {
  FSet out = closure(start, agents);
  for (;;) {
    FSet extra;
    for (F f : out)
      if (f->kind == Kind::Know && !out.count(f_neg(f))) extra.insert(f_neg(f));
    if (extra.empty()) return out;
    for (F f : extra) out.insert(f);
    out = closure(out, agents);
  }
}

// --- parser -----------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  size_t position;
};

namespace detail {

class Parser {
 public:
  Parser(const std::string& text, const Agents& agents) : text_(text), agents_(agents) {}

  F parse() {
    F f = implication();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return f;
  }

 private:
  const std::string& text_;
  const Agents& agents_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (text_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  F implication() {  // right-associative, lowest precedence
    F l = disjunction();
    if (eat("->")) return f_imp(l, implication());
    return l;
  }

  F disjunction() {
    F l = conjunction();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      return f_or(l, disjunction());
    }
    return l;
  }

  F conjunction() {
    F l = unary();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '&') {
      ++pos_;
      return f_and(l, conjunction());
    }
    return l;
  }

  F unary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '~') {
      ++pos_;
      return f_neg(unary());
    }
    if (c == 'K') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '{')
        throw ParseError("expected '{agent}' after K", pos_);
      ++pos_;
      size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != '}') ++pos_;
      if (pos_ >= text_.size()) throw ParseError("unterminated agent name", start);
      std::string agent = text_.substr(start, pos_ - start);
      ++pos_;
      if (!std::binary_search(agents_.begin(), agents_.end(), agent))
        throw ParseError("unknown agent '" + agent + "'", start);
      return f_know(agent, unary());
    }
    if (c == 'C') {
      ++pos_;
      return f_com(unary());
    }
    if (c == 'E') {
      ++pos_;
      return f_everybody(agents_, unary());
    }
    if (c == '(') {
      ++pos_;
      F f = implication();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("expected ')'", pos_);
      ++pos_;
      return f;
    }
    if (c >= 'a' && c <= 'z') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
              (text_[pos_] >= 'A' && text_[pos_] <= 'Z') ||
              (text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '_'))
        ++pos_;
      std::string word = text_.substr(start, pos_ - start);
      if (word == "false") return f_bottom();
      if (word == "true") return f_top();
      return f_atom(word);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }
};

}  // namespace detail

inline F parse(const std::string& text, const Agents& agents) {
  return detail::Parser(text, agents).parse();
}

// --- renderer ---------------------------------------------------------------
// Precedence: -> (1, right-assoc) < | (2) < & (3) < unary (4).

namespace detail {

inline void render_rec(F f, int min_prec, std::string& out) {
  switch (f->kind) {
    case Kind::Bottom: out += "false"; break;
    case Kind::Atom: out += f->name; break;
    case Kind::Implies:
      if (f->rhs->kind == Kind::Bottom) {  // print negation as ~
        out += "~";
        render_rec(f->lhs, 4, out);
        break;
      }
      if (min_prec > 1) out += "(";
      render_rec(f->lhs, 2, out);
      out += " -> ";
      render_rec(f->rhs, 1, out);
      if (min_prec > 1) out += ")";
      break;
    case Kind::Or:
      if (min_prec > 2) out += "(";
      render_rec(f->lhs, 3, out);
      out += " | ";
      render_rec(f->rhs, 2, out);
      if (min_prec > 2) out += ")";
      break;
    case Kind::And:
      if (min_prec > 3) out += "(";
      render_rec(f->lhs, 4, out);
      out += " & ";
      render_rec(f->rhs, 3, out);
      if (min_prec > 3) out += ")";
      break;
    case Kind::Know:
      out += "K{" + f->name + "} ";
      render_rec(f->lhs, 4, out);
      break;
    case Kind::Com:
      out += "C ";
      render_rec(f->lhs, 4, out);
      break;
  }
}

}  // namespace detail

inline std::string render(F f) {
  std::string out;
  detail::render_rec(f, 0, out);
  return out;
}

}  // namespace ick

#endif  // ICK_FORMULA_HPP
