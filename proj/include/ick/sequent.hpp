#ifndef ICK_SEQUENT_HPP
#define ICK_SEQUENT_HPP

// Annotated sequents: left formulas are always unfocused; the right side is a
// set of unfocused formulas plus at most one focused formula, which must have
// the shape C psi or K_a C psi. Includes the axiom test, the sequent
// interpretation, the saturation predicates, and a text form
// "G1, G2 => D1, [D2]" with the focused formula in brackets.

#include <optional>
#include <string>
#include <vector>

#include "ick/formula.hpp"

namespace ick {

enum class Calculus { cICK, cICKT, cICKS4, cICKS5 };

inline std::string calculus_name(Calculus c) {
  switch (c) {
    case Calculus::cICK: return "cICK";
    case Calculus::cICKT: return "cICKT";
    case Calculus::cICKS4: return "cICKS4";
    case Calculus::cICKS5: return "cICKS5";
  }
  return "?";
}

inline std::optional<Calculus> calculus_from_logic_name(const std::string& s) {
  if (s == "ICK" || s == "cICK") return Calculus::cICK;
  if (s == "ICKT" || s == "cICKT") return Calculus::cICKT;
  if (s == "ICKS4" || s == "cICKS4") return Calculus::cICKS4;
  if (s == "ICKS5" || s == "cICKS5") return Calculus::cICKS5;
  return std::nullopt;
}

// Only C psi or K_a C psi may carry the focus annotation.
inline bool focus_shaped(F f) {
  return f->kind == Kind::Com || (f->kind == Kind::Know && f->lhs->kind == Kind::Com);
}

// Sorted duplicate-free formula list, ordered structurally for determinism.
using FVec = std::vector<F>;

inline bool fvec_contains(const FVec& v, F f) {
  return std::binary_search(v.begin(), v.end(), f, StructLess{});
}

inline FVec fvec_sorted(std::vector<F> v) {
  std::sort(v.begin(), v.end(), StructLess{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline FVec fvec_add(FVec v, F f) {
  auto it = std::lower_bound(v.begin(), v.end(), f, StructLess{});
  if (it == v.end() || *it != f) v.insert(it, f);
  return v;
}

inline FVec fvec_remove(FVec v, F f) {
  auto it = std::lower_bound(v.begin(), v.end(), f, StructLess{});
  if (it != v.end() && *it == f) v.erase(it);
  return v;
}

struct Sequent {
  FVec left;         // unfocused antecedent
  FVec right;        // unfocused succedent
  F focus = nullptr; // optional focused succedent formula

  bool operator==(const Sequent& o) const {
    return focus == o.focus && left == o.left && right == o.right;
  }

  // Plain right side (unfocused formulas plus the focused one, if any).
  FVec right_plain() const { return focus ? fvec_add(right, focus) : right; }

  bool right_has(F f) const { return focus == f || fvec_contains(right, f); }
};

struct SequentHash {
  size_t operator()(const Sequent& s) const {
    size_t h = std::hash<const void*>()(s.focus);
    for (F f : s.left) h = h * 1000003u ^ std::hash<const void*>()(f);
    h ^= 0x9e3779b97f4a7c15ull;
    for (F f : s.right) h = h * 1000003u ^ std::hash<const void*>()(f);
    return h;
  }
};

inline Sequent make_sequent(std::vector<F> left, std::vector<F> right, F focus = nullptr) {
  if (focus && !focus_shaped(focus))
    throw std::invalid_argument("focused formula must be C psi or K_a C psi");
  return Sequent{fvec_sorted(std::move(left)), fvec_sorted(std::move(right)), focus};
}

// Axiom test: "id" if some formula is on the left and on the right (either
// annotation), "bot" if bottom is on the left; id is preferred.
inline std::optional<std::string> is_axiom(const Sequent& s) {
  for (F f : s.left)
    if (s.right_has(f)) return std::string("id");
  if (fvec_contains(s.left, f_bottom())) return std::string("bot");
  return std::nullopt;
}

// sigma^I = /\ left -> \/ right, with the empty conjunction read as true and
// the empty disjunction as false.
inline F interpretation(const Sequent& s) {
  F ante = nullptr;
  for (auto it = s.left.rbegin(); it != s.left.rend(); ++it)
    ante = ante ? f_and(*it, ante) : *it;
  FVec rp = s.right_plain();
  F succ = nullptr;
  for (auto it = rp.rbegin(); it != rp.rend(); ++it)
    succ = succ ? f_or(*it, succ) : *it;
  return f_imp(ante ? ante : f_top(), succ ? succ : f_bottom());
}

// Is the sequent a Sigma-sequent (all plain formulas inside Sigma)?
inline bool is_sigma_sequent(const Sequent& s, const FSet& sigma) {
  for (F f : s.left)
    if (!sigma.count(f)) return false;
  for (F f : s.right_plain())
    if (!sigma.count(f)) return false;
  return true;
}

// --- saturation (proof-search for cICK / cICKT / cICKS4) --------------------
// The nine clauses; clause 9 (K_a phi in Gamma implies phi in Gamma) applies
// for cICKT and cICKS4 only. Right-side membership in the clauses means
// unfocused membership; clause 8 forbids a focused C formula.

inline bool is_search_saturated(Calculus cal, const Sequent& s, const Agents& agents) {
  if (cal == Calculus::cICKS5)
    throw std::invalid_argument("search saturation is undefined for cICKS5");
  if (s.focus && s.focus->kind == Kind::Com) return false;  // clause 8
  for (F f : s.left) {
    switch (f->kind) {
      case Kind::And:  // clause 1
        if (!fvec_contains(s.left, f->lhs) || !fvec_contains(s.left, f->rhs)) return false;
        break;
      case Kind::Or:  // clause 2
        if (!fvec_contains(s.left, f->lhs) && !fvec_contains(s.left, f->rhs)) return false;
        break;
      case Kind::Implies:  // clause 3
        if (!fvec_contains(s.right, f->lhs) && !fvec_contains(s.left, f->rhs)) return false;
        break;
      case Kind::Com: {  // clause 4
        if (!fvec_contains(s.left, f->lhs)) return false;
        for (const auto& a : agents)
          if (!fvec_contains(s.left, f_know(a, f))) return false;
        break;
      }
      case Kind::Know:  // clause 9
        if (cal != Calculus::cICK && !fvec_contains(s.left, f->lhs)) return false;
        break;
      default: break;
    }
  }
  for (F f : s.right) {
    switch (f->kind) {
      case Kind::And:  // clause 5
        if (!fvec_contains(s.right, f->lhs) && !fvec_contains(s.right, f->rhs)) return false;
        break;
      case Kind::Or:  // clause 6
        if (!fvec_contains(s.right, f->lhs) || !fvec_contains(s.right, f->rhs)) return false;
        break;
      case Kind::Com: {  // clause 7
        if (fvec_contains(s.right, f->lhs)) break;
        bool some = false;
        for (const auto& a : agents)
          if (fvec_contains(s.right, f_know(a, f))) { some = true; break; }
        if (!some) return false;
        break;
      }
      default: break;
    }
  }
  return true;
}

// Saturation used to gate analytic cut in cICKS5: the non-cut clauses above
// (with the T clause always on) plus a clause for the K_a-> rule.
inline bool is_s5_saturated(const Sequent& s, const Agents& agents) {
  if (s.focus && s.focus->kind == Kind::Com) return false;
  for (F f : s.left) {
    switch (f->kind) {
      case Kind::And:
        if (!fvec_contains(s.left, f->lhs) || !fvec_contains(s.left, f->rhs)) return false;
        break;
      case Kind::Or:
        if (!fvec_contains(s.left, f->lhs) && !fvec_contains(s.left, f->rhs)) return false;
        break;
      case Kind::Implies:
        if (!fvec_contains(s.right, f->lhs) && !fvec_contains(s.left, f->rhs)) return false;
        break;
      case Kind::Com: {
        if (!fvec_contains(s.left, f->lhs)) return false;
        for (const auto& a : agents)
          if (!fvec_contains(s.left, f_know(a, f))) return false;
        break;
      }
      case Kind::Know:
        if (!fvec_contains(s.left, f->lhs)) return false;
        break;
      default: break;
    }
  }
  for (F f : s.right) {
    switch (f->kind) {
      case Kind::And:
        if (!fvec_contains(s.right, f->lhs) && !fvec_contains(s.right, f->rhs)) return false;
        break;
      case Kind::Or:
        if (!fvec_contains(s.right, f->lhs) || !fvec_contains(s.right, f->rhs)) return false;
        break;
      case Kind::Com: {
        if (fvec_contains(s.right, f->lhs)) break;
        bool some = false;
        for (const auto& a : agents)
          if (fvec_contains(s.right, f_know(a, f))) { some = true; break; }
        if (!some) return false;
        break;
      }
      case Kind::Implies:  // K_a-> clause
        if (f->lhs->kind == Kind::Know &&
            !(fvec_contains(s.left, f->lhs) && fvec_contains(s.right, f->rhs)))
          return false;
        break;
      default: break;
    }
  }
  return true;
}

// --- text form ---------------------------------------------------------------

inline std::string render(const Sequent& s) {
  std::string out;
  bool first = true;
  for (F f : s.left) {
    if (!first) out += ", ";
    out += render(f);
    first = false;
  }
  out += " => ";
  first = true;
  for (F f : s.right) {
    if (!first) out += ", ";
    out += render(f);
    first = false;
  }
  if (s.focus) {
    if (!first) out += ", ";
    out += "[" + render(s.focus) + "]";
  }
  return out;
}

inline Sequent parse_sequent(const std::string& text, const Agents& agents) {
  auto arrow = text.find("=>");
  if (arrow == std::string::npos)
    throw std::invalid_argument("sequent text needs '=>'");
  auto split = [](const std::string& part) {
    std::vector<std::string> items;
    std::string cur;
    for (char c : part) {
      if (c == ',') {
        items.push_back(cur);
        cur.clear();
      } else
        cur += c;
    }
    items.push_back(cur);
    return items;
  };
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::vector<F> left, right;
  F focus = nullptr;
  for (auto& item : split(text.substr(0, arrow))) {
    std::string t = trim(item);
    if (!t.empty()) left.push_back(parse(t, agents));
  }
  for (auto& item : split(text.substr(arrow + 2))) {
    std::string t = trim(item);
    if (t.empty()) continue;
    if (t.front() == '[' && t.back() == ']') {
      if (focus) throw std::invalid_argument("at most one focused formula");
      focus = parse(t.substr(1, t.size() - 2), agents);
    } else
      right.push_back(parse(t, agents));
  }
  return make_sequent(std::move(left), std::move(right), focus);
}

}  // namespace ick

#endif  // ICK_SEQUENT_HPP
