#ifndef ICK_HILBERT_HPP
#define ICK_HILBERT_HPP

// Checker for Hilbert-style derivations in ICK/ICKT/ICKS4/ICKS5: finite
// trees whose leaves are axiom instances or assumptions and whose inner
// nodes apply MP, Nec, Mon, or Ind, with the proviso that below a Nec, Mon,
// or Ind step every leaf must be an axiom. Intuitionistic tautologies are
// recognized by abstracting maximal modal subformulas to fresh atoms and
// deciding the propositional remainder.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ick/engine.hpp"

namespace ick {

namespace detail {

inline bool is_neg_of(F f, F body) { return f == f_imp(body, f_bottom()); }

// Replaces each maximal K_a / C subformula by a fresh atom (shared between
// identical subformulas), leaving a purely propositional formula.
inline F abstract_modal(F f, std::map<F, F>& fresh) {
  switch (f->kind) {
    case Kind::Bottom:
    case Kind::Atom: return f;
    case Kind::And: return f_and(abstract_modal(f->lhs, fresh), abstract_modal(f->rhs, fresh));
    case Kind::Or: return f_or(abstract_modal(f->lhs, fresh), abstract_modal(f->rhs, fresh));
    case Kind::Implies:
      return f_imp(abstract_modal(f->lhs, fresh), abstract_modal(f->rhs, fresh));
    case Kind::Know:
    case Kind::Com: {
      auto it = fresh.find(f);
      if (it != fresh.end()) return it->second;
      // '#' cannot appear in parsed atom names, so no collision with input atoms
      F atom = f_atom("#m" + std::to_string(fresh.size()));
      fresh.emplace(f, atom);
      return atom;
    }
  }
  throw std::logic_error("unreachable");
}

inline bool fix_forward(F f, const Agents& agents) {  // C phi -> (phi & E C phi)
  return f->kind == Kind::Implies && f->lhs->kind == Kind::Com &&
         f->rhs == f_and(f->lhs->lhs, f_everybody(agents, f->lhs));
}

inline bool fix_backward(F f, const Agents& agents) {  // (phi & E C phi) -> C phi
  return f->kind == Kind::Implies && f->rhs->kind == Kind::Com &&
         f->lhs == f_and(f->rhs->lhs, f_everybody(agents, f->rhs));
}

}  // namespace detail

// Does f instantiate the named axiom scheme of the system?
inline bool match_axiom_scheme(Calculus sys, F f, const std::string& scheme,
                               const Agents& agents) {
  using detail::is_neg_of;
  if (scheme == "K_a") {
    // K_a(phi -> psi) -> (K_a phi -> K_a psi)
    if (f->kind != Kind::Implies || f->lhs->kind != Kind::Know ||
        f->lhs->lhs->kind != Kind::Implies)
      return false;
    const std::string& a = f->lhs->name;
    return f->rhs == f_imp(f_know(a, f->lhs->lhs->lhs), f_know(a, f->lhs->lhs->rhs));
  }
  if (scheme == "K_a^c") {
    // (K_a phi -> psi) -> (~K_a phi | psi)     (ICKS5)
    if (sys != Calculus::cICKS5) return false;
    if (f->kind != Kind::Implies || f->lhs->kind != Kind::Implies ||
        f->lhs->lhs->kind != Kind::Know)
      return false;
    return f->rhs == f_or(f_neg(f->lhs->lhs), f->lhs->rhs);
  }
  if (scheme == "T_a") {
    // K_a phi -> phi                           (ICKT, ICKS4, ICKS5)
    if (sys == Calculus::cICK) return false;
    return f->kind == Kind::Implies && f->lhs->kind == Kind::Know && f->lhs->lhs == f->rhs;
  }
  if (scheme == "S4_a") {
    // K_a phi -> K_a K_a phi                   (ICKS4)
    if (sys != Calculus::cICKS4) return false;
    return f->kind == Kind::Implies && f->lhs->kind == Kind::Know &&
           f->rhs == f_know(f->lhs->name, f->lhs);
  }
  if (scheme == "S5_a") {
    // ~K_a phi -> K_a ~K_a phi                 (ICKS5)
    if (sys != Calculus::cICKS5) return false;
    if (f->kind != Kind::Implies || f->lhs->kind != Kind::Implies ||
        f->lhs->lhs->kind != Kind::Know || !is_neg_of(f->lhs, f->lhs->lhs))
      return false;
    return f->rhs == f_know(f->lhs->lhs->name, f->lhs);
  }
  if (scheme == "Fix") {
    // C phi <-> (phi & E C phi), accepted as either direction or as the
    // conjunction of both directions about the same formula
    if (detail::fix_forward(f, agents) || detail::fix_backward(f, agents)) return true;
    if (f->kind == Kind::And) {
      if (detail::fix_forward(f->lhs, agents) && detail::fix_backward(f->rhs, agents) &&
          f->lhs->lhs == f->rhs->rhs)
        return true;
      if (detail::fix_backward(f->lhs, agents) && detail::fix_forward(f->rhs, agents) &&
          f->lhs->rhs == f->rhs->lhs)
        return true;
    }
    return false;
  }
  if (scheme == "Int") {
    std::map<F, F> fresh;
    F prop = detail::abstract_modal(f, fresh);
    DecideOptions opt;
    opt.want_certificate = false;
    return decide(Calculus::cICK, prop, make_agents({"a"}), opt).provable;
  }
  return false;
}

inline std::optional<std::string> match_axiom(Calculus sys, F f, const Agents& agents) {
  for (const char* scheme : {"K_a", "K_a^c", "T_a", "S4_a", "S5_a", "Fix", "Int"})
    if (match_axiom_scheme(sys, f, scheme, agents)) return std::string(scheme);
  return std::nullopt;
}

// --- derivations -------------------------------------------------------------

struct DerivNode {
  int id = 0;
  F formula = nullptr;
  std::string kind;    // axiom | assumption | rule
  std::string scheme;  // for axiom nodes (optional: any scheme accepted if empty)
  std::string rule;    // MP | Nec | Mon | Ind
  std::string agent;   // for Nec (optional: taken from the conclusion if empty)
  std::vector<int> premise_ids;
};

struct Derivation {
  std::vector<DerivNode> nodes;  // node id == index
  int root = 0;
};

inline F conclusion(const Derivation& d) { return d.nodes.at(d.root).formula; }

inline bool check_derivation(Calculus sys, const Derivation& d, const FSet& assumptions,
                             const Agents& agents, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int n = static_cast<int>(d.nodes.size());
  if (n == 0) return fail("empty derivation");
  if (d.root < 0 || d.root >= n) return fail("bad root id");
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i) {
    if (d.nodes[i].id != i) return fail("node ids must be dense and ordered");
    for (int c : d.nodes[i].premise_ids) {
      if (c < 0 || c >= n || c == d.root) return fail("bad premise id");
      if (parent[c] != -1) return fail("node referenced twice (not a tree)");
      parent[c] = i;
    }
  }
  for (int i = 0; i < n; ++i)
    if (i != d.root && parent[i] == -1) return fail("unreachable node");

  // assumption-free subtrees, bottom-up over the tree order implied by ids is
  // not guaranteed, so recurse with memoization
  std::vector<int> pure(n, -1);
  auto pure_of = [&](auto&& self, int v) -> bool {
    if (pure[v] != -1) return pure[v] != 0;
    bool p = true;
    if (d.nodes[v].kind == "assumption") p = false;
    for (int c : d.nodes[v].premise_ids) p = self(self, c) && p;
    pure[v] = p ? 1 : 0;
    return p;
  };

  for (const DerivNode& nd : d.nodes) {
    const std::string at = "node " + std::to_string(nd.id) + ": ";
    if (!nd.formula) return fail(at + "missing formula");
    if (nd.kind == "axiom") {
      if (!nd.premise_ids.empty()) return fail(at + "axiom with premises");
      if (!nd.scheme.empty()) {
        if (!match_axiom_scheme(sys, nd.formula, nd.scheme, agents))
          return fail(at + "not an instance of scheme " + nd.scheme);
      } else if (!match_axiom(sys, nd.formula, agents))
        return fail(at + "not an axiom instance");
    } else if (nd.kind == "assumption") {
      if (!nd.premise_ids.empty()) return fail(at + "assumption with premises");
      if (!assumptions.count(nd.formula)) return fail(at + "formula is not an assumption");
    } else if (nd.kind == "rule") {
      const auto& pr = nd.premise_ids;
      if (nd.rule == "MP") {
        if (pr.size() != 2) return fail(at + "MP takes two premises");
        F x = d.nodes[pr[0]].formula, y = d.nodes[pr[1]].formula;
        bool ok = (y->kind == Kind::Implies && y->lhs == x && y->rhs == nd.formula) ||
                  (x->kind == Kind::Implies && x->lhs == y && x->rhs == nd.formula);
        if (!ok) return fail(at + "MP premises do not match");
      } else if (nd.rule == "Nec") {
        if (pr.size() != 1) return fail(at + "Nec takes one premise");
        if (nd.formula->kind != Kind::Know ||
            nd.formula->lhs != d.nodes[pr[0]].formula ||
            (!nd.agent.empty() && nd.agent != nd.formula->name))
          return fail(at + "Nec conclusion does not match");
        if (!pure_of(pure_of, pr[0])) return fail(at + "Nec over an assumption");
      } else if (nd.rule == "Mon") {
        if (pr.size() != 1) return fail(at + "Mon takes one premise");
        F p = d.nodes[pr[0]].formula;
        bool ok = p->kind == Kind::Implies && nd.formula == f_imp(f_com(p->lhs), f_com(p->rhs));
        if (!ok) return fail(at + "Mon premise does not match");
        if (!pure_of(pure_of, pr[0])) return fail(at + "Mon over an assumption");
      } else if (nd.rule == "Ind") {
        if (pr.size() != 1) return fail(at + "Ind takes one premise");
        F p = d.nodes[pr[0]].formula;
        bool ok = p->kind == Kind::Implies && nd.formula->kind == Kind::Implies &&
                  nd.formula->lhs == p->lhs && nd.formula->rhs == f_com(p->lhs) &&
                  p->rhs == f_everybody(agents, p->lhs);
        if (!ok) return fail(at + "Ind premise does not match");
        if (!pure_of(pure_of, pr[0])) return fail(at + "Ind over an assumption");
      } else
        return fail(at + "unknown rule '" + nd.rule + "'");
    } else
      return fail(at + "unknown justification kind '" + nd.kind + "'");
  }
  return true;
}

// --- JSON --------------------------------------------------------------------
// nodes: {id, formula, just: {kind, scheme?, rule?, agent?, premise_ids}}

inline nlohmann::json derivation_to_json(const Derivation& d) {
  nlohmann::json j;
  j["root"] = d.root;
  auto& nodes = j["nodes"] = nlohmann::json::array();
  for (const DerivNode& nd : d.nodes) {
    nlohmann::json just;
    just["kind"] = nd.kind;
    if (!nd.scheme.empty()) just["scheme"] = nd.scheme;
    if (!nd.rule.empty()) just["rule"] = nd.rule;
    if (!nd.agent.empty()) just["agent"] = nd.agent;
    just["premise_ids"] = nd.premise_ids;
    nodes.push_back({{"id", nd.id}, {"formula", render(nd.formula)}, {"just", std::move(just)}});
  }
  return j;
}

inline Derivation derivation_from_json(const nlohmann::json& j, const Agents& agents) {
  Derivation d;
  d.root = j.value("root", 0);
  for (const auto& nj : j.at("nodes")) {
    DerivNode nd;
    nd.id = nj.at("id").get<int>();
    nd.formula = parse(nj.at("formula").get<std::string>(), agents);
    const auto& just = nj.at("just");
    nd.kind = just.at("kind").get<std::string>();
    nd.scheme = just.value("scheme", "");
    nd.rule = just.value("rule", "");
    nd.agent = just.value("agent", "");
    if (just.contains("premise_ids"))
      for (const auto& c : just.at("premise_ids")) nd.premise_ids.push_back(c.get<int>());
    d.nodes.push_back(std::move(nd));
  }
  std::sort(d.nodes.begin(), d.nodes.end(),
            [](const DerivNode& a, const DerivNode& b) { return a.id < b.id; });
  return d;
}

}  // namespace ick

#endif  // ICK_HILBERT_HPP
