#ifndef ICK_RULES_HPP
#define ICK_RULES_HPP

// Rule-instance enumeration for the four cyclic calculi. The enumeration
// policy: at axiom sequents only the axiom instance is offered; invertible
// single-principal rules come in preserving and non-preserving variants;
// knowledge rules keep the maximal boxed antecedent (and, for the S5 rule,
// the maximal boxed right part); analytic cut is restricted to fresh cut
// formulas and only offered at sequents saturated for the non-cut rules.
// Also provides the bundled choice rule C_n used by the search arena.

#include <string>
#include <vector>

#include "ick/sequent.hpp"

namespace ick {

struct RuleInstance {
  std::string rule;   // id, bot, and-l, and-r, or-l, or-r, imp-l, imp-r,
                      // c-l, c-r, k, t, s4, s5, k-imp, u, f, cut, C0, C1
  std::string agent;  // for k/t/s4/s5/k-imp and modal choice premises
  Sequent conclusion;
  std::vector<Sequent> premises;
  F principal = nullptr;
  bool principal_focused = false;  // true for c-r applied to the focused formula
};

namespace detail {

inline FVec unbox(const FVec& left, const std::string& agent) {
  FVec out;
  for (F f : left)
    if (f->kind == Kind::Know && f->name == agent) out.push_back(f->lhs);
  return fvec_sorted(out);
}

inline FVec boxed_subset(const FVec& v, const std::string& agent) {
  FVec out;
  for (F f : v)
    if (f->kind == Kind::Know && f->name == agent) out.push_back(f);
  return out;  // already sorted
}

}  // namespace detail

inline std::vector<RuleInstance> rule_instances(Calculus cal, const Sequent& s,
                                                const FSet& sigma, const Agents& agents) {
  std::vector<RuleInstance> out;

  if (auto ax = is_axiom(s)) {
    out.push_back(RuleInstance{*ax, "", s, {}, nullptr, false});
    return out;
  }

  // Left contexts with and without the principal formula.
  auto left_ctxs = [&](F principal) {
    return std::vector<FVec>{s.left, fvec_remove(s.left, principal)};
  };
  auto right_ctxs = [&](F principal) {
    return std::vector<FVec>{s.right, fvec_remove(s.right, principal)};
  };

  // and-l: G, phi&psi => D  /  G, phi, psi => D
  for (F p : s.left)
    if (p->kind == Kind::And)
      for (auto& ctx : left_ctxs(p))
        out.push_back({"and-l", "", s,
                       {Sequent{fvec_add(fvec_add(ctx, p->lhs), p->rhs), s.right, s.focus}},
                       p, false});

  // or-l: G, phi|psi => D  /  G, phi => D ; G, psi => D
  for (F p : s.left)
    if (p->kind == Kind::Or)
      for (auto& ctx : left_ctxs(p))
        out.push_back({"or-l", "", s,
                       {Sequent{fvec_add(ctx, p->lhs), s.right, s.focus},
                        Sequent{fvec_add(ctx, p->rhs), s.right, s.focus}},
                       p, false});

  // imp-l: G, phi->psi => D  /  G => phi, D ; G, psi => D
  for (F p : s.left)
    if (p->kind == Kind::Implies)
      for (auto& ctx : left_ctxs(p))
        out.push_back({"imp-l", "", s,
                       {Sequent{ctx, fvec_add(s.right, p->lhs), s.focus},
                        Sequent{fvec_add(ctx, p->rhs), s.right, s.focus}},
                       p, false});

  // c-l: G, C phi => D  /  G, phi, {K_a C phi}_a => D
  for (F p : s.left)
    if (p->kind == Kind::Com)
      for (auto& ctx : left_ctxs(p)) {
        FVec nl = fvec_add(ctx, p->lhs);
        for (const auto& a : agents) nl = fvec_add(nl, f_know(a, p));
        out.push_back({"c-l", "", s, {Sequent{nl, s.right, s.focus}}, p, false});
      }

  // t: G, K_a phi => D  /  G, phi => D   (cICKT, cICKS4, cICKS5)
  if (cal != Calculus::cICK)
    for (F p : s.left)
      if (p->kind == Kind::Know)
        for (auto& ctx : left_ctxs(p))
          out.push_back({"t", p->name, s,
                         {Sequent{fvec_add(ctx, p->lhs), s.right, s.focus}},
                         p, false});

  // and-r: G => phi&psi, D  /  G => phi, D ; G => psi, D
  for (F p : s.right)
    if (p->kind == Kind::And)
      for (auto& ctx : right_ctxs(p))
        out.push_back({"and-r", "", s,
                       {Sequent{s.left, fvec_add(ctx, p->lhs), s.focus},
                        Sequent{s.left, fvec_add(ctx, p->rhs), s.focus}},
                       p, false});

  // or-r: G => phi|psi, D  /  G => phi, psi, D
  for (F p : s.right)
    if (p->kind == Kind::Or)
      for (auto& ctx : right_ctxs(p))
        out.push_back({"or-r", "", s,
                       {Sequent{s.left, fvec_add(fvec_add(ctx, p->lhs), p->rhs), s.focus}},
                       p, false});

  // imp-r: G => phi->psi, D  /  G, phi => psi   (context discarded)
  for (F p : s.right)
    if (p->kind == Kind::Implies)
      out.push_back({"imp-r", "", s,
                     {Sequent{fvec_add(s.left, p->lhs), FVec{p->rhs}, nullptr}},
                     p, false});

  // c-r on an unfocused principal:
  //   G => C phi, D  /  G => phi, D' ; { G => K_a C phi, D' }_a
  for (F p : s.right)
    if (p->kind == Kind::Com)
      for (auto& ctx : right_ctxs(p)) {
        std::vector<Sequent> prem{Sequent{s.left, fvec_add(ctx, p->lhs), s.focus}};
        for (const auto& a : agents)
          prem.push_back(Sequent{s.left, fvec_add(ctx, f_know(a, p)), s.focus});
        out.push_back({"c-r", "", s, std::move(prem), p, false});
      }

  // c-r on the focused principal: the left premise carries no focus.
  if (s.focus && s.focus->kind == Kind::Com) {
    F p = s.focus;
    std::vector<Sequent> prem{Sequent{s.left, fvec_add(s.right, p->lhs), nullptr}};
    for (const auto& a : agents)
      prem.push_back(Sequent{s.left, s.right, f_know(a, p)});
    out.push_back({"c-r", "", s, std::move(prem), p, true});
  }

  // Knowledge rules. Principal K_a phi may sit unfocused on the right or be
  // the focused K_a C gamma; contexts without residuals are discarded and the
  // boxed antecedent is kept maximal.
  auto modal_targets = [&]() {
    std::vector<std::pair<F, bool>> targets;  // (principal, focused?)
    for (F p : s.right)
      if (p->kind == Kind::Know) targets.emplace_back(p, false);
    if (s.focus && s.focus->kind == Kind::Know) targets.emplace_back(s.focus, true);
    return targets;
  };

  if (cal == Calculus::cICK || cal == Calculus::cICKT) {
    // k: P, K_a G => K_a phi^a, S  /  G => phi^a
    for (auto [p, foc] : modal_targets()) {
      FVec nl = detail::unbox(s.left, p->name);
      Sequent prem = foc ? Sequent{nl, {}, p->lhs} : Sequent{nl, FVec{p->lhs}, nullptr};
      out.push_back({"k", p->name, s, {prem}, p, false});
    }
  } else if (cal == Calculus::cICKS4) {
    // s4: P, K_a G => K_a phi^a, S  /  K_a G => phi^a
    for (auto [p, foc] : modal_targets()) {
      FVec nl = detail::boxed_subset(s.left, p->name);
      Sequent prem = foc ? Sequent{nl, {}, p->lhs} : Sequent{nl, FVec{p->lhs}, nullptr};
      out.push_back({"s4", p->name, s, {prem}, p, false});
    }
  } else {
    // s5: P, K_a G => K_a phi^a, K_a D, S  /  K_a G => phi^a, K_a D
    for (auto [p, foc] : modal_targets()) {
      FVec nl = detail::boxed_subset(s.left, p->name);
      FVec nr = detail::boxed_subset(s.right, p->name);
      if (!foc) nr = fvec_remove(nr, p);
      Sequent prem = foc ? Sequent{nl, nr, p->lhs}
                         : Sequent{nl, fvec_add(nr, p->lhs), nullptr};
      out.push_back({"s5", p->name, s, {prem}, p, false});
    }
  }

  if (cal == Calculus::cICKS5) {
    // k-imp: G => (K_a phi -> psi)^u, D  /  G, K_a phi => psi, D
    for (F p : s.right)
      if (p->kind == Kind::Implies && p->lhs->kind == Kind::Know)
        for (auto& ctx : right_ctxs(p))
          out.push_back({"k-imp", p->lhs->name, s,
                         {Sequent{fvec_add(s.left, p->lhs), fvec_add(ctx, p->rhs), s.focus}},
                         p, false});
  }

  // Focus management: u drops the focus back into the unfocused right part;
  // f promotes an unfocused C-shaped right formula when no focus is present.
  if (s.focus)
    out.push_back({"u", "", s, {Sequent{s.left, fvec_add(s.right, s.focus), nullptr}}, s.focus, false});
  else
    for (F p : s.right)
      if (focus_shaped(p))
        out.push_back({"f", "", s, {Sequent{s.left, fvec_remove(s.right, p), p}}, p, false});

  if (cal == Calculus::cICKS5 && is_s5_saturated(s, agents)) {
    // Analytic cut on a fresh Sigma formula, gated on saturation and
    // scheduled: only the least fresh formula (ordered by complexity, then
    // rendering) is offered. Lindenbaum saturation by cuts is insensitive to
    // the order in which fresh formulas are introduced, so a fixed schedule
    // preserves completeness while the reachable sequent space stays near
    // 2^|Sigma| instead of 3^|Sigma|. The proof checker accepts any fresh
    // analytic cut, so certificates do not depend on the schedule.
    F chi = nullptr;
    for (F c : sigma)
      if (!fvec_contains(s.left, c) && !s.right_has(c))
        if (!chi || complexity(c) < complexity(chi) ||
            (complexity(c) == complexity(chi) && render(c) < render(chi)))
          chi = c;
    if (chi)
      out.push_back({"cut", "", s,
                     {Sequent{fvec_add(s.left, chi), s.right, s.focus},
                      Sequent{s.left, fvec_add(s.right, chi), s.focus}},
                     chi, false});
  }

  return out;
}

// --- the bundled choice rule C_n ---------------------------------------------
// From a saturated sequent: intuitionistic premises {G, phi => psi} for every
// implication phi->psi on the right, and modal premises of each agent a,
// {K_a^n K_a^{-1} G => chi^x} for every chi with K_a chi on the right, where
// the annotation x is f exactly when chi is a C formula. n = 0 for cICK and
// cICKT, n = 1 for cICKS4.

struct ChoicePremise {
  Sequent sequent;
  bool modal = false;       // false: intuitionistic premise
  std::string agent;        // for modal premises
  F source = nullptr;       // the right-hand formula this premise unfolds
};

inline std::vector<ChoicePremise> choice_premises(int n, const Sequent& s, const Agents& agents) {
  std::vector<ChoicePremise> out;
  FVec rp = s.right_plain();
  for (F p : rp)
    if (p->kind == Kind::Implies)
      out.push_back({Sequent{fvec_add(s.left, p->lhs), FVec{p->rhs}, nullptr}, false, "", p});
  for (const auto& a : agents) {
    FVec gamma = detail::unbox(s.left, a);
    FVec nl;
    if (n == 0)
      nl = gamma;
    else {
      for (F g : gamma) nl.push_back(f_know(a, g));
      nl = fvec_sorted(nl);
    }
    for (F p : rp)
      if (p->kind == Kind::Know && p->name == a) {
        F chi = p->lhs;
        Sequent prem = chi->kind == Kind::Com ? Sequent{nl, {}, chi}
                                              : Sequent{nl, FVec{chi}, nullptr};
        out.push_back({std::move(prem), true, a, p});
      }
  }
  return out;
}

inline int choice_index(Calculus cal) {
  switch (cal) {
    case Calculus::cICK:
    case Calculus::cICKT: return 0;
    case Calculus::cICKS4: return 1;
    default: throw std::invalid_argument("no choice rule for cICKS5");
  }
}

}  // namespace ick

#endif  // ICK_RULES_HPP
