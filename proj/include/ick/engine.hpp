#ifndef ICK_ENGINE_HPP
#define ICK_ENGINE_HPP

// The decision procedure: a sequent is provable iff Prover wins the full
// arena's parity game. Provable goals yield a cyclic proof re-validated by
// check_proof; refuted goals in the cut-free calculi yield a countermodel
// from the Refuter strategy on the search arena, re-validated by evaluation.
// cICKS5 runs in two stages: the cut-free cICKS4 arena is tried first (its
// proofs transfer, since an S4_a instance is an S5_a instance with an empty
// boxed succedent) and the arena with analytic cut is the fallback; an S5
// countermodel is only built on request, via the canonical construction.

#include <optional>

#include "ick/countermodel.hpp"
#include "ick/proof.hpp"

namespace ick {

struct Verdict {
  bool provable = false;
  std::optional<CyclicProof> proof;
  std::optional<Countermodel> countermodel;
};

struct DecideOptions {
  Caps caps;
  bool want_certificate = true;
  bool s5_countermodel = false;  // canonical construction; exponential in the closure
  S5ModelLimits s5_limits;
};

namespace detail {

inline FSet sequent_sigma(Calculus cal, const Sequent& s, const Agents& agents) {
  FSet base(s.left.begin(), s.left.end());
  for (F f : s.right_plain()) base.insert(f);
  return cal == Calculus::cICKS5 ? negation_closure(base, agents) : closure(base, agents);
}

inline void relabel_s4_as_s5(CyclicProof& pf) {
  for (ProofNode& nd : pf.nodes)
    if (nd.rule == "s4") nd.rule = "s5";
}

inline Verdict proved(Calculus check_cal, const Arena& a, const ArenaSolution& as,
                      bool want_certificate, bool relabel) {
  Verdict v;
  v.provable = true;
  if (!want_certificate) return v;
  CyclicProof pf = extract_proof(a, as.solution);
  if (relabel) relabel_s4_as_s5(pf);
  FSet sigma = sequent_sigma(check_cal, a.seqs[a.pos_seq[a.initial]], a.agents);
  std::string why;
  if (!check_proof(check_cal, pf, sigma, a.agents, &why))
    throw std::logic_error("extracted proof failed validation: " + why);
  v.proof = std::move(pf);
  return v;
}

inline Verdict refuted_cut_free(Calculus cal, const Sequent& goal, const Agents& agents,
                                const DecideOptions& opt) {
  Verdict v;
  v.provable = false;
  if (!opt.want_certificate) return v;
  Arena sa = build_arena_search(cal, goal, agents, opt.caps);
  ArenaSolution ss = solve_arena(sa);
  if (ss.winner != kRefuter)
    throw std::logic_error("full and search arenas disagree on " + render(goal));
  Countermodel cm = extract_countermodel(cal, sa, ss.solution);
  if (eval(cm.model, cm.root, interpretation(goal)))
    throw std::logic_error("extracted countermodel fails to falsify " + render(goal));
  v.countermodel = std::move(cm);
  return v;
}

}  // namespace detail

inline Verdict decide_sequent(Calculus cal, const Sequent& goal, const Agents& agents,
                              const DecideOptions& opt = {}) {
  if (cal != Calculus::cICKS5) {
    Arena a = build_arena_full(cal, goal, agents, opt.caps);
    ArenaSolution as = solve_arena(a);
    if (as.winner == kProver)
      return detail::proved(cal, a, as, opt.want_certificate, false);
    return detail::refuted_cut_free(cal, goal, agents, opt);
  }
  // Stage 1: the cut-free cICKS4 arena proves most S5 goals cheaply.
  {
    Arena a = build_arena_full(Calculus::cICKS4, goal, agents, opt.caps);
    ArenaSolution as = solve_arena(a);
    if (as.winner == kProver)
      return detail::proved(Calculus::cICKS5, a, as, opt.want_certificate, true);
  }
  // Stage 2: the full arena with analytic cut over the negation closure.
  Arena a = build_arena_full(Calculus::cICKS5, goal, agents, opt.caps);
  ArenaSolution as = solve_arena(a);
  if (as.winner == kProver)
    return detail::proved(Calculus::cICKS5, a, as, opt.want_certificate, false);
  Verdict v;
  v.provable = false;
  if (opt.want_certificate && opt.s5_countermodel) {
    Countermodel cm = extract_countermodel_s5(goal, agents, opt.caps, opt.s5_limits);
    if (eval(cm.model, cm.root, interpretation(goal)))
      throw std::logic_error("canonical countermodel fails to falsify " + render(goal));
    v.countermodel = std::move(cm);
  }
  return v;
}

inline Verdict decide(Calculus cal, F goal, const Agents& agents,
                      const DecideOptions& opt = {}) {
  return decide_sequent(cal, Sequent{{}, FVec{goal}, nullptr}, agents, opt);
}

}  // namespace ick

#endif  // ICK_ENGINE_HPP
