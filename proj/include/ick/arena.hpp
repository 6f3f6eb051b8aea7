#ifndef ICK_ARENA_HPP
#define ICK_ARENA_HPP

// Proof-search arenas. The full arena offers every enumerated rule instance:
// sequent positions belong to Prover (he picks the rule instance), rule
// positions belong to Refuter (he picks the premise). The search arena for
// the cut-free calculi applies one scheduled invertible rule at unsaturated
// sequents and bundles all non-invertible steps into the choice rule C_n at
// saturated ones, with Prover picking the choice premise. Priorities:
// a sequent position is 3 when its right side has no focus, a rule position
// is 2 when it is CR on the focused formula, and everything else is 1.

#include <chrono>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ick/game.hpp"
#include "ick/rules.hpp"

namespace ick {

struct Caps {
  size_t max_sequents = 2000000;
  double time_budget_seconds = 120.0;
};

class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

// Compact per-rule-position label: the game edges carry the premises and
// pos_seq the conclusion, so only the identification of the rule is kept.
struct RuleLabel {
  std::string rule;
  std::string agent;
  F principal = nullptr;
  bool principal_focused = false;
};

struct Arena {
  Calculus cal;
  Agents agents;
  FSet sigma;
  bool search = false;

  std::vector<Sequent> seqs;
  std::unordered_map<Sequent, int, SequentHash> seq_id;

  // Positions are game nodes; parallel metadata below.
  Game game;
  std::vector<int> pos_seq;           // sequent index (conclusion for rule positions)
  std::vector<int> pos_rule;          // index into rules, or -1 for sequent positions
  std::vector<RuleLabel> rules;
  std::vector<int> seq_pos;           // sequent index -> its sequent-position node
  int initial = -1;

  bool is_rule_pos(int v) const { return pos_rule[v] >= 0; }
  const Sequent& sequent_of(int v) const { return seqs[pos_seq[v]]; }
  const RuleLabel& rule_of(int v) const { return rules[pos_rule[v]]; }
};

namespace detail {

class ArenaBuilder {
 public:
  ArenaBuilder(Calculus cal, const Agents& agents, FSet sigma, const Caps& caps, bool search)
      : caps_(caps), deadline_(std::chrono::steady_clock::now() +
                               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                   std::chrono::duration<double>(caps.time_budget_seconds))) {
    a_.cal = cal;
    a_.agents = agents;
    a_.sigma = std::move(sigma);
    a_.search = search;
  }

  Arena build(const Sequent& root) {
    a_.initial = seq_position(root);
    while (next_ < static_cast<int>(work_.size())) {
      if (std::chrono::steady_clock::now() > deadline_)
        throw ResourceLimit("time budget exceeded while building arena");
      expand(work_[next_++]);
    }
    return std::move(a_);
  }

 private:
  Arena a_;
  Caps caps_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<int> work_;  // sequent-position nodes pending expansion
  int next_ = 0;

  int seq_position(const Sequent& s) {
    auto it = a_.seq_id.find(s);
    if (it != a_.seq_id.end()) return a_.seq_pos[it->second];
    if (a_.seqs.size() >= caps_.max_sequents)
      throw ResourceLimit("interned sequent cap exceeded");
    int si = static_cast<int>(a_.seqs.size());
    a_.seqs.push_back(s);
    a_.seq_id.emplace(s, si);
    int v = a_.game.add(kProver, s.focus ? 1 : 3);
    a_.pos_seq.push_back(si);
    a_.pos_rule.push_back(-1);
    a_.seq_pos.push_back(v);
    work_.push_back(v);
    return v;
  }

  int rule_position(int concl_seq_index, RuleInstance inst) {
    int prio = (inst.rule == "c-r" && inst.principal_focused) ? 2 : 1;
    int v = a_.game.add(kRefuter, prio);
    a_.pos_seq.push_back(concl_seq_index);
    a_.pos_rule.push_back(static_cast<int>(a_.rules.size()));
    std::vector<Sequent> prem = std::move(inst.premises);
    a_.rules.push_back(RuleLabel{std::move(inst.rule), std::move(inst.agent),
                                 inst.principal, inst.principal_focused});
    for (const Sequent& p : prem) {
      int sp = seq_position(p);  // may reallocate the adjacency storage
      a_.game.succ[v].push_back(sp);
    }
    return v;
  }

  void expand(int v) {
    const Sequent s = a_.seqs[a_.pos_seq[v]];  // copy: vectors may reallocate
    const int si = a_.pos_seq[v];
    // NB: rule_position() can reallocate the game's adjacency storage, so the
    // new node id is always computed before succ[v] is touched.
    if (!a_.search) {
      for (RuleInstance& inst : rule_instances(a_.cal, s, a_.sigma, a_.agents)) {
        int rp = rule_position(si, std::move(inst));
        a_.game.succ[v].push_back(rp);
      }
      return;
    }
    // Search arena (cut-free calculi only).
    if (auto ax = is_axiom(s)) {
      int rp = rule_position(si, RuleInstance{*ax, "", s, {}, nullptr, false});
      a_.game.succ[v].push_back(rp);
      return;
    }
    if (!is_search_saturated(a_.cal, s, a_.agents)) {
      int rp = rule_position(si, scheduled_instance(s));
      a_.game.succ[v].push_back(rp);
      return;
    }
    int n = choice_index(a_.cal);
    std::string rule = n == 0 ? "C0" : "C1";
    for (ChoicePremise& cp : choice_premises(n, s, a_.agents)) {
      RuleInstance inst{rule, cp.agent, s, {cp.sequent}, cp.source, false};
      int rp = rule_position(si, std::move(inst));
      a_.game.succ[v].push_back(rp);
    }
    // No choice premise: Prover dead end (Refuter wins this leaf).
  }

  // The one scheduled invertible rule application at an unsaturated sequent:
  // preserving, on the structurally smallest unsaturated principal, except
  // that CR on the focused formula is applied non-preservingly.
  RuleInstance scheduled_instance(const Sequent& s) {
    if (s.focus && s.focus->kind == Kind::Com) {  // clause 8: focused CR
      F p = s.focus;
      std::vector<Sequent> prem{Sequent{s.left, fvec_add(s.right, p->lhs), nullptr}};
      for (const auto& a : a_.agents)
        prem.push_back(Sequent{s.left, s.right, f_know(a, p)});
      return RuleInstance{"c-r", "", s, std::move(prem), p, true};
    }
    for (F f : s.left) {
      switch (f->kind) {
        case Kind::And:
          if (!fvec_contains(s.left, f->lhs) || !fvec_contains(s.left, f->rhs))
            return {"and-l", "", s,
                    {Sequent{fvec_add(fvec_add(s.left, f->lhs), f->rhs), s.right, s.focus}},
                    f, false};
          break;
        case Kind::Or:
          if (!fvec_contains(s.left, f->lhs) && !fvec_contains(s.left, f->rhs))
            return {"or-l", "", s,
                    {Sequent{fvec_add(s.left, f->lhs), s.right, s.focus},
                     Sequent{fvec_add(s.left, f->rhs), s.right, s.focus}},
                    f, false};
          break;
        case Kind::Implies:
          if (!fvec_contains(s.right, f->lhs) && !fvec_contains(s.left, f->rhs))
            return {"imp-l", "", s,
                    {Sequent{s.left, fvec_add(s.right, f->lhs), s.focus},
                     Sequent{fvec_add(s.left, f->rhs), s.right, s.focus}},
                    f, false};
          break;
        case Kind::Com: {
          bool ok = fvec_contains(s.left, f->lhs);
          for (const auto& a : a_.agents)
            ok = ok && fvec_contains(s.left, f_know(a, f));
          if (!ok) {
            FVec nl = fvec_add(s.left, f->lhs);
            for (const auto& a : a_.agents) nl = fvec_add(nl, f_know(a, f));
            return {"c-l", "", s, {Sequent{nl, s.right, s.focus}}, f, false};
          }
          break;
        }
        case Kind::Know:
          if (a_.cal != Calculus::cICK && !fvec_contains(s.left, f->lhs))
            return {"t", f->name, s,
                    {Sequent{fvec_add(s.left, f->lhs), s.right, s.focus}},
                    f, false};
          break;
        default: break;
      }
    }
    for (F f : s.right) {
      switch (f->kind) {
        case Kind::And:
          if (!fvec_contains(s.right, f->lhs) && !fvec_contains(s.right, f->rhs))
            return {"and-r", "", s,
                    {Sequent{s.left, fvec_add(s.right, f->lhs), s.focus},
                     Sequent{s.left, fvec_add(s.right, f->rhs), s.focus}},
                    f, false};
          break;
        case Kind::Or:
          if (!fvec_contains(s.right, f->lhs) || !fvec_contains(s.right, f->rhs))
            return {"or-r", "", s,
                    {Sequent{s.left, fvec_add(fvec_add(s.right, f->lhs), f->rhs), s.focus}},
                    f, false};
          break;
        case Kind::Com: {
          if (fvec_contains(s.right, f->lhs)) break;
          bool some = false;
          for (const auto& a : a_.agents)
            if (fvec_contains(s.right, f_know(a, f))) { some = true; break; }
          if (!some) {
            std::vector<Sequent> prem{Sequent{s.left, fvec_add(s.right, f->lhs), s.focus}};
            for (const auto& a : a_.agents)
              prem.push_back(Sequent{s.left, fvec_add(s.right, f_know(a, f)), s.focus});
            return {"c-r", "", s, std::move(prem), f, false};
          }
          break;
        }
        default: break;
      }
    }
    throw std::logic_error("scheduled_instance called on a saturated sequent");
  }
};

}  // namespace detail

inline Arena build_arena_full(Calculus cal, const Sequent& root, const Agents& agents,
                              const Caps& caps = {}) {
  FSet base(root.left.begin(), root.left.end());
  for (F f : root.right_plain()) base.insert(f);
  FSet sigma = cal == Calculus::cICKS5 ? negation_closure(base, agents) : closure(base, agents);
  return detail::ArenaBuilder(cal, agents, std::move(sigma), caps, false).build(root);
}

// Variant used when Sigma is fixed from outside (S5 canonical-model oracle).
inline Arena build_arena_full_sigma(Calculus cal, const Sequent& root, const Agents& agents,
                                    const FSet& sigma, const Caps& caps = {}) {
  return detail::ArenaBuilder(cal, agents, sigma, caps, false).build(root);
}

inline Arena build_arena_search(Calculus cal, const Sequent& root, const Agents& agents,
                                const Caps& caps = {}) {
  if (cal == Calculus::cICKS5)
    throw std::invalid_argument("the search arena exists for the cut-free calculi only");
  FSet base(root.left.begin(), root.left.end());
  for (F f : root.right_plain()) base.insert(f);
  FSet sigma = closure(base, agents);
  return detail::ArenaBuilder(cal, agents, std::move(sigma), caps, true).build(root);
}

// Solves an arena (adding dead-end sinks) and reports the winner from the
// initial position together with the memoryless strategy.
struct ArenaSolution {
  int winner;
  Solution solution;  // over the sinked game; indices beyond the arena are sinks
  Game sinked;
};

inline ArenaSolution solve_arena(const Arena& a) {
  Game g = with_dead_end_sinks(a.game);
  Solution sol = solve_game(g);
  return ArenaSolution{sol.winner[a.initial], std::move(sol), std::move(g)};
}

}  // namespace ick

#endif  // ICK_ARENA_HPP
