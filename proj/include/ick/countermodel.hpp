#ifndef ICK_COUNTERMODEL_HPP
#define ICK_COUNTERMODEL_HPP

// Countermodel extraction. For the cut-free calculi a winning Refuter
// strategy on the search arena is folded into a finite skeleton model:
// worlds are the classes of strategy positions connected without crossing a
// choice-rule edge, the order comes from intuitionistic choice premises, the
// agent relations from modal choice premises, and the result is closed to
// the calculus's frame class. For cICKS5 a canonical model is built from all
// saturated partitions of the negation closure, with a memoized provability
// oracle answering the saturation queries.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ick/arena.hpp"
#include "ick/model.hpp"

namespace ick {

struct Countermodel {
  Model model;
  int root = 0;
};

namespace detail {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) {
    for (int i = 0; i < n; ++i) up[i] = i;
  }
  int find(int v) { return up[v] == v ? v : up[v] = find(up[v]); }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace detail

// Folds the reachable part of a Refuter winning strategy on a search arena
// into a falsifying model of the calculus's frame class.
inline Countermodel extract_countermodel(Calculus cal, const Arena& a, const Solution& sol) {
  if (!a.search) throw std::invalid_argument("extract_countermodel needs a search arena");
  if (sol.winner[a.initial] != kRefuter)
    throw std::invalid_argument("extract_countermodel needs a winning Refuter strategy");
  const FrameClass fc = cal == Calculus::cICK    ? FrameClass::Epistemic
                        : cal == Calculus::cICKT ? FrameClass::Reflexive
                        : cal == Calculus::cICKS4
                            ? FrameClass::S4
                            : throw std::invalid_argument("no skeleton extraction for cICKS5");

  // Reachable subgraph: all rule choices at sequent positions, the strategy's
  // premise at rule positions. Nodes connected without crossing a choice-rule
  // premise edge share a world.
  const int n = a.game.size();
  std::vector<char> seen(n, 0);
  std::vector<int> stack{a.initial}, reach;
  detail::UnionFind uf(n);
  struct Cross {
    int src, dst;        // positions on either side of a choice premise edge
    std::string agent;   // empty: intuitionistic premise
  };
  std::vector<Cross> crossings;
  seen[a.initial] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    reach.push_back(v);
    std::vector<int> moves;
    if (a.is_rule_pos(v)) {
      if (a.game.succ[v].empty())
        throw std::logic_error("Refuter strategy reached an axiom position");
      moves.push_back(sol.strategy[v]);
    } else
      moves = a.game.succ[v];
    for (int w : moves) {
      if (w >= n) throw std::logic_error("Refuter strategy walked into a losing sink");
      const bool choice_edge =
          a.is_rule_pos(v) && (a.rule_of(v).rule == "C0" || a.rule_of(v).rule == "C1");
      if (choice_edge)
        crossings.push_back({v, w, a.rule_of(v).agent});
      else
        uf.unite(v, w);
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }

  // Number the classes and collect per-class data.
  std::map<int, int> class_id;
  auto cls = [&](int v) {
    int r = uf.find(v);
    auto it = class_id.find(r);
    if (it != class_id.end()) return it->second;
    int id = static_cast<int>(class_id.size());
    class_id.emplace(r, id);
    return id;
  };
  const int root0 = cls(a.initial);
  std::vector<std::vector<std::string>> atoms;
  auto grow = [&](int id) {
    if (id >= static_cast<int>(atoms.size())) atoms.resize(id + 1);
  };
  grow(root0);
  for (int v : reach) {
    if (a.is_rule_pos(v)) continue;
    int id = cls(v);
    grow(id);
    for (F f : a.sequent_of(v).left)
      if (f->kind == Kind::Atom) atoms[id].push_back(f->name);
  }
  int m = static_cast<int>(class_id.size());
  atoms.resize(m);
  Rel ord0(m);
  std::map<std::string, Rel> rel0;
  for (const auto& c : crossings) {
    int i = cls(c.src), j = cls(c.dst);
    if (c.agent.empty())
      ord0.at(i, j) = 1;
    else
      rel0.try_emplace(c.agent, Rel(m)).first->second.at(i, j) = 1;
  }
  ord0 = ord0.reflexive_transitive_closure();

  // Merge order cycles so <= becomes antisymmetric.
  std::vector<int> group(m, -1);
  int g = 0;
  for (int i = 0; i < m; ++i) {
    if (group[i] >= 0) continue;
    group[i] = g;
    for (int j = i + 1; j < m; ++j)
      if (ord0.at(i, j) && ord0.at(j, i)) group[j] = g;
    ++g;
  }
  Model out;
  out.order = Rel(g);
  out.valuation.assign(g, {});
  for (int i = 0; i < g; ++i) out.worlds.push_back("w" + std::to_string(i));
  for (int i = 0; i < m; ++i) {
    auto& val = out.valuation[group[i]];
    val.insert(val.end(), atoms[i].begin(), atoms[i].end());
    for (int j = 0; j < m; ++j)
      if (ord0.at(i, j)) out.order.at(group[i], group[j]) = 1;
  }
  for (auto& val : out.valuation) {
    std::sort(val.begin(), val.end());
    val.erase(std::unique(val.begin(), val.end()), val.end());
  }
  for (const auto& [agent, r0] : rel0) {
    Rel r(g);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (r0.at(i, j)) r.at(group[i], group[j]) = 1;
    out.rel[agent] = r;
  }
  for (const auto& agent : a.agents) out.rel.try_emplace(agent, Rel(g));

  return Countermodel{close_model(out, fc), group[root0]};
}

// --- S5 canonical model ------------------------------------------------------

// Memoized Sigma-provability oracle: true iff the sequent has an analytic
// cICKS5 proof inside the given negation-closed Sigma.
class SigmaOracle {
 public:
  SigmaOracle(FSet sigma, Agents agents, Caps caps)
      : sigma_(std::move(sigma)), agents_(std::move(agents)), caps_(caps) {}

  bool operator()(const Sequent& s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    Arena a = build_arena_full_sigma(Calculus::cICKS5, s, agents_, sigma_, caps_);
    bool provable = solve_arena(a).winner == kProver;
    memo_.emplace(s, provable);
    return provable;
  }

  const FSet& sigma() const { return sigma_; }

 private:
  FSet sigma_;
  Agents agents_;
  Caps caps_;
  std::unordered_map<Sequent, bool, SequentHash> memo_;
};

// Lindenbaum step: extends an unprovable Sigma-sequent to a saturated one
// (left and right partition Sigma, still unprovable) by cutting on each
// missing formula and keeping whichever branch the oracle reports unprovable.
inline Sequent saturate_sequent(const FSet& sigma, const Sequent& s,
                                const std::function<bool(const Sequent&)>& provable) {
  Sequent cur{s.left, s.right_plain(), nullptr};
  if (!is_sigma_sequent(cur, sigma))
    throw std::invalid_argument("saturate_sequent needs a Sigma-sequent");
  if (provable(cur)) throw std::invalid_argument("saturate_sequent: sequent is provable");
  for (F chi : sigma) {
    if (fvec_contains(cur.left, chi) || fvec_contains(cur.right, chi)) continue;
    Sequent with_left{fvec_add(cur.left, chi), cur.right, nullptr};
    if (!provable(with_left)) {
      cur = std::move(with_left);
      continue;
    }
    Sequent with_right{cur.left, fvec_add(cur.right, chi), nullptr};
    if (provable(with_right))
      throw std::logic_error("both cut branches provable over an unprovable sequent");
    cur = std::move(with_right);
  }
  return cur;
}

namespace detail {

// Structural consequences of saturation: a partition failing one of these is
// provable outright, so the expensive oracle query is skipped.
inline bool plausible_saturated(const FVec& left, const FVec& right, const Agents& agents) {
  if (fvec_contains(left, f_bottom())) return false;
  for (F f : left) switch (f->kind) {
      case Kind::And:
        if (!fvec_contains(left, f->lhs) || !fvec_contains(left, f->rhs)) return false;
        break;
      case Kind::Or:
        if (!fvec_contains(left, f->lhs) && !fvec_contains(left, f->rhs)) return false;
        break;
      case Kind::Implies:
        if (!fvec_contains(right, f->lhs) && !fvec_contains(left, f->rhs)) return false;
        break;
      case Kind::Know:
        if (!fvec_contains(left, f->lhs)) return false;
        break;
      case Kind::Com: {
        if (!fvec_contains(left, f->lhs)) return false;
        for (const auto& a : agents)
          if (!fvec_contains(left, f_know(a, f))) return false;
        break;
      }
      default: break;
    }
  for (F f : right) switch (f->kind) {
      case Kind::And:
        if (!fvec_contains(right, f->lhs) && !fvec_contains(right, f->rhs)) return false;
        break;
      case Kind::Or:
        if (!fvec_contains(right, f->lhs) || !fvec_contains(right, f->rhs)) return false;
        break;
      case Kind::Com: {
        if (fvec_contains(right, f->lhs)) break;
        bool some = false;
        for (const auto& a : agents)
          if (fvec_contains(right, f_know(a, f))) { some = true; break; }
        if (!some) return false;
        break;
      }
      default: break;
    }
  return true;
}

}  // namespace detail

struct S5ModelLimits {
  size_t max_sigma = 20;     // subset enumeration is exponential in |Sigma|
  size_t max_worlds = 5000;
};

// Canonical S5 model over all saturated partitions of Sigma = the negation
// closure of the goal: worlds are the left parts, ordered by inclusion, with
// R_a holding when the K_a-boxed fragments agree and atoms read off directly.
// Falsifies the goal at the world obtained by saturating it.
inline Countermodel extract_countermodel_s5(const Sequent& goal, const Agents& agents,
                                            const Caps& caps = {},
                                            const S5ModelLimits& limits = {}) {
  FSet base(goal.left.begin(), goal.left.end());
  for (F f : goal.right_plain()) base.insert(f);
  FSet sigma = negation_closure(base, agents);
  if (sigma.size() > limits.max_sigma)
    throw ResourceLimit("S5 canonical model: closure size " + std::to_string(sigma.size()) +
                        " exceeds the limit of " + std::to_string(limits.max_sigma));
  SigmaOracle oracle(sigma, agents, caps);
  auto provable = [&](const Sequent& s) { return oracle(s); };

  Sequent root_sat = saturate_sequent(sigma, goal, provable);  // throws if provable

  std::vector<F> sig(sigma.begin(), sigma.end());
  const size_t k = sig.size();
  std::vector<FVec> worlds;
  for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
    FVec left, right;
    for (size_t i = 0; i < k; ++i)
      (mask >> i & 1 ? left : right).push_back(sig[i]);
    left = fvec_sorted(left);
    right = fvec_sorted(right);
    if (!detail::plausible_saturated(left, right, agents)) continue;
    if (provable(Sequent{left, right, nullptr})) continue;
    worlds.push_back(left);
    if (worlds.size() > limits.max_worlds)
      throw ResourceLimit("S5 canonical model exceeds the world cap");
  }

  const int n = static_cast<int>(worlds.size());
  Model m;
  m.order = Rel(n);
  m.valuation.assign(n, {});
  int root = -1;
  auto boxed = [](const FVec& g, const std::string& agent) {
    FVec out;
    for (F f : g)
      if (f->kind == Kind::Know && f->name == agent) out.push_back(f);
    return out;
  };
  for (int i = 0; i < n; ++i) {
    m.worlds.push_back("w" + std::to_string(i));
    if (worlds[i] == root_sat.left) root = i;
    for (F f : worlds[i])
      if (f->kind == Kind::Atom) m.valuation[i].push_back(f->name);
    for (int j = 0; j < n; ++j)
      m.order.at(i, j) = std::includes(worlds[j].begin(), worlds[j].end(),
                                       worlds[i].begin(), worlds[i].end(), StructLess{});
  }
  for (const auto& agent : agents) {
    Rel r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.at(i, j) = boxed(worlds[i], agent) == boxed(worlds[j], agent);
    m.rel[agent] = r;
  }
  if (root < 0) throw std::logic_error("saturated goal world missing from the enumeration");
  return Countermodel{std::move(m), root};
}

}  // namespace ick

#endif  // ICK_COUNTERMODEL_HPP
