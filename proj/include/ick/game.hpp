#ifndef ICK_GAME_HPP
#define ICK_GAME_HPP

// Max-parity games with two players: player 0 ("Prover") wins an infinite
// play iff the highest priority seen infinitely often is even; a finite play
// is lost by the owner of the dead end. Solved by the recursive attractor
// (Zielonka) algorithm with memoryless strategy extraction. verify_strategy
// re-checks a claimed winner with an independent cycle analysis.

#include <stdexcept>
#include <vector>

namespace ick {

constexpr int kProver = 0;
constexpr int kRefuter = 1;

struct Game {
  // Parallel arrays per position.
  std::vector<int> owner;                  // 0 or 1
  std::vector<int> priority;               // small nonnegative integers
  std::vector<std::vector<int>> succ;      // outgoing moves

  int size() const { return static_cast<int>(owner.size()); }

  int add(int own, int prio) {
    owner.push_back(own);
    priority.push_back(prio);
    succ.emplace_back();
    return size() - 1;
  }
};

struct Solution {
  std::vector<int> winner;    // per position: 0 or 1
  std::vector<int> strategy;  // chosen successor for the position's winner; -1 if none
};

namespace detail {

class Zielonka {
 public:
  explicit Zielonka(const Game& g) : g_(g), pred_(g.size()) {
    win_.assign(g.size(), -1);
    strat_.assign(g.size(), -1);
    for (int v = 0; v < g.size(); ++v)
      for (int w : g.succ[v]) pred_[w].push_back(v);
  }

  Solution run() {
    std::vector<int> all(g_.size());
    for (int v = 0; v < g_.size(); ++v) all[v] = v;
    solve(all);
    return Solution{win_, strat_};
  }

 private:
  const Game& g_;
  std::vector<std::vector<int>> pred_;
  std::vector<int> win_, strat_;
  std::vector<char> in_;       // scratch: membership in current subgame
  std::vector<char> attr_;     // scratch: attractor membership
  std::vector<int> outdeg_;    // scratch: remaining out-degree for opponent nodes

  // Attractor of player pl toward target inside the subgame marked by in_.
  // Records attractor strategy for pl-owned positions pulled in (not for the
  // targets themselves). Returns the attractor as a node list.
  std::vector<int> attractor(int pl, std::vector<int> target,
                             const std::vector<int>& nodes) {
    if (static_cast<int>(attr_.size()) < g_.size()) {
      attr_.assign(g_.size(), 0);
      outdeg_.assign(g_.size(), 0);
    }
    for (int v : nodes) {
      attr_[v] = 0;
      int d = 0;
      for (int w : g_.succ[v])
        if (in_[w]) ++d;
      outdeg_[v] = d;
    }
    std::vector<int> stack = target;
    for (int v : target) attr_[v] = 1;
    std::vector<int> result = target;
    while (!stack.empty()) {
      int w = stack.back();
      stack.pop_back();
      for (int v : pred_[w]) {
        if (!in_[v] || attr_[v]) continue;
        if (g_.owner[v] == pl) {
          attr_[v] = 1;
          strat_[v] = w;
          stack.push_back(v);
          result.push_back(v);
        } else if (--outdeg_[v] == 0) {
          attr_[v] = 1;
          stack.push_back(v);
          result.push_back(v);
        }
      }
    }
    return result;
  }

  void solve(std::vector<int> nodes) {
    if (nodes.empty()) return;
    if (static_cast<int>(in_.size()) < g_.size()) in_.assign(g_.size(), 0);
    int p = -1;
    for (int v : nodes) p = std::max(p, g_.priority[v]);
    const int pl = p % 2 == 0 ? kProver : kRefuter;
    const int opp = 1 - pl;

    for (int v : nodes) in_[v] = 1;
    std::vector<int> top;
    for (int v : nodes)
      if (g_.priority[v] == p) top.push_back(v);
    std::vector<int> a = attractor(pl, top, nodes);
    for (int v : a) in_[v] = 0;

    std::vector<int> rest;
    for (int v : nodes)
      if (in_[v]) rest.push_back(v);
    for (int v : nodes) in_[v] = 0;  // children re-mark their own subgames
    solve(rest);

    bool opp_empty = true;
    for (int v : rest)
      if (win_[v] == opp) { opp_empty = false; break; }

    if (opp_empty) {
      // Whole subgame is won by pl. Attractor strategies were recorded while
      // pulling toward the top nodes; top nodes owned by pl pick any
      // successor inside the subgame.
      for (int v : nodes) in_[v] = 1;
      for (int v : a) win_[v] = pl;
      for (int v : top)
        if (g_.owner[v] == pl) {
          strat_[v] = -1;
          for (int w : g_.succ[v])
            if (in_[w]) { strat_[v] = w; break; }
        }
      for (int v : nodes) in_[v] = 0;
      return;
    }

    // Opponent wins part of the remainder; attract toward it and re-solve.
    std::vector<int> oppwin;
    for (int v : rest)
      if (win_[v] == opp) oppwin.push_back(v);
    for (int v : nodes) in_[v] = 1;
    std::vector<int> b = attractor(opp, oppwin, nodes);
    for (int v : b) {
      win_[v] = opp;
      in_[v] = 0;
    }
    std::vector<int> rest2;
    for (int v : nodes)
      if (in_[v]) rest2.push_back(v);
    for (int v : nodes) in_[v] = 0;
    solve(rest2);
  }
};

}  // namespace detail

inline Solution solve_game(const Game& g) {
  for (int v = 0; v < g.size(); ++v)
    if (g.succ[v].empty())
      throw std::invalid_argument("solve_game expects a total game; add sinks for dead ends");
  return detail::Zielonka(g).run();
}

// Adds two sink positions so every dead end becomes an infinite play with the
// correct winner: a dead end owned by a player is a loss for that player.
// Returns the enlarged game; `sinks` receives the two sink indices.
inline Game with_dead_end_sinks(Game g, int* prover_loss_sink = nullptr,
                                int* refuter_loss_sink = nullptr) {
  int lose_p = -1, lose_r = -1;
  for (int v = 0, n = g.size(); v < n; ++v)
    if (g.succ[v].empty()) {
      if (g.owner[v] == kProver) {
        if (lose_p < 0) {
          lose_p = g.add(kProver, 1);  // odd self-loop: Refuter wins
          g.succ[lose_p].push_back(lose_p);
        }
        g.succ[v].push_back(lose_p);
      } else {
        if (lose_r < 0) {
          lose_r = g.add(kRefuter, 2);  // even self-loop: Prover wins
          g.succ[lose_r].push_back(lose_r);
        }
        g.succ[v].push_back(lose_r);
      }
    }
  if (prover_loss_sink) *prover_loss_sink = lose_p;
  if (refuter_loss_sink) *refuter_loss_sink = lose_r;
  return g;
}

// --- independent strategy verification ---------------------------------------
// Checks, by explicit reachability and cycle analysis, that `strategy` wins
// the (possibly non-total) game for `claimed` from `initial`: following the
// strategy at the winner's positions and all moves at the opponent's, every
// reachable dead end belongs to the opponent and every reachable cycle's
// maximal priority has the winner's parity.

namespace detail {

// Tarjan SCC over the restricted subgraph induced by `nodes`.
inline void sccs(const std::vector<int>& nodes,
                 const std::vector<std::vector<int>>& adj,
                 std::vector<std::vector<int>>& out) {
  // adj is indexed by original node id; restrict to the given node set.
  int n = 0;
  std::vector<int> id(adj.size(), -1);
  for (int v : nodes) id[v] = n++;
  std::vector<int> idx(n, -1), low(n, 0), stk;
  std::vector<char> on(n, 0);
  int counter = 0;
  // iterative Tarjan
  struct Frame { int v; size_t ei; };
  for (int root : nodes) {
    if (idx[id[root]] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    while (!frames.empty()) {
      auto& fr = frames.back();
      int v = fr.v, vi = id[v];
      if (fr.ei == 0) {
        idx[vi] = low[vi] = counter++;
        stk.push_back(v);
        on[vi] = 1;
      }
      bool descended = false;
      while (fr.ei < adj[v].size()) {
        int w = adj[v][fr.ei++];
        if (id[w] < 0) continue;
        int wi = id[w];
        if (idx[wi] == -1) {
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on[wi]) low[vi] = std::min(low[vi], idx[wi]);
      }
      if (descended) continue;
      if (low[vi] == idx[vi]) {
        std::vector<int> comp;
        for (;;) {
          int w = stk.back();
          stk.pop_back();
          on[id[w]] = 0;
          comp.push_back(w);
          if (w == v) break;
        }
        out.push_back(std::move(comp));
      }
      frames.pop_back();
      if (!frames.empty()) {
        int pi = id[frames.back().v];
        low[pi] = std::min(low[pi], low[vi]);
      }
    }
  }
}

// True iff the subgraph restricted to `nodes` contains a cycle whose maximal
// priority has parity `bad_parity`.
inline bool has_bad_cycle(const Game& g, const std::vector<std::vector<int>>& adj,
                          const std::vector<int>& nodes, int bad_parity) {
  std::vector<std::vector<int>> comps;
  sccs(nodes, adj, comps);
  std::vector<char> inset(g.size(), 0);
  for (auto& comp : comps) {
    bool cyclic = comp.size() > 1;
    if (!cyclic)
      for (int w : adj[comp[0]])
        if (w == comp[0]) { cyclic = true; break; }
    if (!cyclic) continue;
    int maxp = -1;
    for (int v : comp) maxp = std::max(maxp, g.priority[v]);
    if (maxp % 2 == bad_parity % 2) return true;
    // Remove the maximal-priority nodes and look for lower bad cycles inside.
    std::vector<int> remaining;
    for (int v : comp)
      if (g.priority[v] != maxp) remaining.push_back(v);
    if (!remaining.empty() && has_bad_cycle(g, adj, remaining, bad_parity)) return true;
  }
  return false;
}

}  // namespace detail

inline bool verify_strategy(const Game& g, int initial, int claimed,
                            const std::vector<int>& strategy) {
  // Build the restricted successor lists over reachable positions.
  std::vector<std::vector<int>> adj(g.size());
  std::vector<char> seen(g.size(), 0);
  std::vector<int> stack{initial}, reach;
  seen[initial] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    reach.push_back(v);
    std::vector<int> moves;
    if (g.owner[v] == claimed) {
      if (!g.succ[v].empty()) {
        int ch = strategy[v];
        bool legal = false;
        for (int w : g.succ[v])
          if (w == ch) { legal = true; break; }
        if (!legal) return false;  // missing or illegal strategy move
        moves.push_back(ch);
      }
    } else
      moves = g.succ[v];
    if (moves.empty() && g.owner[v] == claimed) return false;  // winner's dead end
    adj[v] = moves;
    for (int w : moves)
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  const int bad_parity = claimed == kProver ? 1 : 0;
  return !detail::has_bad_cycle(g, adj, reach, bad_parity);
}

}  // namespace ick

#endif  // ICK_GAME_HPP
