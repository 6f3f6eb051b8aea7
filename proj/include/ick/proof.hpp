#ifndef ICK_PROOF_HPP
#define ICK_PROOF_HPP

// Cyclic proofs: finite rule-labelled trees whose non-axiomatic leaves loop
// back to companion ancestors via successful repetitions (every sequent on
// the connecting path is focused and the path crosses a CR step applied to
// the focused formula). extract_proof unfolds a winning Prover strategy and
// prunes each branch at the first successful repetition; check_proof is an
// independent schema matcher used as the certificate oracle.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ick/arena.hpp"

namespace ick {

struct ProofNode {
  int id = 0;
  Sequent seq;
  std::string rule;    // empty for back-edge leaves
  std::string agent;   // for knowledge rules
  F principal = nullptr;
  std::vector<int> premise_ids;
};

struct CyclicProof {
  std::vector<ProofNode> nodes;      // node id == index
  std::map<int, int> back_edges;     // leaf id -> companion id
  int root = 0;
};

// --- extraction from a winning Prover strategy -------------------------------

namespace detail {

class ProofExtractor {
 public:
  ProofExtractor(const Arena& a, const Solution& sol) : a_(a), sol_(sol) {}

  CyclicProof run() {
    unfold(a_.initial);
    return std::move(out_);
  }

 private:
  const Arena& a_;
  const Solution& sol_;
  CyclicProof out_;

  struct Frame {
    int seq_index;
    int node_id;
    bool focused;
    int cr_count;  // focused-CR steps from the root up to (and incl.) this node's rule
  };
  std::vector<Frame> path_;

  int unfold(int v) {
    if (path_.size() > 200000)
      throw std::logic_error("proof extraction exceeded the depth guard");
    const int si = a_.pos_seq[v];
    const Sequent& s = a_.seqs[si];
    const bool focused = s.focus != nullptr;
    const int cr_here = path_.empty() ? 0 : path_.back().cr_count;

    // Repetition? Take the earliest equal ancestor giving a successful path.
    for (const Frame& fr : path_) {
      if (fr.seq_index != si) continue;
      bool all_focused = focused;
      for (size_t i = &fr - path_.data(); i < path_.size() && all_focused; ++i)
        all_focused = path_[i].focused;
      if (all_focused && cr_here - fr.cr_count >= 1) {
        int id = static_cast<int>(out_.nodes.size());
        out_.nodes.push_back(ProofNode{id, s, "", "", nullptr, {}});
        out_.back_edges[id] = fr.node_id;
        return id;
      }
    }

    if (sol_.winner[v] != kProver)
      throw std::logic_error("proof extraction entered a losing position");
    int rp = sol_.strategy[v];
    if (rp < 0 || rp >= static_cast<int>(a_.pos_rule.size()) || !a_.is_rule_pos(rp))
      throw std::logic_error("Prover strategy is missing a rule choice");
    const RuleLabel& inst = a_.rule_of(rp);
    const bool focused_cr = inst.rule == "c-r" && inst.principal_focused;

    int id = static_cast<int>(out_.nodes.size());
    out_.nodes.push_back(ProofNode{id, s, inst.rule, inst.agent, inst.principal, {}});
    path_.push_back(Frame{si, id, focused, cr_here + (focused_cr ? 1 : 0)});
    std::vector<int> children;
    for (int w : a_.game.succ[rp])
      if (w < static_cast<int>(a_.pos_rule.size()))  // skip dead-end sinks
        children.push_back(unfold(w));
    path_.pop_back();
    out_.nodes[id].premise_ids = std::move(children);
    return id;
  }
};

}  // namespace detail

inline CyclicProof extract_proof(const Arena& a, const Solution& sol) {
  if (sol.winner[a.initial] != kProver)
    throw std::invalid_argument("extract_proof needs a winning Prover strategy");
  return detail::ProofExtractor(a, sol).run();
}

// --- independent proof checking ----------------------------------------------

namespace detail {

// Re-derives the premises a rule schema dictates for the given conclusion and
// principal, trying both set-contexts (with and without the principal), and
// compares them with the actual premises. Written against the printed rule
// schemas, independently of the arena's enumeration policy.
inline bool match_rule(Calculus cal, const Sequent& c, const std::string& rule,
                       const std::string& agent, F p, const std::vector<Sequent>& prem,
                       const Agents& agents, const FSet& sigma, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto allowed = [&](const std::string& r) {
    if (r == "k") return cal == Calculus::cICK || cal == Calculus::cICKT;
    if (r == "t") return cal != Calculus::cICK;
    if (r == "s4") return cal == Calculus::cICKS4;
    if (r == "s5" || r == "k-imp" || r == "cut") return cal == Calculus::cICKS5;
    return true;
  };
  if (!allowed(rule)) return fail("rule " + rule + " is not part of " + calculus_name(cal));

  if (rule == "id") {
    if (!prem.empty()) return fail("id takes no premises");
    for (F f : c.left)
      if (c.right_has(f)) return true;
    return fail("id: no shared formula");
  }
  if (rule == "bot") {
    if (!prem.empty()) return fail("bot takes no premises");
    return fvec_contains(c.left, f_bottom()) ? true : fail("bot: no falsum on the left");
  }

  auto left_ctxs = [&]() { return std::vector<FVec>{c.left, fvec_remove(c.left, p)}; };
  auto right_ctxs = [&]() { return std::vector<FVec>{c.right, fvec_remove(c.right, p)}; };

  if (rule == "and-l") {
    if (!p || p->kind != Kind::And || !fvec_contains(c.left, p) || prem.size() != 1)
      return fail("and-l: malformed principal or premises");
    for (auto& ctx : left_ctxs())
      if (prem[0] == Sequent{fvec_add(fvec_add(ctx, p->lhs), p->rhs), c.right, c.focus})
        return true;
    return fail("and-l: premise mismatch");
  }
  if (rule == "or-l") {
    if (!p || p->kind != Kind::Or || !fvec_contains(c.left, p) || prem.size() != 2)
      return fail("or-l: malformed principal or premises");
    for (auto& ctx : left_ctxs())
      if (prem[0] == Sequent{fvec_add(ctx, p->lhs), c.right, c.focus} &&
          prem[1] == Sequent{fvec_add(ctx, p->rhs), c.right, c.focus})
        return true;
    return fail("or-l: premise mismatch");
  }
  if (rule == "imp-l") {
    if (!p || p->kind != Kind::Implies || !fvec_contains(c.left, p) || prem.size() != 2)
      return fail("imp-l: malformed principal or premises");
    for (auto& ctx : left_ctxs())
      if (prem[0] == Sequent{ctx, fvec_add(c.right, p->lhs), c.focus} &&
          prem[1] == Sequent{fvec_add(ctx, p->rhs), c.right, c.focus})
        return true;
    return fail("imp-l: premise mismatch");
  }
  if (rule == "c-l") {
    if (!p || p->kind != Kind::Com || !fvec_contains(c.left, p) || prem.size() != 1)
      return fail("c-l: malformed principal or premises");
    for (auto& ctx : left_ctxs()) {
      FVec nl = fvec_add(ctx, p->lhs);
      for (const auto& a : agents) nl = fvec_add(nl, f_know(a, p));
      if (prem[0] == Sequent{nl, c.right, c.focus}) return true;
    }
    return fail("c-l: premise mismatch");
  }
  if (rule == "t") {
    if (!p || p->kind != Kind::Know || p->name != agent || !fvec_contains(c.left, p) ||
        prem.size() != 1)
      return fail("t: malformed principal or premises");
    for (auto& ctx : left_ctxs())
      if (prem[0] == Sequent{fvec_add(ctx, p->lhs), c.right, c.focus}) return true;
    return fail("t: premise mismatch");
  }
  if (rule == "and-r") {
    if (!p || p->kind != Kind::And || !fvec_contains(c.right, p) || prem.size() != 2)
      return fail("and-r: malformed principal or premises");
    for (auto& ctx : right_ctxs())
      if (prem[0] == Sequent{c.left, fvec_add(ctx, p->lhs), c.focus} &&
          prem[1] == Sequent{c.left, fvec_add(ctx, p->rhs), c.focus})
        return true;
    return fail("and-r: premise mismatch");
  }
  if (rule == "or-r") {
    if (!p || p->kind != Kind::Or || !fvec_contains(c.right, p) || prem.size() != 1)
      return fail("or-r: malformed principal or premises");
    for (auto& ctx : right_ctxs())
      if (prem[0] == Sequent{c.left, fvec_add(fvec_add(ctx, p->lhs), p->rhs), c.focus})
        return true;
    return fail("or-r: premise mismatch");
  }
  if (rule == "imp-r") {
    if (!p || p->kind != Kind::Implies || !fvec_contains(c.right, p) || prem.size() != 1)
      return fail("imp-r: malformed principal or premises");
    if (prem[0] == Sequent{fvec_add(c.left, p->lhs), FVec{p->rhs}, nullptr}) return true;
    return fail("imp-r: premise mismatch");
  }
  if (rule == "u") {
    if (!c.focus || prem.size() != 1) return fail("u: needs a focused conclusion");
    if (prem[0] == Sequent{c.left, fvec_add(c.right, c.focus), nullptr}) return true;
    return fail("u: premise mismatch");
  }
  if (rule == "f") {
    if (c.focus || !p || !focus_shaped(p) || !fvec_contains(c.right, p) || prem.size() != 1)
      return fail("f: malformed principal");
    if (prem[0] == Sequent{c.left, fvec_remove(c.right, p), p} ||
        prem[0] == Sequent{c.left, c.right, p})
      return true;
    return fail("f: premise mismatch");
  }
  if (rule == "c-r") {
    if (!p || p->kind != Kind::Com || prem.size() != 1 + agents.size())
      return fail("c-r: malformed principal or premise count");
    if (p == c.focus) {
      // The focused reading: the left premise drops the focus, the modal
      // premises re-focus K_a C phi. (When the principal also occurs
      // unfocused on the right, the unfocused reading below may apply
      // instead; the two are told apart by the left premise's focus.)
      bool ok = prem[0] == Sequent{c.left, fvec_add(c.right, p->lhs), nullptr};
      for (size_t i = 0; ok && i < agents.size(); ++i)
        ok = prem[i + 1] == Sequent{c.left, c.right, f_know(agents[i], p)};
      if (ok) return true;
    }
    if (!fvec_contains(c.right, p)) return fail("c-r: premises do not match the focused schema");
    for (auto& ctx : right_ctxs()) {
      bool ok = prem[0] == Sequent{c.left, fvec_add(ctx, p->lhs), c.focus};
      for (size_t i = 0; ok && i < agents.size(); ++i)
        ok = prem[i + 1] == Sequent{c.left, fvec_add(ctx, f_know(agents[i], p)), c.focus};
      if (ok) return true;
    }
    return fail("c-r: premise mismatch");
  }

  // Knowledge rules: the principal K_a phi is on the right (unfocused) or is
  // the focused formula; contexts without residuals are dropped.
  auto modal_shape = [&](bool boxed_left, bool keep_boxed_right) -> bool {
    if (!p || p->kind != Kind::Know || p->name != agent || prem.size() != 1) return false;
    bool foc = p == c.focus;
    if (!foc && !fvec_contains(c.right, p)) return false;
    const Sequent& q = prem[0];
    for (F g : q.left) {
      F boxed = boxed_left ? g : f_know(agent, g);
      if (boxed_left && (g->kind != Kind::Know || g->name != agent)) return false;
      if (!fvec_contains(c.left, boxed)) return false;
    }
    if (foc) {
      if (q.focus != p->lhs) return false;
      if (!keep_boxed_right) return q.right.empty();
    } else {
      if (q.focus) return false;
      if (!fvec_contains(q.right, p->lhs)) return false;
      if (!keep_boxed_right) return q.right == FVec{p->lhs};
    }
    for (F g : q.right) {
      if (g == p->lhs && !foc) continue;
      if (g->kind != Kind::Know || g->name != agent) return false;
      if (g == p || !fvec_contains(c.right, g)) return false;
    }
    return true;
  };
  if (rule == "k")
    return modal_shape(false, false) ? true : fail("k: premise does not match the schema");
  if (rule == "s4")
    return modal_shape(true, false) ? true : fail("s4: premise does not match the schema");
  if (rule == "s5")
    return modal_shape(true, true) ? true : fail("s5: premise does not match the schema");

  if (rule == "k-imp") {
    if (!p || p->kind != Kind::Implies || p->lhs->kind != Kind::Know ||
        !fvec_contains(c.right, p) || prem.size() != 1)
      return fail("k-imp: malformed principal");
    for (auto& ctx : right_ctxs())
      if (prem[0] == Sequent{fvec_add(c.left, p->lhs), fvec_add(ctx, p->rhs), c.focus})
        return true;
    return fail("k-imp: premise mismatch");
  }
  if (rule == "cut") {
    if (!p || prem.size() != 2) return fail("cut: needs a cut formula and two premises");
    if (!sigma.count(p)) return fail("cut: cut formula outside the closure");
    if (prem[0] == Sequent{fvec_add(c.left, p), c.right, c.focus} &&
        prem[1] == Sequent{c.left, fvec_add(c.right, p), c.focus})
      return true;
    return fail("cut: premise mismatch");
  }
  return fail("unknown rule '" + rule + "'");
}

}  // namespace detail

// True iff the proof is a well-formed cyclic proof of its root for the given
// calculus: tree-shaped, every rule re-validates against its printed schema,
// all sequents lie inside Sigma, every leaf is an axiom or loops back to an
// identical ancestor along a successful path.
inline bool check_proof(Calculus cal, const CyclicProof& pf, const FSet& sigma,
                        const Agents& agents, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int n = static_cast<int>(pf.nodes.size());
  if (n == 0) return fail("empty proof");
  if (pf.root < 0 || pf.root >= n) return fail("bad root id");
  std::vector<int> parent(n, -1);
  for (int i = 0; i < n; ++i) {
    if (pf.nodes[i].id != i) return fail("node ids must be dense and ordered");
    for (int c : pf.nodes[i].premise_ids) {
      if (c < 0 || c >= n || c == pf.root) return fail("bad premise id");
      if (parent[c] != -1) return fail("node referenced twice (not a tree)");
      parent[c] = i;
    }
  }
  for (int i = 0; i < n; ++i)
    if (i != pf.root && parent[i] == -1) return fail("unreachable node");

  for (const ProofNode& nd : pf.nodes) {
    if (!is_sigma_sequent(nd.seq, sigma)) return fail("sequent outside Sigma");
    if (nd.rule.empty()) {
      if (!nd.premise_ids.empty()) return fail("unlabelled node with children");
      if (!pf.back_edges.count(nd.id)) return fail("leaf without rule or back-edge");
      continue;
    }
    std::vector<Sequent> prem;
    for (int c : nd.premise_ids) prem.push_back(pf.nodes[c].seq);
    std::string sub;
    if (!detail::match_rule(cal, nd.seq, nd.rule, nd.agent, nd.principal, prem, agents,
                            sigma, &sub))
      return fail("node " + std::to_string(nd.id) + ": " + sub);
  }

  for (const auto& [leaf, comp] : pf.back_edges) {
    if (leaf < 0 || leaf >= n || comp < 0 || comp >= n) return fail("bad back-edge ids");
    if (!pf.nodes[leaf].rule.empty()) return fail("back-edge from an internal node");
    // companion must be a proper ancestor with an identical sequent
    if (!(pf.nodes[leaf].seq == pf.nodes[comp].seq))
      return fail("companion sequent differs from the leaf");
    bool ancestor = false;
    std::vector<int> path;  // leaf up to companion
    for (int v = leaf; v != -1; v = parent[v]) {
      path.push_back(v);
      if (v == comp) { ancestor = true; break; }
    }
    if (!ancestor || leaf == comp) return fail("companion is not a proper ancestor");
    bool crossed_cr = false;
    for (int v : path) {
      if (!pf.nodes[v].seq.focus) return fail("unfocused sequent on a repetition path");
      // A CR step counts as unfolding the focus only under the focused
      // schema, recognizable by its left premise dropping the focus.
      if (v != leaf && pf.nodes[v].rule == "c-r" &&
          pf.nodes[v].principal == pf.nodes[v].seq.focus &&
          !pf.nodes[v].premise_ids.empty() &&
          pf.nodes[pf.nodes[v].premise_ids[0]].seq.focus == nullptr)
        crossed_cr = true;
    }
    if (!crossed_cr) return fail("repetition path without a focused CR step");
  }
  return true;
}

// --- JSON --------------------------------------------------------------------

inline nlohmann::json proof_to_json(const CyclicProof& pf) {
  nlohmann::json j;
  j["root"] = pf.root;
  auto& nodes = j["nodes"] = nlohmann::json::array();
  for (const ProofNode& nd : pf.nodes) {
    nlohmann::json nj;
    nj["id"] = nd.id;
    nj["sequent"] = render(nd.seq);
    nj["rule"] = nd.rule.empty() ? nlohmann::json(nullptr) : nlohmann::json(nd.rule);
    nj["premise_ids"] = nd.premise_ids;
    nj["principal"] = nd.principal ? nlohmann::json(render(nd.principal)) : nlohmann::json(nullptr);
    if (!nd.agent.empty()) nj["agent"] = nd.agent;
    nodes.push_back(std::move(nj));
  }
  auto& be = j["back_edges"] = nlohmann::json::object();
  for (const auto& [leaf, comp] : pf.back_edges) be[std::to_string(leaf)] = comp;
  return j;
}

inline CyclicProof proof_from_json(const nlohmann::json& j, const Agents& agents) {
  CyclicProof pf;
  pf.root = j.value("root", 0);
  std::vector<ProofNode> nodes;
  for (const auto& nj : j.at("nodes")) {
    ProofNode nd;
    nd.id = nj.at("id").get<int>();
    nd.seq = parse_sequent(nj.at("sequent").get<std::string>(), agents);
    if (nj.contains("rule") && !nj.at("rule").is_null())
      nd.rule = nj.at("rule").get<std::string>();
    if (nj.contains("agent")) nd.agent = nj.at("agent").get<std::string>();
    if (nj.contains("principal") && !nj.at("principal").is_null())
      nd.principal = parse(nj.at("principal").get<std::string>(), agents);
    for (const auto& c : nj.at("premise_ids")) nd.premise_ids.push_back(c.get<int>());
    nodes.push_back(std::move(nd));
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const ProofNode& a, const ProofNode& b) { return a.id < b.id; });
  pf.nodes = std::move(nodes);
  if (j.contains("back_edges"))
    for (auto it = j.at("back_edges").begin(); it != j.at("back_edges").end(); ++it)
      pf.back_edges[std::stoi(it.key())] = it.value().get<int>();
  return pf;
}

}  // namespace ick

#endif  // ICK_PROOF_HPP
