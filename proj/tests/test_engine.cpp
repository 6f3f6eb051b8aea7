#include <doctest.h>

#include <random>

#include "ick/engine.hpp"
#include "random_gen.hpp"

using namespace ick;

namespace {

const Agents kOne = make_agents({"a"});

bool provable(Calculus cal, const char* text, const Agents& ag = kOne) {
  DecideOptions opt;
  opt.want_certificate = false;
  return decide(cal, parse(text, ag), ag, opt).provable;
}

ProofNode node(int id, const char* seq, const char* rule, std::vector<int> prems,
               const char* principal = nullptr, const char* agent = "") {
  ProofNode n;
  n.id = id;
  n.seq = parse_sequent(seq, kOne);
  n.rule = rule;
  n.agent = agent;
  if (principal) n.principal = parse(principal, kOne);
  n.premise_ids = std::move(prems);
  return n;
}

// A hand-written cyclic proof of => (p & C (p -> K{a} p)) -> C p, looping on
// the focused sequent p, C (p -> K{a} p) => [C p].
CyclicProof induction_proof() {
  const char* loop = "p, C (p -> K{a} p) => [C p]";
  const char* ctx = "p, p -> K{a} p, K{a} C (p -> K{a} p)";
  CyclicProof pf;
  pf.nodes = {
      node(0, " => (p & C (p -> K{a} p)) -> C p", "imp-r", {1},
           "(p & C (p -> K{a} p)) -> C p"),
      node(1, "p & C (p -> K{a} p) => C p", "and-l", {2}, "p & C (p -> K{a} p)"),
      node(2, "p, C (p -> K{a} p) => C p", "f", {3}, "C p"),
      node(3, loop, "c-l", {4}, "C (p -> K{a} p)"),
      node(4, (std::string(ctx) + " => [C p]").c_str(), "c-r", {5, 6}, "C p"),
      node(5, (std::string(ctx) + " => p").c_str(), "id", {}),
      node(6, (std::string(ctx) + " => [K{a} C p]").c_str(), "imp-l", {7, 8},
           "p -> K{a} p"),
      node(7, "p, K{a} C (p -> K{a} p) => p, [K{a} C p]", "id", {}),
      node(8, "p, K{a} p, K{a} C (p -> K{a} p) => [K{a} C p]", "k", {9}, "K{a} C p",
           "a"),
      node(9, loop, "", {}),
  };
  pf.back_edges[9] = 3;
  pf.root = 0;
  return pf;
}

FSet sigma_for(const CyclicProof& pf, Calculus cal) {
  return detail::sequent_sigma(cal, pf.nodes[pf.root].seq, kOne);
}

}  // namespace

TEST_CASE("decision spot checks across the calculi") {
  CHECK(provable(Calculus::cICK, "K{a} (p -> q) -> (K{a} p -> K{a} q)"));
  CHECK(!provable(Calculus::cICK, "K{a} p -> p"));
  CHECK(provable(Calculus::cICKT, "K{a} p -> p"));
  CHECK(!provable(Calculus::cICKT, "K{a} p -> K{a} K{a} p"));
  CHECK(provable(Calculus::cICKS4, "K{a} p -> K{a} K{a} p"));
  CHECK(!provable(Calculus::cICKS4, "~K{a} p -> K{a} ~K{a} p"));
  CHECK(provable(Calculus::cICKS5, "~K{a} p -> K{a} ~K{a} p"));
  CHECK(provable(Calculus::cICKS5, "K{a} p | ~K{a} p"));
  CHECK(!provable(Calculus::cICKS5, "p | ~p"));
  CHECK(provable(Calculus::cICK, "(p & C (p -> K{a} p)) -> C p"));
}

TEST_CASE("a single axiom node is a proof") {
  CyclicProof pf;
  pf.nodes = {node(0, "p => p", "id", {})};
  pf.root = 0;
  std::string why;
  CHECK(check_proof(Calculus::cICK, pf, {f_atom("p")}, kOne, &why));

  pf.nodes[0].rule = "bot";
  CHECK(!check_proof(Calculus::cICK, pf, {f_atom("p")}, kOne, &why));
}

TEST_CASE("the hand-written induction proof checks out") {
  CyclicProof pf = induction_proof();
  std::string why;
  bool ok = check_proof(Calculus::cICK, pf, sigma_for(pf, Calculus::cICK), kOne, &why);
  INFO(why);
  CHECK(ok);
}

TEST_CASE("mutations of a valid proof are rejected") {
  FSet sigma = sigma_for(induction_proof(), Calculus::cICK);
  std::string why;

  SUBCASE("wrong axiom label") {
    CyclicProof pf = induction_proof();
    pf.nodes[5].rule = "bot";
    CHECK(!check_proof(Calculus::cICK, pf, sigma, kOne, &why));
  }
  SUBCASE("companion with a different sequent") {
    CyclicProof pf = induction_proof();
    pf.back_edges[9] = 2;
    CHECK(!check_proof(Calculus::cICK, pf, sigma, kOne, &why));
    CHECK(why == "companion sequent differs from the leaf");
  }
  SUBCASE("leaf with neither rule nor back-edge") {
    CyclicProof pf = induction_proof();
    pf.back_edges.erase(9);
    CHECK(!check_proof(Calculus::cICK, pf, sigma, kOne, &why));
  }
  SUBCASE("back edge to an unrelated node") {
    CyclicProof pf = induction_proof();
    pf.back_edges[9] = 5;
    CHECK(!check_proof(Calculus::cICK, pf, sigma, kOne, &why));
  }
  SUBCASE("sharing a subtree breaks tree shape") {
    CyclicProof pf = induction_proof();
    pf.nodes[6].premise_ids = {7, 7};
    CHECK(!check_proof(Calculus::cICK, pf, sigma, kOne, &why));
  }
  SUBCASE("a premise that does not match the schema") {
    CyclicProof pf = induction_proof();
    pf.nodes[8].agent = "";  // the k rule needs its agent
    CHECK(!check_proof(Calculus::cICK, pf, sigma, kOne, &why));
  }
  SUBCASE("repetition path without a focused unfolding") {
    // A loop of left unfoldings never crosses a focused CR step.
    CyclicProof pf;
    pf.nodes = {
        node(0, "C p => [C p]", "c-l", {1}, "C p"),
        node(1, "p, C p, K{a} C p => [C p]", "c-l", {2}, "C p"),
        node(2, "p, C p, K{a} C p => [C p]", "", {}),
    };
    pf.back_edges[2] = 1;
    pf.root = 0;
    CHECK(!check_proof(Calculus::cICK, pf, closure({f_com(f_atom("p"))}, kOne), kOne,
                       &why));
    CHECK(why == "repetition path without a focused CR step");
  }
  SUBCASE("rule outside the calculus") {
    CyclicProof pf;
    pf.nodes = {node(0, "K{a} p => p", "t", {1}, "K{a} p", "a"),
                node(1, "K{a} p, p => p", "id", {})};
    pf.root = 0;
    FSet s2 = detail::sequent_sigma(Calculus::cICK, pf.nodes[0].seq, kOne);
    CHECK(!check_proof(Calculus::cICK, pf, s2, kOne, &why));
    CHECK(check_proof(Calculus::cICKT, pf, s2, kOne, &why));
  }
}

TEST_CASE("extracted certificates validate and survive JSON") {
  for (const char* text : {"(p & C (p -> K{a} p)) -> C p",
                           "K{a} (p -> q) -> (K{a} p -> K{a} q)",
                           "C p -> (p & K{a} C p)"}) {
    F goal = parse(text, kOne);
    Verdict v = decide(Calculus::cICK, goal, kOne);
    REQUIRE(v.provable);
    REQUIRE(v.proof);
    CHECK(v.proof->nodes[v.proof->root].seq == make_sequent({}, {goal}));

    FSet sigma = closure({goal}, kOne);
    std::string why;
    CHECK(check_proof(Calculus::cICK, *v.proof, sigma, kOne, &why));

    CyclicProof back = proof_from_json(proof_to_json(*v.proof), kOne);
    CHECK(check_proof(Calculus::cICK, back, sigma, kOne, &why));
    CHECK(back.nodes.size() == v.proof->nodes.size());
    CHECK(back.back_edges == v.proof->back_edges);
  }
}

TEST_CASE("S5 proofs from both stages validate under the S5 checker") {
  // Stage 1 (no S5-specific rule needed) and stage 2 (needs cut or k-imp).
  for (const char* text : {"K{a} p -> K{a} K{a} p", "K{a} p | ~K{a} p",
                           "~K{a} p -> K{a} ~K{a} p"}) {
    F goal = parse(text, kOne);
    Verdict v = decide(Calculus::cICKS5, goal, kOne);
    REQUIRE(v.provable);
    REQUIRE(v.proof);
    FSet sigma = negation_closure({goal}, kOne);
    std::string why;
    bool ok = check_proof(Calculus::cICKS5, *v.proof, sigma, kOne, &why);
    INFO(text << ": " << why);
    CHECK(ok);
    for (const ProofNode& nd : v.proof->nodes) CHECK(nd.rule != "s4");
  }
}

TEST_CASE("refuted goals in the cut-free calculi come with countermodels") {
  std::map<Calculus, FrameClass> fcs = {{Calculus::cICK, FrameClass::Epistemic},
                                        {Calculus::cICKT, FrameClass::Reflexive},
                                        {Calculus::cICKS4, FrameClass::S4}};
  std::map<Calculus, const char*> goals = {
      {Calculus::cICK, "K{a} p -> p"},
      {Calculus::cICKT, "K{a} p -> K{a} K{a} p"},
      {Calculus::cICKS4, "~K{a} p -> K{a} ~K{a} p"}};
  for (auto [cal, fc] : fcs) {
    F goal = parse(goals[cal], kOne);
    Verdict v = decide(cal, goal, kOne);
    REQUIRE(!v.provable);
    REQUIRE(v.countermodel);
    CHECK(check_frame(v.countermodel->model, fc).empty());
    CHECK(!eval(v.countermodel->model, v.countermodel->root, goal));
  }
}

TEST_CASE("resource caps surface as resource-limit errors") {
  DecideOptions opt;
  opt.caps.max_sequents = 3;
  CHECK_THROWS_AS(decide(Calculus::cICK, parse("C p -> C C p", kOne), kOne, opt),
                  ResourceLimit);
}

TEST_CASE("full and search arenas agree on random goals") {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    F f = ick_tests::random_formula(rng, kOne, 3);
    Sequent root = make_sequent({}, {f});
    for (Calculus cal : {Calculus::cICK, Calculus::cICKT, Calculus::cICKS4}) {
      Arena full = build_arena_full(cal, root, kOne);
      Arena search = build_arena_search(cal, root, kOne);
      CHECK(solve_arena(full).winner == solve_arena(search).winner);
      ++checked;
    }
  }
  CHECK(checked == 180);
}
