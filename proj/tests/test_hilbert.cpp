#include <doctest.h>

#include "derivations.hpp"
#include "ick/hilbert.hpp"

using namespace ick;

namespace {
const Agents kOne = make_agents({"a"});
const Agents kTwo = make_agents({"a", "b"});
}  // namespace

TEST_CASE("axiom scheme matching") {
  auto ax = [&](Calculus sys, const char* text, const Agents& ag = kOne) {
    return match_axiom(sys, parse(text, ag), ag);
  };

  CHECK(ax(Calculus::cICK, "K{a} (p -> q) -> (K{a} p -> K{a} q)") == std::string("K_a"));
  CHECK(!ax(Calculus::cICK, "K{a} (p -> q) -> (K{a} q -> K{a} p)"));

  CHECK(!ax(Calculus::cICK, "K{a} p -> p"));
  CHECK(ax(Calculus::cICKT, "K{a} p -> p") == std::string("T_a"));
  CHECK(ax(Calculus::cICKS5, "K{a} p -> p") == std::string("T_a"));

  CHECK(ax(Calculus::cICKS4, "K{a} p -> K{a} K{a} p") == std::string("S4_a"));
  CHECK(!ax(Calculus::cICKT, "K{a} p -> K{a} K{a} p"));

  CHECK(ax(Calculus::cICKS5, "~K{a} p -> K{a} ~K{a} p") == std::string("S5_a"));
  CHECK(!ax(Calculus::cICKS4, "~K{a} p -> K{a} ~K{a} p"));
  CHECK(!ax(Calculus::cICKS5, "~K{a} p -> K{a} ~K{a} q"));

  CHECK(ax(Calculus::cICKS5, "(K{a} p -> q) -> (~K{a} p | q)") == std::string("K_a^c"));
  CHECK(!ax(Calculus::cICK, "(K{a} p -> q) -> (~K{a} p | q)"));

  CHECK(ax(Calculus::cICK, "p -> (q -> p)") == std::string("Int"));
  CHECK(ax(Calculus::cICK, "K{a} p -> K{a} p") == std::string("Int"));
  CHECK(!ax(Calculus::cICK, "p | ~p"));
  CHECK(!ax(Calculus::cICK, "~~K{a} p -> K{a} p"));
}

TEST_CASE("fixpoint scheme matching tracks the agent set") {
  auto fix = [&](const char* text, const Agents& ag) {
    return match_axiom_scheme(Calculus::cICK, parse(text, ag), "Fix", ag);
  };
  CHECK(fix("C p -> (p & K{a} C p)", kOne));
  CHECK(fix("(p & K{a} C p) -> C p", kOne));
  CHECK(fix("C p -> (p & (K{a} C p & K{b} C p))", kTwo));
  CHECK(!fix("C p -> (p & K{a} C p)", kTwo));  // missing agent b
  CHECK(fix("(C p -> (p & E C p)) & ((p & E C p) -> C p)", kTwo));
  CHECK(!fix("(C p -> (p & E C p)) & ((q & E C q) -> C q)", kTwo));
  CHECK(!fix("C p -> p", kOne));
}

TEST_CASE("transcribed derivations check out") {
  for (const auto& c : ick_tests::valid_derivations()) {
    std::string why;
    bool ok = check_derivation(c.sys, c.derivation, c.assumptions, c.agents, &why);
    INFO(c.name << ": " << why);
    CHECK(ok);
  }
}

TEST_CASE("mutated derivations are rejected") {
  auto mutants = ick_tests::mutated_derivations();
  CHECK(mutants.size() == 10);
  for (const auto& c : mutants) {
    INFO(c.name);
    CHECK(!check_derivation(c.sys, c.derivation, c.assumptions, c.agents, nullptr));
  }
}

TEST_CASE("assumptions are usable outside the modal rules") {
  // p, p -> q |- q by MP is fine; |- K_a q by Nec over it is not.
  Derivation d;
  d.nodes = {
      ick_tests::dnode(0, "p", "assumption", {}),
      ick_tests::dnode(1, "p -> q", "assumption", {}),
      ick_tests::dnode(2, "q", "rule", {0, 1}, "MP"),
  };
  d.root = 2;
  FSet assume{parse("p", kOne), parse("p -> q", kOne)};
  std::string why;
  CHECK(check_derivation(Calculus::cICK, d, assume, kOne, &why));
  CHECK(!check_derivation(Calculus::cICK, d, {}, kOne, &why));  // not assumed

  Derivation d2 = d;
  d2.nodes.push_back(ick_tests::dnode(3, "K{a} q", "rule", {2}, "Nec", "a"));
  d2.root = 3;
  // fix tree: node 2 is now an inner premise, root moved
  CHECK(!check_derivation(Calculus::cICK, d2, assume, kOne, &why));
  CHECK(why == "node 3: Nec over an assumption");
}

TEST_CASE("MP accepts either premise order") {
  Derivation d;
  d.nodes = {
      ick_tests::dnode(0, "p -> (q -> p)", "axiom", {}, "Int"),
      ick_tests::dnode(1, "p", "assumption", {}),
      ick_tests::dnode(2, "q -> p", "rule", {0, 1}, "MP"),
  };
  d.root = 2;
  FSet assume{parse("p", kOne)};
  CHECK(check_derivation(Calculus::cICK, d, assume, kOne));
  std::swap(d.nodes[2].premise_ids[0], d.nodes[2].premise_ids[1]);
  CHECK(check_derivation(Calculus::cICK, d, assume, kOne));
}

TEST_CASE("Mon lifts implications to common knowledge") {
  Derivation d;
  d.nodes = {
      ick_tests::dnode(0, "(p & q) -> p", "axiom", {}, "Int"),
      ick_tests::dnode(1, "C (p & q) -> C p", "rule", {0}, "Mon"),
  };
  d.root = 1;
  CHECK(check_derivation(Calculus::cICK, d, {}, kOne));
  d.nodes[1].formula = parse("C (p & q) -> C q", kOne);
  CHECK(!check_derivation(Calculus::cICK, d, {}, kOne));
}

TEST_CASE("derivation JSON round trip") {
  for (const auto& c : ick_tests::valid_derivations()) {
    Derivation back = derivation_from_json(derivation_to_json(c.derivation), c.agents);
    std::string why;
    bool ok = check_derivation(c.sys, back, c.assumptions, c.agents, &why);
    INFO(c.name << ": " << why);
    CHECK(ok);
    CHECK(conclusion(back) == conclusion(c.derivation));
  }
}
