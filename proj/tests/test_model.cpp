#include <doctest.h>

#include <random>

#include "ick/model.hpp"
#include "random_gen.hpp"

using namespace ick;

namespace {

Model two_chain() {
  // w <= v, p true only at v
  Model m;
  m.worlds = {"w", "v"};
  m.order = Rel::identity(2);
  m.order.at(0, 1) = 1;
  m.valuation = {{}, {"p"}};
  return m;
}

}  // namespace

TEST_CASE("check_frame reports specific violations") {
  Model m = two_chain();

  CHECK(check_frame(m, FrameClass::Epistemic).empty());

  SUBCASE("triangle confluence") {
    Rel r(2);
    r.at(1, 1) = 1;  // v R_a v but not w R_a v although w <= v
    m.rel["a"] = r;
    auto bad = check_frame(m, FrameClass::Epistemic);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == "triangle confluence fails for a on (w,v,v)");
  }

  SUBCASE("monotone valuation") {
    m.valuation = {{"p"}, {}};
    auto bad = check_frame(m, FrameClass::Epistemic);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == "valuation not monotone: p at w but not at v");
  }

  SUBCASE("order must be reflexive") {
    m.order.at(0, 0) = 0;
    CHECK(!check_frame(m, FrameClass::Epistemic).empty());
  }

  SUBCASE("class-specific relation conditions") {
    m.rel["a"] = Rel(2);  // empty relation
    CHECK(check_frame(m, FrameClass::Epistemic).empty());
    CHECK(!check_frame(m, FrameClass::Reflexive).empty());

    Rel r = Rel::identity(2);
    r.at(0, 1) = 1;  // reflexive but not symmetric
    Model m2 = two_chain();
    m2.rel["a"] = r;
    CHECK(check_frame(m2, FrameClass::Reflexive).empty());
    CHECK(check_frame(m2, FrameClass::S4).empty());
    CHECK(!check_frame(m2, FrameClass::S5).empty());
  }
}

TEST_CASE("intuitionistic evaluation") {
  Agents one = make_agents({"a"});
  Model m = two_chain();
  F p = f_atom("p");

  CHECK(!eval(m, "w", p));
  CHECK(eval(m, "v", p));
  CHECK(!eval(m, 0, f_neg(p)));            // v above w satisfies p
  CHECK(eval(m, 0, f_neg(f_neg(p))));      // but ~~p already holds at w
  CHECK(!eval(m, 0, f_imp(f_neg(f_neg(p)), p)));  // DNE fails at w
  CHECK(eval(m, 0, f_or(p, f_neg(p))) == false);  // LEM fails at w
  CHECK(eval(m, 1, f_or(p, f_neg(p))));
  CHECK_THROWS_AS(eval(m, 5, p), std::invalid_argument);
  CHECK_THROWS_AS(eval(m, "u", p), std::invalid_argument);
}

TEST_CASE("modal evaluation") {
  Model m;
  m.worlds = {"w"};
  m.order = Rel::identity(1);
  m.valuation = {{}};
  F p = f_atom("p");

  // No relation for agent a: K_a is vacuously true; R* is still reflexive.
  CHECK(eval(m, 0, f_know("a", f_bottom())));
  CHECK(!eval(m, 0, f_com(p)));
  CHECK(eval(m, 0, f_com(f_top())));

  m.valuation = {{"p"}};
  CHECK(eval(m, 0, f_com(p)));

  // Two R_a-linked worlds: K_a p needs p everywhere reachable.
  Model m2;
  m2.worlds = {"w", "v"};
  m2.order = Rel::identity(2);
  Rel r = Rel::identity(2);
  r.at(0, 1) = r.at(1, 0) = 1;
  m2.rel["a"] = r;
  m2.valuation = {{"p"}, {}};
  CHECK(eval(m2, 0, p));
  CHECK(!eval(m2, 0, f_know("a", p)));
  CHECK(!eval(m2, 0, f_com(p)));
  m2.valuation = {{"p"}, {"p"}};
  CHECK(eval(m2, 0, f_know("a", p)));
  CHECK(eval(m2, 0, f_com(p)));
}

TEST_CASE("common knowledge spans the union of all agents' relations") {
  // w -a- v -b- u, p true at w and v but not u
  Model m;
  m.worlds = {"w", "v", "u"};
  m.order = Rel::identity(3);
  Rel ra(3), rb(3);
  ra.at(0, 1) = ra.at(1, 0) = 1;
  rb.at(1, 2) = rb.at(2, 1) = 1;
  m.rel["a"] = ra;
  m.rel["b"] = rb;
  m.valuation = {{"p"}, {"p"}, {}};
  F p = f_atom("p");
  CHECK(eval(m, 0, f_know("a", p)));
  CHECK(!eval(m, 0, f_com(p)));  // u reachable via a then b
}

TEST_CASE("evaluation is monotone along the order") {
  Agents two = make_agents({"a", "b"});
  std::mt19937 rng(404);
  for (int i = 0; i < 200; ++i) {
    Model m = ick_tests::random_model(rng, two, FrameClass::Epistemic);
    F f = ick_tests::random_formula(rng, two, 4);
    Evaluator ev(m);
    for (int w = 0; w < m.size(); ++w)
      for (int v = 0; v < m.size(); ++v)
        if (m.order.at(w, v) && ev.truth(w, f)) CHECK(ev.truth(v, f));
  }
}

TEST_CASE("close_model repairs the agent relations") {
  Model m = two_chain();
  Rel r(2);
  r.at(1, 1) = 1;
  m.rel["a"] = r;

  Model e = close_model(m, FrameClass::Epistemic);
  CHECK(check_frame(e, FrameClass::Epistemic).empty());
  CHECK(e.rel["a"].at(0, 1));  // triangle closure adds (w,v) from w<=v, vR_a v
  CHECK(!e.rel["a"].at(0, 0));

  Model t = close_model(m, FrameClass::Reflexive);
  CHECK(check_frame(t, FrameClass::Reflexive).empty());
  CHECK(t.rel["a"].at(0, 0));

  Model s4 = close_model(m, FrameClass::S4);
  CHECK(check_frame(s4, FrameClass::S4).empty());

  CHECK_THROWS_AS(close_model(m, FrameClass::S5), std::invalid_argument);
}

TEST_CASE("close_model lands in the class and is idempotent") {
  Agents two = make_agents({"a", "b"});
  std::mt19937 rng(99);
  for (auto fc : {FrameClass::Epistemic, FrameClass::Reflexive, FrameClass::S4})
    for (int i = 0; i < 100; ++i) {
      Model m = ick_tests::random_model(rng, two, fc, 5);
      CHECK(check_frame(m, fc).empty());
      Model again = close_model(m, fc);
      for (const auto& [a, ra] : m.rel) CHECK(again.rel[a] == ra);
    }
}

TEST_CASE("reduced and induced models") {
  Agents one = make_agents({"a"});
  std::mt19937 rng(2718);

  SUBCASE("reduced keeps maximal worlds and is classically S5") {
    for (int i = 0; i < 50; ++i) {
      Model m = ick_tests::random_model(rng, one, FrameClass::S5);
      ClassicalModel c = reduced_model(m);
      CHECK(c.size() >= 1);
      CHECK(check_classical(c).empty());
      for (const auto& w : c.worlds) {
        int orig = m.world_index(w);
        for (int v = 0; v < m.size(); ++v)
          if (v != orig && m.order.at(orig, v)) CHECK(m.order.at(v, orig));
      }
    }
  }

  SUBCASE("reduced rejects non-S5 input") {
    Model m = two_chain();
    m.rel["a"] = Rel(2);
    CHECK_THROWS_AS(reduced_model(m), std::invalid_argument);
  }

  SUBCASE("induced agrees with classical evaluation") {
    for (int i = 0; i < 100; ++i) {
      ClassicalModel c = ick_tests::random_classical_s5(rng, one);
      Model m = induced_model(c);
      CHECK(check_frame(m, FrameClass::S5).empty());
      F f = ick_tests::random_formula(rng, one, 4);
      for (int w = 0; w < c.size(); ++w)
        CHECK(eval(m, w, f) == eval_classical(c, w, f));
    }
  }

  SUBCASE("induced rejects non-equivalence relations") {
    ClassicalModel c;
    c.worlds = {"w", "v"};
    Rel r(2);
    r.at(0, 1) = 1;
    c.rel["a"] = r;
    c.valuation = {{}, {}};
    CHECK_THROWS_AS(induced_model(c), std::invalid_argument);
  }
}

TEST_CASE("model JSON round trip") {
  Agents two = make_agents({"a", "b"});
  std::mt19937 rng(31337);
  for (int i = 0; i < 50; ++i) {
    Model m = ick_tests::random_model(rng, two, FrameClass::S4);
    Model back = model_from_json(model_to_json(m));
    CHECK(back.worlds == m.worlds);
    CHECK(back.order == m.order);
    for (const auto& [a, ra] : m.rel) CHECK(back.rel[a] == ra);
    for (int w = 0; w < m.size(); ++w)
      for (const auto& p : m.valuation[w]) CHECK(back.has_atom(w, p));
  }
}

TEST_CASE("model JSON parsing details") {
  auto j = nlohmann::json::parse(R"({
    "worlds": ["w", "v", "u"],
    "order": [["w", "v"], ["v", "u"]],
    "relations": {"a": [["u", "u"]]},
    "valuation": {"v": ["p"]}
  })");
  Model m = model_from_json(j);
  CHECK(m.order.at(0, 2));  // transitive closure of the generators
  CHECK(m.order.at(1, 1));  // reflexive closure
  CHECK(m.has_atom(1, "p"));
  CHECK(!m.has_atom(0, "p"));

  j["order"].push_back({"u", "w"});
  CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);

  auto jc = nlohmann::json::parse(R"({
    "worlds": ["w"],
    "relations": {"a": [["w", "w"]]},
    "valuation": {"w": ["p"]}
  })");
  ClassicalModel c = classical_from_json(jc);
  CHECK(eval_classical(c, 0, f_atom("p")));
}
