// Acceptance checks for the decision procedure, certificates, oracles,
// semantics, translation, scalability, and the Hilbert checker. Prints one
// PASS/FAIL line per criterion and exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "derivations.hpp"
#include "ick/corpus.hpp"
#include "ick/engine.hpp"
#include "ick/translate.hpp"
#include "random_gen.hpp"

using namespace ick;

namespace {

const Agents kOne = make_agents({"a"});

struct Check {
  int failures = 0;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    std::printf("    FAIL: %s\n", what.c_str());
  }
};

struct CorpusRun {
  const CorpusItem* item;
  Calculus cal;
  Agents agents;
  F goal;
  Verdict verdict;
};

std::vector<CorpusRun>& corpus_runs() {
  static std::vector<CorpusRun> runs = [] {
    std::vector<CorpusRun> out;
    for (const CorpusItem& item : corpus())
      for (size_t i = 0; i < kAllCalculi.size(); ++i) {
        CorpusRun r;
        r.item = &item;
        r.cal = kAllCalculi[i];
        r.agents = make_agents(item.agents);
        r.goal = parse(item.text, r.agents);
        r.verdict = decide(r.cal, r.goal, r.agents);
        out.push_back(std::move(r));
      }
    return out;
  }();
  return runs;
}

// --- criterion 1: corpus provability pattern --------------------------------

bool criterion1() {
  Check c;
  for (const CorpusRun& r : corpus_runs()) {
    size_t idx = 0;
    while (kAllCalculi[idx] != r.cal) ++idx;
    c.expect(r.verdict.provable == r.item->expected[idx],
             r.item->name + " in " + calculus_name(r.cal) + ": got " +
                 (r.verdict.provable ? "provable" : "not provable"));
  }
  return c.failures == 0;
}

// --- criterion 2: certificate integrity -------------------------------------

bool criterion2() {
  Check c;
  for (const CorpusRun& r : corpus_runs()) {
    const std::string tag = r.item->name + " in " + calculus_name(r.cal);
    if (r.verdict.provable) {
      c.expect(bool(r.verdict.proof), tag + ": missing proof certificate");
      if (!r.verdict.proof) continue;
      FSet sigma = detail::sequent_sigma(r.cal, make_sequent({}, {r.goal}), r.agents);
      std::string why;
      c.expect(check_proof(r.cal, *r.verdict.proof, sigma, r.agents, &why),
               tag + ": proof rejected (" + why + ")");
    } else if (r.cal != Calculus::cICKS5) {
      c.expect(bool(r.verdict.countermodel), tag + ": missing countermodel");
      if (!r.verdict.countermodel) continue;
      FrameClass fc = r.cal == Calculus::cICK    ? FrameClass::Epistemic
                      : r.cal == Calculus::cICKT ? FrameClass::Reflexive
                                                 : FrameClass::S4;
      c.expect(check_frame(r.verdict.countermodel->model, fc).empty(),
               tag + ": countermodel outside the frame class");
      c.expect(!eval(r.verdict.countermodel->model, r.verdict.countermodel->root,
                     interpretation(make_sequent({}, {r.goal}))),
               tag + ": countermodel fails to falsify the goal");
    }
  }
  // canonical S5 countermodels for two sample non-theorems
  for (const char* text : {"p", "C p"}) {
    F goal = parse(text, kOne);
    try {
      Countermodel cm = extract_countermodel_s5(make_sequent({}, {goal}), kOne);
      c.expect(cm.model.size() <= 5000, std::string(text) + ": world cap exceeded");
      c.expect(check_frame(cm.model, FrameClass::S5).empty(),
               std::string(text) + ": canonical model is not S5");
      c.expect(!eval(cm.model, cm.root, goal),
               std::string(text) + ": canonical model fails to falsify");
    } catch (const std::exception& e) {
      c.expect(false, std::string(text) + ": canonical construction threw: " + e.what());
    }
  }
  return c.failures == 0;
}

// --- criterion 3: full vs search arena agreement ----------------------------

bool criterion3() {
  Check c;
  const std::array<Calculus, 3> cut_free = {Calculus::cICK, Calculus::cICKT,
                                            Calculus::cICKS4};
  for (const CorpusItem& item : corpus()) {
    Agents ag = make_agents(item.agents);
    Sequent root = make_sequent({}, {parse(item.text, ag)});
    for (Calculus cal : cut_free) {
      int full = solve_arena(build_arena_full(cal, root, ag)).winner;
      int search = solve_arena(build_arena_search(cal, root, ag)).winner;
      c.expect(full == search, item.name + " in " + calculus_name(cal) +
                                   ": full and search arenas disagree");
    }
  }
  std::mt19937 rng(70001);
  int sampled = 0;
  while (sampled < 200) {
    F f = ick_tests::random_formula(rng, kOne, 4);
    if (complexity(f) > 8) continue;
    ++sampled;
    Sequent root = make_sequent({}, {f});
    for (Calculus cal : cut_free) {
      int full = solve_arena(build_arena_full(cal, root, kOne)).winner;
      int search = solve_arena(build_arena_search(cal, root, kOne)).winner;
      c.expect(full == search,
               render(f) + " in " + calculus_name(cal) + ": arenas disagree");
    }
  }
  return c.failures == 0;
}

// --- criterion 4: strategy verification -------------------------------------

bool criterion4() {
  Check c;
  std::mt19937 rng(40404);
  for (int i = 0; i < 200; ++i) {
    Game g = with_dead_end_sinks(ick_tests::random_game(rng, 500));
    Solution s = solve_game(g);
    for (int v = 0; v < g.size(); ++v)
      if (!verify_strategy(g, v, s.winner[v], s.strategy)) {
        c.expect(false, "random arena " + std::to_string(i) + " position " +
                            std::to_string(v) + ": strategy rejected");
        break;
      }
  }
  auto verify_full = [&](const std::string& tag, Calculus cal, const Sequent& root,
                         const Agents& ag) {
    Arena a = build_arena_full(cal, root, ag);
    ArenaSolution as = solve_arena(a);
    c.expect(verify_strategy(as.sinked, a.initial, as.winner, as.solution.strategy),
             tag + ": strategy rejected");
    return as.winner;
  };
  for (const CorpusItem& item : corpus()) {
    Agents ag = make_agents(item.agents);
    Sequent root = make_sequent({}, {parse(item.text, ag)});
    for (Calculus cal : kAllCalculi) {
      // Mirror the decision procedure: the S5 cut arena is only built when
      // the staged cut-free attempt fails.
      if (cal == Calculus::cICKS5) {
        int stage1 = verify_full(item.name + " staged S4 arena",
                                 Calculus::cICKS4, root, ag);
        if (stage1 != kProver)
          verify_full(item.name + " S5 cut arena", Calculus::cICKS5, root, ag);
        continue;
      }
      verify_full(item.name + " full arena in " + calculus_name(cal), cal, root, ag);
      Arena sa = build_arena_search(cal, root, ag);
      ArenaSolution ss = solve_arena(sa);
      c.expect(verify_strategy(ss.sinked, sa.initial, ss.winner, ss.solution.strategy),
               item.name + " search arena in " + calculus_name(cal) +
                   ": strategy rejected");
    }
  }
  return c.failures == 0;
}

// --- criterion 5: semantic properties ---------------------------------------

bool criterion5() {
  Check c;
  const Agents two = make_agents({"a", "b"});

  {  // monotonicity along the order
    std::mt19937 rng(50001);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      Model m = ick_tests::random_model(rng, two, FrameClass::Epistemic);
      F f = ick_tests::random_formula(rng, two, 4);
      Evaluator ev(m);
      for (int w = 0; w < m.size(); ++w)
        for (int v = 0; v < m.size(); ++v)
          if (m.order.at(w, v) && ev.truth(w, f) && !ev.truth(v, f)) ++bad;
    }
    c.expect(bad == 0, "monotonicity failures: " + std::to_string(bad));
  }
  {  // implications from a knowledge antecedent are classical in S5 models
    std::mt19937 rng(50002);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      Model m = ick_tests::random_model(rng, two, FrameClass::S5);
      F f = f_know(two[i % 2], ick_tests::random_formula(rng, two, 3));
      F g = ick_tests::random_formula(rng, two, 3);
      Evaluator ev(m);
      F imp = f_imp(f, g);
      for (int w = 0; w < m.size(); ++w)
        if (ev.truth(w, imp) != (!ev.truth(w, f) || ev.truth(w, g))) ++bad;
    }
    c.expect(bad == 0, "S5 classical-implication failures: " + std::to_string(bad));
  }
  {  // the fixpoint law C phi <-> phi & E C phi under evaluation
    std::mt19937 rng(50003);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      Model m = ick_tests::random_model(rng, two, FrameClass::Epistemic);
      F f = ick_tests::random_formula(rng, two, 3);
      F cf = f_com(f);
      F rhs = f_and(f, f_everybody(two, cf));
      Evaluator ev(m);
      for (int w = 0; w < m.size(); ++w)
        if (ev.truth(w, cf) != ev.truth(w, rhs)) ++bad;
    }
    c.expect(bad == 0, "fixpoint-equivalence failures: " + std::to_string(bad));
  }
  {  // parse after render is the identity
    std::mt19937 rng(50004);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      F f = ick_tests::random_formula(rng, two, 5);
      if (parse(render(f), two) != f) ++bad;
    }
    c.expect(bad == 0, "parse/render round-trip failures: " + std::to_string(bad));
  }
  return c.failures == 0;
}

// --- criterion 6: the classical translation ---------------------------------

bool criterion6() {
  Check c;
  {
    std::mt19937 rng(60001);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      ClassicalModel m = ick_tests::random_classical_s5(rng, make_agents({"a", "b"}));
      F f = ick_tests::random_formula(rng, make_agents({"a", "b"}), 4);
      if (!check_translation_equiv(m, f)) ++bad;
    }
    c.expect(bad == 0, "translation-equivalence failures: " + std::to_string(bad));
  }
  DecideOptions opt;
  opt.want_certificate = false;
  for (const char* text : {"K{a} (p -> q) -> (K{a} p -> K{a} q)", "K{a} p -> p",
                           "K{a} p -> K{a} K{a} p", "~K{a} p -> K{a} ~K{a} p",
                           "C p -> (p & K{a} C p)", "(p & K{a} C p) -> C p"}) {
    try {
      c.expect(decide(Calculus::cICKS5, tr(parse(text, kOne)), kOne, opt).provable,
               std::string("tr(") + text + ") should be provable");
    } catch (const std::exception& e) {
      c.expect(false, std::string("tr(") + text + ") threw: " + e.what());
    }
  }
  for (const char* text : {"p", "p -> K{a} p", "K{a} p -> K{a} q"}) {
    try {
      c.expect(!decide(Calculus::cICKS5, tr(parse(text, kOne)), kOne, opt).provable,
               std::string("tr(") + text + ") should not be provable");
    } catch (const std::exception& e) {
      c.expect(false, std::string("tr(") + text + ") threw: " + e.what());
    }
  }
  return c.failures == 0;
}

// --- criterion 7: scalability guard -----------------------------------------

bool criterion7() {
  Check c;
  DecideOptions opt;
  opt.want_certificate = false;
  auto guard = [&](const std::string& name, F goal, const Agents& ag) {
    for (Calculus cal : kAllCalculi) {
      auto t0 = std::chrono::steady_clock::now();
      try {
        decide(cal, goal, ag, opt);
      } catch (const ResourceLimit& e) {
        c.expect(false, name + " in " + calculus_name(cal) + ": " + e.what());
        continue;
      }
      double dt =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      c.expect(dt <= 120.0, name + " in " + calculus_name(cal) + ": took " +
                                std::to_string(dt) + "s");
    }
  };
  for (const CorpusItem& item : corpus()) {
    Agents ag = make_agents(item.agents);
    guard(item.name, parse(item.text, ag), ag);
  }
  std::mt19937 rng(70707);
  int sampled = 0;
  while (sampled < 30) {
    F f = ick_tests::random_formula(rng, kOne, 4);
    if (negation_closure({f}, kOne).size() > 14) continue;
    ++sampled;
    guard(render(f), f, kOne);
  }
  return c.failures == 0;
}

// --- criterion 8: Hilbert derivations ---------------------------------------

bool criterion8() {
  Check c;
  for (const auto& h : ick_tests::valid_derivations()) {
    std::string why;
    c.expect(check_derivation(h.sys, h.derivation, h.assumptions, h.agents, &why),
             h.name + ": rejected (" + why + ")");
  }
  auto mutants = ick_tests::mutated_derivations();
  c.expect(mutants.size() == 10,
           "expected 10 mutants, have " + std::to_string(mutants.size()));
  for (const auto& h : mutants)
    c.expect(!check_derivation(h.sys, h.derivation, h.assumptions, h.agents, nullptr),
             h.name + ": mutant accepted");
  return c.failures == 0;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* what;
    bool (*run)();
  };
  const Criterion criteria[] = {
      {1, "corpus provability pattern", criterion1},
      {2, "certificate integrity", criterion2},
      {3, "full vs search arena agreement", criterion3},
      {4, "strategy verification", criterion4},
      {5, "semantic properties", criterion5},
      {6, "classical translation", criterion6},
      {7, "scalability guard", criterion7},
      {8, "Hilbert derivations", criterion8},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    bool ok = false;
    try {
      ok = cr.run();
    } catch (const std::exception& e) {
      std::printf("    FAIL: unexpected exception: %s\n", e.what());
    }
    std::printf("criterion %d (%s): %s\n", cr.number, cr.what, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
