#ifndef ICK_CORPUS_HPP
#define ICK_CORPUS_HPP

// The benchmark corpus: formulas with a known provability status in each of
// the four calculi, shared by the command-line `corpus` command and the
// acceptance checks.

#include <array>
#include <string>
#include <vector>

#include "ick/sequent.hpp"

namespace ick {

struct CorpusItem {
  std::string name;
  std::vector<std::string> agents;
  std::string text;
  // expected provability in cICK, cICKT, cICKS4, cICKS5
  std::array<bool, 4> expected;
};

inline const std::vector<CorpusItem>& corpus() {
  static const std::vector<CorpusItem> items = {
      {"induction-two-agents", {"a", "b"},
       "(p & C(p -> (K{a} p & K{b} p))) -> C p", {true, true, true, true}},
      {"induction-one-agent", {"a"},
       "(p & C(p -> K{a} p)) -> C p", {true, true, true, true}},
      {"k-distribution", {"a"},
       "K{a}(p -> q) -> (K{a} p -> K{a} q)", {true, true, true, true}},
      {"fixpoint-forward", {"a"},
       "C p -> (p & K{a} C p)", {true, true, true, true}},
      {"fixpoint-backward", {"a"},
       "(p & K{a} C p) -> C p", {true, true, true, true}},
      {"t-axiom", {"a"}, "K{a} p -> p", {false, true, true, true}},
      {"four-axiom", {"a"}, "K{a} p -> K{a} K{a} p", {false, false, true, true}},
      {"knowledge-lem", {"a"}, "K{a} p | ~K{a} p", {false, false, false, true}},
      {"common-knowledge-lem", {"a"}, "C p | ~C p", {false, false, false, true}},
      {"five-axiom", {"a"}, "~K{a} p -> K{a} ~K{a} p", {false, false, false, true}},
      {"b-style-axiom", {"a"}, "p -> K{a} ~K{a} ~p", {false, false, false, true}},
      {"excluded-middle", {"a"}, "p | ~p", {false, false, false, false}},
      {"double-negation", {"a"}, "~~p -> p", {false, false, false, false}},
  };
  return items;
}

inline constexpr std::array<Calculus, 4> kAllCalculi = {
    Calculus::cICK, Calculus::cICKT, Calculus::cICKS4, Calculus::cICKS5};

}  // namespace ick

#endif  // ICK_CORPUS_HPP
