// Command-line front end: decide, translate, check-proof, check-model, eval,
// check-hilbert, corpus. Exit codes: 0 positive verdict, 1 negative verdict,
// 2 malformed input or resource limit.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ick/corpus.hpp"
#include "ick/engine.hpp"
#include "ick/hilbert.hpp"
#include "ick/translate.hpp"

namespace {

ick::Agents parse_agents(const std::string& csv) {
  std::vector<std::string> names;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) names.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(c)))
      cur += c;
  }
  if (!cur.empty()) names.push_back(cur);
  return ick::make_agents(names);
}

ick::Calculus parse_logic(const std::string& name) {
  auto cal = ick::calculus_from_logic_name(name);
  if (!cal) throw std::invalid_argument("unknown logic '" + name + "'");
  return *cal;
}

nlohmann::json read_json(const std::string& path) {
  if (path == "-") return nlohmann::json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return nlohmann::json::parse(in);
}

void write_output(const std::string& path, const nlohmann::json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

struct CommonOpts {
  std::string logic = "ICK";
  std::string agents = "a";
  size_t max_sequents = 2000000;
  double time_budget = 120.0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_logic = true) {
  if (with_logic)
    cmd->add_option("--logic", o.logic, "logic: ICK, ICKT, ICKS4, or ICKS5");
  cmd->add_option("--agents", o.agents, "comma-separated agent names");
  cmd->add_option("--max-sequents", o.max_sequents, "cap on interned sequents");
  cmd->add_option("--time-budget", o.time_budget, "time budget in seconds");
}

int run_decide(const CommonOpts& o, const std::string& text, const std::string& cert,
               bool s5_cm, bool json_out) {
  ick::Agents agents = parse_agents(o.agents);
  ick::Calculus cal = parse_logic(o.logic);
  ick::F goal = ick::parse(text, agents);
  ick::DecideOptions opt;
  opt.caps = {o.max_sequents, o.time_budget};
  opt.s5_countermodel = s5_cm;
  ick::Verdict v = ick::decide(cal, goal, agents, opt);

  nlohmann::json certificate;
  if (v.proof)
    certificate = ick::proof_to_json(*v.proof);
  else if (v.countermodel) {
    certificate = ick::model_to_json(v.countermodel->model);
    certificate["root"] = v.countermodel->model.worlds[v.countermodel->root];
  }
  if (json_out) {
    nlohmann::json j;
    j["verdict"] = v.provable ? "provable" : "not-provable";
    if (!certificate.is_null()) j["certificate"] = certificate;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (v.provable ? "provable" : "not-provable") << "\n";
    if (!cert.empty() && !certificate.is_null()) write_output(cert, certificate);
  }
  return v.provable ? 0 : 1;
}

int run_corpus(const CommonOpts& o) {
  bool all_ok = true;
  for (const auto& item : ick::corpus()) {
    ick::Agents agents = ick::make_agents(item.agents);
    ick::F goal = ick::parse(item.text, agents);
    for (size_t i = 0; i < ick::kAllCalculi.size(); ++i) {
      ick::Calculus cal = ick::kAllCalculi[i];
      ick::DecideOptions opt;
      opt.caps = {o.max_sequents, o.time_budget};
      bool got = ick::decide(cal, goal, agents, opt).provable;
      bool ok = got == item.expected[i];
      all_ok = all_ok && ok;
      std::cout << (ok ? "pass" : "FAIL") << "  " << item.name << "  "
                << ick::calculus_name(cal) << "  expected "
                << (item.expected[i] ? "provable" : "not-provable") << ", got "
                << (got ? "provable" : "not-provable") << "\n";
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedure, cyclic proofs, and countermodels for "
               "intuitionistic common-knowledge logic"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string formula, file, cert, world, fclass = "epistemic";
  std::vector<std::string> assume;
  bool s5_cm = false, json_out = false;

  auto* cmd_decide = app.add_subcommand("decide", "decide provability of a formula");
  add_common(cmd_decide, o);
  cmd_decide->add_option("formula", formula, "goal formula")->required();
  cmd_decide->add_option("--certificate", cert, "write the proof/countermodel JSON here ('-' for stdout)");
  cmd_decide->add_flag("--s5-countermodel", s5_cm, "build the canonical S5 countermodel on refutation");
  cmd_decide->add_flag("--json", json_out, "machine-readable output");

  auto* cmd_translate = app.add_subcommand("translate", "print the double-negation translation tr(formula)");
  add_common(cmd_translate, o, false);
  cmd_translate->add_option("formula", formula, "formula to translate")->required();

  auto* cmd_check_proof = app.add_subcommand("check-proof", "validate a cyclic proof JSON file");
  add_common(cmd_check_proof, o);
  cmd_check_proof->add_option("file", file, "proof JSON ('-' for stdin)")->required();

  auto* cmd_check_model = app.add_subcommand("check-model", "validate a model JSON file against a frame class");
  cmd_check_model->add_option("--class", fclass, "epistemic, reflexive, S4, S5, or classical");
  cmd_check_model->add_option("file", file, "model JSON ('-' for stdin)")->required();

  auto* cmd_eval = app.add_subcommand("eval", "evaluate a formula at a world of a model");
  add_common(cmd_eval, o, false);
  cmd_eval->add_option("file", file, "model JSON ('-' for stdin)")->required();
  cmd_eval->add_option("--world", world, "world name")->required();
  cmd_eval->add_option("formula", formula, "formula to evaluate")->required();

  auto* cmd_check_hilbert = app.add_subcommand("check-hilbert", "validate a Hilbert derivation JSON file");
  add_common(cmd_check_hilbert, o);
  cmd_check_hilbert->add_option("file", file, "derivation JSON ('-' for stdin)")->required();
  cmd_check_hilbert->add_option("--assume", assume, "assumption formulas");

  auto* cmd_corpus = app.add_subcommand("corpus", "run the benchmark corpus and print a pass/fail table");
  add_common(cmd_corpus, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cmd_decide) return run_decide(o, formula, cert, s5_cm, json_out);

    if (*cmd_translate) {
      ick::Agents agents = parse_agents(o.agents);
      std::cout << ick::render(ick::tr(ick::parse(formula, agents))) << "\n";
      return 0;
    }

    if (*cmd_check_proof) {
      ick::Agents agents = parse_agents(o.agents);
      ick::Calculus cal = parse_logic(o.logic);
      ick::CyclicProof pf = ick::proof_from_json(read_json(file), agents);
      if (pf.nodes.empty()) throw std::invalid_argument("proof has no nodes");
      ick::FSet sigma = ick::detail::sequent_sigma(cal, pf.nodes.at(pf.root).seq, agents);
      std::string why;
      if (ick::check_proof(cal, pf, sigma, agents, &why)) {
        std::cout << "valid\n";
        return 0;
      }
      std::cout << "invalid: " << why << "\n";
      return 1;
    }

    if (*cmd_check_model) {
      nlohmann::json j = read_json(file);
      std::vector<std::string> bad;
      if (fclass == "classical")
        bad = ick::check_classical(ick::classical_from_json(j));
      else {
        auto fc = ick::frame_class_from_name(fclass);
        if (!fc) throw std::invalid_argument("unknown frame class '" + fclass + "'");
        bad = ick::check_frame(ick::model_from_json(j), *fc);
      }
      if (bad.empty()) {
        std::cout << "valid\n";
        return 0;
      }
      for (const auto& msg : bad) std::cout << msg << "\n";
      return 1;
    }

    if (*cmd_eval) {
      ick::Agents agents = parse_agents(o.agents);
      ick::F f = ick::parse(formula, agents);
      nlohmann::json j = read_json(file);
      bool truth;
      if (j.contains("order"))
        truth = ick::eval(ick::model_from_json(j), world, f);
      else
        truth = ick::eval_classical(ick::classical_from_json(j), world, f);
      std::cout << (truth ? "true" : "false") << "\n";
      return truth ? 0 : 1;
    }

    if (*cmd_check_hilbert) {
      ick::Agents agents = parse_agents(o.agents);
      ick::Calculus cal = parse_logic(o.logic);
      ick::Derivation d = ick::derivation_from_json(read_json(file), agents);
      ick::FSet assumptions;
      for (const auto& text : assume) assumptions.insert(ick::parse(text, agents));
      std::string why;
      if (ick::check_derivation(cal, d, assumptions, agents, &why)) {
        std::cout << "valid\n";
        return 0;
      }
      std::cout << "invalid: " << why << "\n";
      return 1;
    }

    if (*cmd_corpus) return run_corpus(o);
  } catch (const ick::ResourceLimit& e) {
    std::cout << "resource-limit\n";
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
