// Copyright 2026 The latentq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "latentq/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "latentq/io.hpp"

namespace latentq::cli {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

double tolerance_or_default(double tol_flag, double fallback) {
  if (tol_flag > 0.0) return tol_flag;
  if (const char* env = std::getenv("LATENTQ_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return fallback;
}

void emit(std::string text, const std::string& out_path) {
  if (text.empty() || text.back() != '\n') text += '\n';
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write " + out_path);
  out << text;
}

ElementaryLabel pick_label(const LatentConfig& cfg) {
  for (const auto& [name, dim] : cfg.labels()) {
    const ElementaryLabel l{name, dim};
    if (!l.is_trivial()) return l;
  }
  throw std::invalid_argument("config registers no nontrivial label");
}

SystemString parse_system(const std::string& spec, const LatentConfig& cfg) {
  std::vector<ElementaryLabel> labels;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) {
    const auto found = cfg.find_label(token);
    if (!found) throw std::invalid_argument("unknown label '" + token + "'");
    labels.push_back(*found);
  }
  if (labels.empty()) throw std::invalid_argument("empty system spec");
  return canonicalize(std::move(labels));
}

int cmd_verify(const std::string& config_path, std::uint64_t seed, int trials,
               double tol_flag, const std::string& out_path) {
  const LatentConfig cfg = io::load_config(config_path);
  TheoryUnderTest tut =
      TheoryUnderTest::make(cfg, pick_label(cfg), seed, trials);
  tut.tolerance = tolerance_or_default(tol_flag, tut.tolerance);
  if (cfg.mutation != Mutation::kNone) tut.stop_on_gross_failure = true;

  const std::vector<CheckReport> reports = run_suite(tut);
  bool all_pass = true;
  io::json checks = io::json::array();
  for (const CheckReport& r : reports) {
    all_pass = all_pass && r.pass;
    checks.push_back(io::check_report_to_json(r));
  }
  io::json report{{"command", "verify"},
                  {"config", config_path},
                  {"mutation", io::mutation_name(cfg.mutation)},
                  {"seed", seed},
                  {"trials", trials},
                  {"tolerance", tut.tolerance},
                  {"checks", checks},
                  {"all_pass", all_pass}};
  emit(report.dump(2), out_path);
  return all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_bell(const std::string& config_path, const std::string& scenario_path,
             std::uint64_t seed, double tol_flag, const std::string& out_path,
             const std::string& format) {
  const LatentConfig cfg = io::load_config(config_path);
  const Scenario scenario = io::load_scenario(scenario_path, cfg);
  const double tol = tolerance_or_default(tol_flag, 1e-9);

  const CorrelationTable lqt = correlations_lqt(scenario, cfg);
  const CorrelationTable qt = correlations_qt_oracle(scenario, cfg);
  const CheckReport equiv = check_bell_equivalence(scenario, cfg, tol);

  bool all_pass = equiv.pass;
  io::json report{{"command", "bell"},
                  {"config", config_path},
                  {"scenario", scenario_path},
                  {"seed", seed},
                  {"tolerance", tol},
                  {"max_deviation", equiv.max_deviation},
                  {"lqt_table", io::table_to_json(lqt)},
                  {"qt_table", io::table_to_json(qt)}};
  if (!scenario.preparations.empty()) {
    const CheckReport structure = check_scenario_structure(scenario, cfg, tol);
    report["structure_check"] = io::check_report_to_json(structure);
    all_pass = all_pass && structure.pass;
  }
  if (scenario.parties.size() == 2) {
    bool two_by_two = true;
    for (const Party& p : scenario.parties)
      if (p.settings.size() != 2 || p.settings[0].outcomes.size() != 2 ||
          p.settings[1].outcomes.size() != 2)
        two_by_two = false;
    if (two_by_two) {
      report["chsh_lqt"] = chsh_value(lqt);
      report["chsh_qt"] = chsh_value(qt);
    }
  }
  report["all_pass"] = all_pass;

  if (format == "csv")
    emit(io::tables_to_csv(lqt, qt), out_path);
  else
    emit(report.dump(2), out_path);
  return all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_tomography(const std::string& config_path, const std::string& system_spec,
                   const std::string& out_path) {
  const LatentConfig cfg = io::load_config(config_path);
  const SystemString system = parse_system(system_spec, cfg);
  const TomographySpan span = tomography_span(system, cfg);

  io::json report{{"command", "tomography"},
                  {"config", config_path},
                  {"system", system.str()},
                  {"product_span_dim", span.product_span_dim},
                  {"ambient_dim_sq", span.ambient_dim_sq},
                  {"deficit", span.deficit()}};
  if (system.length() == 2) {
    const TomographyWitness w = tomography_violation_witness(system, cfg);
    if (w.exists) {
      report["witness"] = io::json{
          {"note", w.note},
          {"state1", io::matrix_to_json(w.state1)},
          {"state2", io::matrix_to_json(w.state2)},
          {"product_stat_deviation", w.product_stat_deviation},
          {"success_prob", w.success_prob}};
    } else {
      report["witness"] = nullptr;
      report["witness_note"] = w.note;
    }
  } else {
    report["witness"] = nullptr;
    report["witness_note"] = "witness construction reports on two-subsystem splits";
  }
  emit(report.dump(2), out_path);
  return kExitPass;
}

int cmd_compose(const std::string& config_path, const std::string& input_path,
                const std::string& out_path) {
  const LatentConfig cfg = io::load_config(config_path);
  std::ifstream in(input_path);
  if (!in) throw std::invalid_argument("cannot open " + input_path);
  io::json j;
  in >> j;

  const std::string kind = j.at("kind").get<std::string>();
  io::json report{{"command", "compose"}, {"kind", kind}};
  if (kind == "states") {
    std::vector<LqtState> parts;
    for (const io::json& c : j.at("parts"))
      parts.push_back(make_state(io::system_from_json(c.at("system"), cfg),
                                 io::matrix_from_json(c.at("matrix")), cfg));
    const LqtState composed = compose_states(parts, cfg);
    report["system"] = composed.system.str();
    report["operator"] = io::matrix_to_json(composed.op);
  } else if (kind == "effects") {
    std::vector<LqtEffect> parts;
    for (const io::json& c : j.at("parts"))
      parts.push_back(make_effect(io::system_from_json(c.at("system"), cfg),
                                  io::matrix_from_json(c.at("matrix")), cfg));
    const LqtEffect composed = compose_effects(parts, cfg);
    report["system"] = composed.system.str();
    report["operator"] = io::matrix_to_json(composed.op);
  } else {
    throw std::invalid_argument("kind must be 'states' or 'effects'");
  }
  emit(report.dump(2), out_path);
  return kExitPass;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"latent-composite quantum theory simulator"};
  app.require_subcommand(1);

  std::string config_path, scenario_path, out_path, system_spec, input_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  int trials = 100;
  double tol = 0.0;

  CLI::App* verify = app.add_subcommand("verify", "run the law-check suite");
  verify->add_option("--config", config_path)->required();
  verify->add_option("--seed", seed);
  verify->add_option("--trials", trials);
  verify->add_option("--tol", tol);
  verify->add_option("--out", out_path);

  CLI::App* bell = app.add_subcommand("bell", "evaluate a correlation scenario");
  bell->add_option("--config", config_path)->required();
  bell->add_option("--scenario", scenario_path)->required();
  bell->add_option("--seed", seed);
  bell->add_option("--tol", tol);
  bell->add_option("--out", out_path);
  bell->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  CLI::App* tomo = app.add_subcommand("tomography", "span and witness report");
  tomo->add_option("--config", config_path)->required();
  tomo->add_option("--system", system_spec)->required();
  tomo->add_option("--out", out_path);

  CLI::App* compose = app.add_subcommand("compose", "compose state/effect literals");
  compose->add_option("--config", config_path)->required();
  compose->add_option("--input", input_path)->required();
  compose->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    if (verify->parsed())
      return cmd_verify(config_path, seed, trials, tol, out_path);
    if (bell->parsed())
      return cmd_bell(config_path, scenario_path, seed, tol, out_path, format);
    if (tomo->parsed()) return cmd_tomography(config_path, system_spec, out_path);
    if (compose->parsed()) return cmd_compose(config_path, input_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace latentq::cli
