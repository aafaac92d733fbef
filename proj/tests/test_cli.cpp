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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "latentq/cli.hpp"

namespace {

const std::string kConfigDir = LATENTQ_CONFIG_DIR;

int run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv = {"latentq"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return latentq::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/latentq_test_") + name;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(temp_path(name)) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("verify passes on the shipped theories") {
  // Few trials keep this test quick; the acceptance suite runs the full count.
  CHECK(run_cli({"verify", "--config", kConfigDir + "/qt.json", "--trials", "6",
                 "--out", temp_path("qt.json")}) == 0);
  CHECK(run_cli({"verify", "--config", kConfigDir + "/simplest_lqt.json",
                 "--trials", "6", "--seed", "7",
                 "--out", temp_path("lqt.json")}) == 0);

  const auto report = nlohmann::json::parse(slurp(temp_path("lqt.json")));
  CHECK(report.at("all_pass").get<bool>());
  CHECK(report.at("checks").size() == 9);
  CHECK(report.at("seed").get<int>() == 7);
  std::remove(temp_path("qt.json").c_str());
  std::remove(temp_path("lqt.json").c_str());
}

TEST_CASE("verify fails on the deliberately broken theories") {
  for (const char* name : {"broken_star.json", "broken_seq.json",
                           "broken_swap.json"}) {
    CAPTURE(name);
    CHECK(run_cli({"verify", "--config", kConfigDir + "/" + name, "--trials",
                   "16", "--out", temp_path("broken.json")}) == 1);
  }
  std::remove(temp_path("broken.json").c_str());
}

TEST_CASE("reports are byte-identical for a fixed seed") {
  const std::string out1 = temp_path("rep1.json");
  const std::string out2 = temp_path("rep2.json");
  for (const std::string& out : {out1, out2})
    REQUIRE(run_cli({"verify", "--config", kConfigDir + "/simplest_lqt.json",
                     "--trials", "5", "--seed", "123", "--out", out}) == 0);
  CHECK(slurp(out1) == slurp(out2));
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("malformed input exits with code 2") {
  TempFile bad_json("bad.json", "{ not json");
  CHECK(run_cli({"verify", "--config", bad_json.path}) == 2);

  TempFile unknown_key("unknown.json",
                       R"({"labels":[{"name":"Q","dim":2}],"latent":2})");
  CHECK(run_cli({"verify", "--config", unknown_key.path}) == 2);

  CHECK(run_cli({"verify", "--config", "/nonexistent/x.json"}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);
  CHECK(run_cli({"bell", "--config", kConfigDir + "/qt.json", "--scenario",
                 "/nonexistent/s.json"}) == 2);

  TempFile bad_scenario(
      "bad_scenario.json",
      R"({"parties":[{"system":["Q"],"settings":[{"projective_angle":0}]}],)"
      R"("shared_state":{"embed_qt":[[1,0],[0,0]]},"extra":1})");
  CHECK(run_cli({"bell", "--config", kConfigDir + "/qt.json", "--scenario",
                 bad_scenario.path}) == 2);
}

TEST_CASE("the optimal-angle scenario hits the quantum maximum") {
  const std::string out = temp_path("chsh.json");
  CHECK(run_cli({"bell", "--config", kConfigDir + "/simplest_lqt.json",
                 "--scenario", kConfigDir + "/scenarios/chsh.json", "--out",
                 out}) == 0);
  const auto report = nlohmann::json::parse(slurp(out));
  CHECK(report.at("all_pass").get<bool>());
  CHECK(report.at("max_deviation").get<double>() < 1e-9);
  CHECK(report.at("chsh_lqt").get<double>() ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-6));
  std::remove(out.c_str());
}

TEST_CASE("csv output has one row per cell") {
  const std::string out = temp_path("chsh.csv");
  CHECK(run_cli({"bell", "--config", kConfigDir + "/simplest_lqt.json",
                 "--scenario", kConfigDir + "/scenarios/chsh.json", "--format",
                 "csv", "--out", out}) == 0);
  const std::string csv = slurp(out);
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 17);  // header plus 16 cells
  CHECK(csv.rfind("setting_1,setting_2,outcome_1,outcome_2,p_lqt,p_qt", 0) == 0);
  std::remove(out.c_str());
}

TEST_CASE("single-party and structured scenarios work end to end") {
  CHECK(run_cli({"bell", "--config", kConfigDir + "/simplest_lqt.json",
                 "--scenario", kConfigDir + "/scenarios/single_party.json",
                 "--out", temp_path("sp.json")}) == 0);
  CHECK(run_cli({"bell", "--config", kConfigDir + "/simplest_lqt.json",
                 "--scenario", kConfigDir + "/scenarios/crossed_partition.json",
                 "--out", temp_path("cp.json")}) == 0);
  const auto report = nlohmann::json::parse(slurp(temp_path("cp.json")));
  CHECK(report.at("structure_check").at("pass").get<bool>());
  std::remove(temp_path("sp.json").c_str());
  std::remove(temp_path("cp.json").c_str());
}

TEST_CASE("tomography reports span, deficit, and witness") {
  const std::string out = temp_path("tomo.json");
  CHECK(run_cli({"tomography", "--config", kConfigDir + "/simplest_lqt.json",
                 "--system", "Q,Q", "--out", out}) == 0);
  auto report = nlohmann::json::parse(slurp(out));
  CHECK(report.at("product_span_dim").get<int>() == 16);
  CHECK(report.at("ambient_dim_sq").get<int>() == 64);
  CHECK(report.at("deficit").get<int>() == 48);
  CHECK(report.at("witness").at("success_prob").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));

  CHECK(run_cli({"tomography", "--config", kConfigDir + "/qt.json", "--system",
                 "Q,Q", "--out", out}) == 0);
  report = nlohmann::json::parse(slurp(out));
  CHECK(report.at("deficit").get<int>() == 0);
  CHECK(report.at("witness").is_null());

  CHECK(run_cli({"tomography", "--config", kConfigDir + "/simplest_lqt.json",
                 "--system", "Q,Q,Q", "--out", out}) == 0);
  report = nlohmann::json::parse(slurp(out));
  CHECK(report.at("deficit").get<int>() == 4096 - 64);

  CHECK(run_cli({"tomography", "--config", kConfigDir + "/simplest_lqt.json",
                 "--system", "Q,Z", "--out", out}) == 2);
  std::remove(out.c_str());
}

TEST_CASE("compose emits the joint operator") {
  const std::string out = temp_path("compose.json");
  CHECK(run_cli({"compose", "--config", kConfigDir + "/simplest_lqt.json",
                 "--input", kConfigDir + "/compose_states_example.json",
                 "--out", out}) == 0);
  const auto report = nlohmann::json::parse(slurp(out));
  CHECK(report.at("system").get<std::string>() == "Q Q");
  CHECK(report.at("operator").size() == 8);
  // Leading entry: xi(0,0) * rho1(0,0) * rho2(0,0) = 1 * 1 * 0.5.
  CHECK(report.at("operator")[0][0][0].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
  std::remove(out.c_str());
}

TEST_CASE("compose also handles effect literals") {
  TempFile input("effects.json",
                 R"({"kind":"effects","parts":[)"
                 R"({"system":["Q"],"matrix":[[1,0],[0,0]]},)"
                 R"({"system":["Q"],"matrix":[[0,0],[0,1]]}]})");
  const std::string out = temp_path("compose_eff.json");
  CHECK(run_cli({"compose", "--config", kConfigDir + "/simplest_lqt.json",
                 "--input", input.path, "--out", out}) == 0);
  const auto report = nlohmann::json::parse(slurp(out));
  // Identity on the link sector: entry (1,1) of the 8x8 operator is 1.
  CHECK(report.at("operator")[1][1][0].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.at("operator")[0][0][0].get<double>() ==
        doctest::Approx(0.0).epsilon(1e-12));
  std::remove(out.c_str());
}

TEST_CASE("environment tolerance fallback is honored") {
  setenv("LATENTQ_TOL", "10.0", 1);
  // With an absurdly loose tolerance even a broken theory "passes".
  CHECK(run_cli({"verify", "--config", kConfigDir + "/broken_seq.json",
                 "--trials", "4", "--out", temp_path("loose.json")}) == 0);
  unsetenv("LATENTQ_TOL");
  CHECK(run_cli({"verify", "--config", kConfigDir + "/broken_seq.json",
                 "--trials", "16", "--out", temp_path("loose.json")}) == 1);
  std::remove(temp_path("loose.json").c_str());
}
