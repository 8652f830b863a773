// Copyright 2026 The dioph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dioph/cli/commands.hpp"
#include "dioph/error.hpp"
#include "doctest.h"

namespace cli = dioph::cli;
using nlohmann::json;

namespace {

int run(const std::string &args) {
  const std::string cmd = std::string(DIOPH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string &name) {
  const auto dir = std::filesystem::temp_directory_path() / "dioph_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("config defaults") {
  const auto c = cli::config_from_json(json::object());
  CHECK(c.time_ladder == std::vector<double>{10, 20, 40, 80});
  CHECK(c.threshold == 0.5);
  CHECK(c.spectral.grid_points == 21);
  CHECK(c.spectral.levels == 6);
  CHECK_FALSE(c.epsilon);
}

TEST_CASE("config reads nested blocks") {
  const auto c = cli::config_from_json(json::parse(R"({
    "equation": "x^2 - 2*y^2", "cutoffs": 8, "alphas": [1, [0.5, 0.25]],
    "epsilon": null, "schedule": {"shape": "smoothstep", "T": 30, "full_ladder": true},
    "integrator": {"dt": 0.001, "step_scale": 0.02}, "seed": 9,
    "clt": {"sigma": [0, 0.2], "distribution": "uniform", "samples": [50], "batches": 30, "engine": "adiabatic"},
    "hubbard": {"mode": "lattice", "m": 2, "z": 1, "J": 0.5, "U": 3},
    "oracle": {"box": 5}
  })"));
  CHECK(c.cutoffs == std::vector<int>{8});
  REQUIRE(c.alphas.size() == 2);
  CHECK(c.alphas[1] == dioph::Complex(0.5, 0.25));
  CHECK(c.shape == dioph::ScheduleShape::Smoothstep);
  CHECK(c.time_ladder == std::vector<double>{30});
  CHECK(c.full_ladder);
  CHECK(c.dt == 0.001);
  CHECK(c.seed == 9);
  CHECK(c.clt.sigmas == std::vector<double>{0, 0.2});
  CHECK(c.clt.engine == dioph::stochastic::Engine::Adiabatic);
  CHECK(c.hubbard.mode == "lattice");
  CHECK(c.hubbard.interaction == 3.0);
  CHECK(c.oracle.box == std::vector<int>{5});
}

TEST_CASE("config round trips through json") {
  auto c = cli::config_from_json(json::parse(R"({"equation": "x - 3", "epsilon": 0.01,
    "alphas": [[1, 0.5]], "weights": [1]})"));
  const json once = c;
  const json twice = cli::config_from_json(once);
  CHECK(once == twice);
}

TEST_CASE("strict config keys and types") {
  CHECK_THROWS_AS(cli::config_from_json(json::parse(R"({"equaton": "x"})")), dioph::Error);
  CHECK_THROWS_AS(cli::config_from_json(json::parse(R"({"schedule": {"TT": 3}})")), dioph::Error);
  CHECK_THROWS_AS(cli::config_from_json(json::parse(R"({"seed": "one"})")), dioph::Error);
  CHECK_THROWS_AS(cli::config_from_json(json::parse(R"({"alphas": ["a"]})")), dioph::Error);
}

TEST_CASE("config validation") {
  auto bad = [](const char *text) {
    try {
      cli::validate(cli::config_from_json(json::parse(text)));
    } catch (const dioph::Error &e) {
      return e.kind() == dioph::ErrorKind::Config;
    }
    return false;
  };
  CHECK(bad(R"({"spectral": {"grid_points": 5}})"));
  CHECK(bad(R"({"schedule": {"T": [20, 10]}})"));
  CHECK(bad(R"({"schedule": {"T": -1}})"));
  CHECK(bad(R"({"threshold": 0.3})"));
  CHECK(bad(R"({"threshold": 1.0})"));
  CHECK(bad(R"({"clt": {"batches": 10}})"));
  CHECK(bad(R"({"cutoffs": [1]})"));
  CHECK(bad(R"({"hubbard": {"mode": "dmrg"}})"));
  CHECK_NOTHROW(cli::validate(cli::config_from_json(json::object())));
}

TEST_CASE("instance construction from a config") {
  auto c = cli::config_from_json(json::parse(R"({"equation": "x^2 - 2*y^2", "cutoffs": [8]})"));
  const auto inst = cli::build_instance(c);
  CHECK(inst.space().cutoffs() == std::vector<int>{8, 8});
  CHECK(inst.symmetry_break().weights == std::vector<double>{2, 3});
  CHECK(inst.symmetry_break().epsilon > 0.0);
  CHECK(cli::build_instance(c, 0.0).symmetry_break().epsilon == 0.0);
  c.cutoffs = {8, 8, 8};
  CHECK_THROWS_AS(cli::build_instance(c), dioph::Error);
  c.cutoffs = {};
  c.equation = "";
  CHECK_THROWS_AS(cli::build_instance(c), dioph::Error);
}

TEST_CASE("solve pipeline on x - 3") {
  auto c = cli::config_from_json(json::parse(R"({"equation": "x - 3"})"));
  const auto r = cli::run_solve(c);
  CHECK(r.verdict.status == dioph::VerdictStatus::Solution);
  CHECK(*r.verdict.witness == dioph::Occupation{3});
  CHECK(r.cross_check.agrees);
  CHECK(r.epsilon_series.size() == 2);
  CHECK(r.epsilon_stable);
  REQUIRE(r.spectral);
  CHECK(r.spectral->min_gap > 0.0);
  CHECK(r.bound.status == dioph::BoundStatus::Ok);
  // Stops at the first identifying rung.
  CHECK(r.ladder.back().identification.identified);
  for (std::size_t i = 0; i + 1 < r.ladder.size(); ++i) CHECK_FALSE(r.ladder[i].identification.identified);
}

TEST_CASE("report envelope") {
  auto c = cli::config_from_json(json::parse(R"({"equation": "x^2-2*y^2", "oracle": {"box": 5}})"));
  const auto j = cli::command_oracle(c);
  CHECK(j["schema_version"] == cli::kSchemaVersion);
  CHECK(j["artifact_version"] == cli::kArtifactVersion);
  CHECK(j["command"] == "oracle");
  CHECK(j["config"]["equation"] == "x^2-2*y^2");
  CHECK(j["result"]["min_value"] == 0);
  CHECK(j["result"]["minimizers"][0] == json::array({0, 0}));
}

TEST_CASE("hubbard command") {
  auto c = cli::config_from_json(json::parse(R"({"hubbard": {"ratios": [2, 4, 8, 1000]}})"));
  std::ostringstream csv;
  const auto j = cli::command_hubbard(c, &csv);
  CHECK(j["result"]["monotone"] == true);
  CHECK(j["result"]["equation"] == "x - 1");
  CHECK(csv.str().rfind("ratio,alpha_abs", 0) == 0);
  c.hubbard.mode = "lattice";
  c.hubbard.interaction = 0.0;
  const auto l = cli::command_hubbard(c, nullptr);
  CHECK(std::abs(l["result"]["energies"][0].get<double>() + 2.0) < 1e-10);
}

TEST_CASE("flow command") {
  auto c = cli::config_from_json(json::parse(R"({"equation": "x - 1"})"));
  std::ostringstream csv;
  const auto j = cli::command_flow(c, &csv);
  CHECK(j["result"]["min_gap"].get<double>() > 0.0);
  CHECK(csv.str().rfind("s,E0,", 0) == 0);
}

TEST_CASE("binary exit codes") {
  CHECK(run("oracle -e 'x^2 - 2*y^2' --box 5") == 0);
  CHECK(run("oracle -e 'x^y'") == 2);
  CHECK(run("solve -e '2x'") == 2);
  CHECK(run("flow -e 'x - 1' --grid-points 5") == 2);
  CHECK(run("oracle -e 'x - y' --box 100000 --budget 1000") == 4);
  CHECK(run("frobnicate") == 2);
  CHECK(run("") == 2);
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << R"({"equation": "x", "bogus": 1})";
  CHECK(run("oracle --config " + bad.string()) == 2);
  std::ofstream(bad) << "{not json";
  CHECK(run("oracle --config " + bad.string()) == 2);
}

TEST_CASE("binary reports are reproducible") {
  const auto a = scratch("clt_a.json");
  const auto b = scratch("clt_b.json");
  const std::string args = "clt -e 'x - 3' --samples 20 80 --batches 20 --seed 5 -o ";
  REQUIRE(run(args + a.string()) == 0);
  REQUIRE(run(args + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
  CHECK(slurp(a).find("wall_seconds") == std::string::npos);
  REQUIRE(run(args + a.string() + " --timing") == 0);
  CHECK(slurp(a).find("wall_seconds") != std::string::npos);
}

TEST_CASE("config file and flag override") {
  const auto cfg = scratch("cfg.json");
  const auto out = scratch("out.json");
  std::ofstream(cfg) << R"({"equation": "x - 7", "oracle": {"box": [9]}})";
  REQUIRE(run("oracle --config " + cfg.string() + " -o " + out.string()) == 0);
  auto j = json::parse(slurp(out));
  CHECK(j["result"]["minimizers"][0] == json::array({7}));
  REQUIRE(run("oracle --config " + cfg.string() + " -e 'x - 2' -o " + out.string()) == 0);
  j = json::parse(slurp(out));
  CHECK(j["result"]["minimizers"][0] == json::array({2}));
  CHECK(j["config"]["equation"] == "x - 2");
}
