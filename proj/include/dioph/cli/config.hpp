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

#ifndef DIOPH_CLI_CONFIG_HPP
#define DIOPH_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dioph/hamiltonian.hpp"
#include "dioph/stochastic.hpp"
#include "json.hpp"

namespace dioph::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char *kArtifactVersion = "0.1.0";

struct SpectralConfig {
  bool enabled = true;
  std::size_t grid_points = 21;
  std::size_t levels = kDefaultFlowLevels;
};

struct StabilityConfig {
  std::vector<int> cutoffs{8, 12, 16};
  double total_time = 40.0;
};

struct CltConfig {
  std::vector<double> sigmas{0.2};
  stochastic::Distribution distribution = stochastic::Distribution::Gaussian;
  std::vector<std::size_t> samples{100, 400};
  std::size_t batches = 100;
  stochastic::Engine engine = stochastic::Engine::Oracle;
  double total_time = 20.0;
};

struct HubbardConfig {
  std::string mode = "sweep";  // sweep | lattice
  int filling = 1;
  int coordination = 2;
  std::vector<double> ratios{2, 3, 4, 5, 5.5, 6.5, 7, 8, 9, 9.5, 10.5, 11, 12, 15, 20, 50, 100, 1000};
  int sites = 2;
  int atoms = 2;
  double tunneling = 1.0;
  double interaction = 1.0;
  int cutoff = 24;
  int max_iterations = 20000;
};

struct OracleConfig {
  std::vector<int> box;  // empty: cutoffs - 1
  double budget = 1e8;
};

// Everything a run needs. A report embeds the RunConfig that produced it
// (after defaults and flag overrides are applied).
struct RunConfig {
  std::string equation;
  // One per variable, or a single value for every variable; empty means 16.
  std::vector<int> cutoffs;
  std::vector<Complex> alphas;  // empty: 1 on every mode
  std::optional<double> epsilon;  // nullopt: default_epsilon()
  std::vector<double> weights;    // empty: primes
  ScheduleShape shape = ScheduleShape::Linear;
  std::vector<double> time_ladder{10, 20, 40, 80};
  bool full_ladder = false;
  double dt = 0.0;
  double step_scale = 0.01;
  double threshold = 0.5;
  double g_theta = 1.0;
  std::uint64_t seed = 1;
  bool epsilon_series = true;
  SpectralConfig spectral;
  StabilityConfig stability;
  CltConfig clt;
  HubbardConfig hubbard;
  OracleConfig oracle;
};

// Strict reader: unknown keys and wrong types are config errors.
RunConfig config_from_json(const nlohmann::json &j);
RunConfig load_config(const std::string &path);
void to_json(nlohmann::json &j, const RunConfig &c);

// Range checks shared by every subcommand; throws ErrorKind::Config.
void validate(const RunConfig &c);

// Cutoffs for k variables: empty means 16 each, a single value is broadcast.
std::vector<int> resolve_cutoffs(const RunConfig &c, std::size_t k);

// Parsed polynomial, resolved cutoffs/alphas/weights/epsilon.
ProblemInstance build_instance(const RunConfig &c);
ProblemInstance build_instance(const RunConfig &c, double epsilon);

}  // namespace dioph::cli

#endif  // DIOPH_CLI_CONFIG_HPP
