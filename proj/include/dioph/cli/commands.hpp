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

#ifndef DIOPH_CLI_COMMANDS_HPP
#define DIOPH_CLI_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dioph/adiabatic.hpp"
#include "dioph/cli/config.hpp"
#include "dioph/verdict.hpp"
#include "json.hpp"

namespace dioph::cli {

struct LadderStep {
  double total_time = 0.0;
  Identification identification;
  std::size_t steps = 0;
  double dt = 0.0;
  double norm_drift = 0.0;
  double accumulated_drift = 0.0;
};

struct EpsilonRun {
  double epsilon = 0.0;
  Identification identification;
};

struct SolveResult {
  std::vector<LadderStep> ladder;
  // Probability of the final top outcome at every ladder time that ran.
  std::vector<double> final_outcome_probability;
  Verdict verdict;
  BoundDiagnostic bound;
  std::optional<SpectralFlow> spectral;
  std::vector<EpsilonRun> epsilon_series;
  // Same top outcome and identification across the epsilon series. When
  // false, a decisive verdict is downgraded to inconclusive.
  bool epsilon_stable = true;
  CrossCheck cross_check;
};

SolveResult run_solve(const RunConfig &c);
nlohmann::json to_json(const SolveResult &r);

// Report envelope shared by every subcommand.
nlohmann::json envelope(const std::string &command, const RunConfig &c);

// Each command returns the JSON report; CSV output, when produced, goes to csv.
nlohmann::json command_solve(const RunConfig &c);
nlohmann::json command_flow(const RunConfig &c, std::ostream *csv);
nlohmann::json command_clt(const RunConfig &c, std::ostream *csv);
nlohmann::json command_hubbard(const RunConfig &c, std::ostream *csv);
nlohmann::json command_oracle(const RunConfig &c);
nlohmann::json command_stability(const RunConfig &c);

}  // namespace dioph::cli

#endif  // DIOPH_CLI_COMMANDS_HPP
