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

#ifndef DIOPH_ADIABATIC_HPP
#define DIOPH_ADIABATIC_HPP

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "dioph/hamiltonian.hpp"
#include "dioph/verdict.hpp"

namespace dioph {

struct EvolveOptions {
  // Fixed step; 0 picks min(T/1000, step_scale / max|diag H|).
  double dt = 0.0;
  double step_scale = 0.01;
  // A run whose largest per-step norm drift exceeds this is a failure.
  double max_norm_drift = 1e-6;
  // s values at which |<g(s)|psi(s)>|^2 is recorded (dense diagonalization
  // per sample, so keep the list short).
  std::vector<double> trace_points;
};

struct EvolutionResult {
  QuantumState final_state;
  // Largest |1 - ||psi||| seen before the per-step renormalization.
  double norm_drift = 0.0;
  // Sum of per-step drifts over the run.
  double accumulated_drift = 0.0;
  std::size_t steps = 0;
  double dt = 0.0;
  std::vector<std::pair<double, double>> ground_overlap_trace;
};

double automatic_step(const InterpolatedHamiltonian &h, double step_scale = 0.01);

// Integrates i d|psi>/dt = H(t/T)|psi> with classical fixed-step RK4 and
// renormalizes after every step.
EvolutionResult evolve(const InterpolatedHamiltonian &h, QuantumState initial,
                       const EvolveOptions &options = {});
// Starts from initial_ground_state(inst).
EvolutionResult evolve(const ProblemInstance &inst, const Schedule &schedule,
                       const EvolveOptions &options = {});

inline constexpr std::size_t kDefaultFlowLevels = 6;
// Dense diagonalization limit for spectral work.
inline constexpr std::size_t kMaxDenseDim = 4096;

struct SpectralFlow {
  std::vector<double> grid;
  // levels[g] holds the lowest eigenvalues at grid[g], ascending.
  std::vector<std::vector<double>> levels;
  // E1 - E0 at each grid point.
  std::vector<double> gaps;
  // Minimum of gaps over the interior points (endpoints excluded).
  double min_gap = 0.0;
  double min_gap_s = 0.0;
  double initial_gap = 0.0;
  double final_gap = 0.0;
};

SpectralFlow spectral_flow(const ProblemInstance &inst, const Schedule &schedule,
                           std::size_t grid_points,
                           std::size_t levels = kDefaultFlowLevels);

// Writes "s,E0,...,E{L-1},gap" rows; an extra "ground_overlap" column is
// filled from trace when trace is non-empty and aligned with the grid.
void write_flow_csv(std::ostream &out, const SpectralFlow &flow,
                    std::span<const std::pair<double, double>> trace = {});

enum class BoundStatus { Ok, DegenerateStart };

// Computation-time bound 4 < g T dE, where dE is the spread of the initial
// state measured with the final Hamiltonian.
struct BoundDiagnostic {
  double delta_ie = 0.0;
  double mean_energy = 0.0;
  double g_theta = 1.0;
  double total_time = 0.0;
  double product = 0.0;
  bool satisfied = false;
  // DegenerateStart: the initial state is already an H_P eigenstate
  // (dE == 0); reported as its own status, not as a violation.
  BoundStatus status = BoundStatus::Ok;
};

BoundDiagnostic bound_diagnostic(const QuantumState &initial,
                                 const Eigen::VectorXd &problem_diagonal,
                                 double total_time, double g_theta = 1.0);
BoundDiagnostic bound_diagnostic(const ProblemInstance &inst,
                                 const Schedule &schedule, double g_theta = 1.0);

struct StabilityRow {
  int cutoff = 0;
  Identification identification;
};

struct StabilityTable {
  Occupation expected_witness;
  std::vector<StabilityRow> rows;
  // Largest top-probability change between consecutive ladder entries.
  double max_difference = 0.0;
  bool same_outcome = true;
};

// Re-runs the base instance with every mode cut at each ladder value (the
// base cutoffs are ignored). The smallest cutoff must exceed every component
// of the expected witness by at least 2.
StabilityTable truncation_stability(const ProblemInstance &base,
                                    const Schedule &schedule,
                                    std::span<const int> cutoff_ladder,
                                    const EvolveOptions &options = {},
                                    double threshold = kDefaultThreshold);

// Minimizer of D^2 that the symmetry-breaking term selects (the first one
// when epsilon is 0).
Occupation preferred_minimizer(const BoxSearchResult &result,
                               const SymmetryBreaking &sb);

std::string to_string(BoundStatus status);
void to_json(nlohmann::json &j, const EvolutionResult &r);
void to_json(nlohmann::json &j, const SpectralFlow &f);
void to_json(nlohmann::json &j, const BoundDiagnostic &b);
void to_json(nlohmann::json &j, const StabilityTable &t);

}  // namespace dioph

#endif  // DIOPH_ADIABATIC_HPP
