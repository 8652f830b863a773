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

#ifndef DIOPH_HUBBARD_HPP
#define DIOPH_HUBBARD_HPP

#include <Eigen/Sparse>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dioph/fock.hpp"
#include "dioph/polynomial.hpp"

namespace dioph::hubbard {

// H_B = -J sum_<ij> (a_i^dagger a_j + h.c.) + U sum_i n_i (n_i - m) on a 1D
// chain: a single bond for two sites, a ring for three or more, so every
// site has coordination 1 or 2 respectively.
struct LatticeModel {
  int sites = 2;
  int atoms = 2;
  double tunneling = 1.0;    // J
  double interaction = 1.0;  // U
  int filling = 1;           // m
};

// Occupation tuples with a fixed total, ordered lexicographically from
// (K, 0, ..., 0) down to (0, ..., 0, K).
class FixedNumberBasis {
 public:
  FixedNumberBasis(int sites, int atoms);

  std::size_t dim() const { return states_.size(); }
  const Occupation &state(std::size_t i) const { return states_.at(i); }
  std::optional<std::size_t> find(const Occupation &occ) const;

 private:
  std::vector<Occupation> states_;
};

// C(K + M - 1, M - 1), or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> basis_dimension(int sites, int atoms);

class Lattice {
 public:
  static constexpr std::size_t kDefaultBasisBudget = 200000;

  explicit Lattice(LatticeModel model, std::size_t basis_budget = kDefaultBasisBudget);

  const LatticeModel &model() const { return model_; }
  const FixedNumberBasis &basis() const { return basis_; }
  const std::vector<std::pair<int, int>> &bonds() const { return bonds_; }
  int coordination() const { return model_.sites == 2 ? 1 : 2; }

 private:
  LatticeModel model_;
  FixedNumberBasis basis_;
  std::vector<std::pair<int, int>> bonds_;
};

using RealSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

RealSparse build_hamiltonian(const Lattice &lattice);

// Same H_B on the tensor-product Fock space with per-site cutoff; used to
// check number conservation against the full truncated space.
OperatorMatrix build_hamiltonian_fock(const LatticeModel &model, int cutoff);
OperatorMatrix total_number(const FockSpace &space);

// Normalized (sum_i a_i^dagger)^K |0>.
Eigen::VectorXd superfluid_state(const Lattice &lattice);
// prod_i (a_i^dagger)^m |0>; requires K = m M.
Eigen::VectorXd mott_state(const Lattice &lattice);

struct LatticeSpectrum {
  std::vector<double> energies;  // lowest levels, ascending
  Eigen::VectorXd ground;
};

LatticeSpectrum diagonalize(const Lattice &lattice, std::size_t levels = 6);

struct MeanFieldOptions {
  int cutoff = 24;
  double damping = 0.5;
  int max_iterations = 500;
  double tolerance = 1e-8;
  // Throw on non-convergence instead of returning converged = false.
  bool require_convergence = true;
};

struct MeanFieldState {
  Complex alpha;
  QuantumState single_site_ground;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;  // |alpha - <a>| at the last iterate
};

// Damped fixed point alpha <- (1 - lambda) alpha + lambda <g(alpha)|a|g(alpha)>
// of the single-site Hamiltonian zJ (a^dagger - alpha*)(a - alpha) + U (n - m)^2.
MeanFieldState mean_field_solve(double tunneling, double interaction, int filling,
                                int coordination, Complex alpha0,
                                const MeanFieldOptions &options = {});

struct SweepRow {
  double ratio = 0.0;  // U / J
  double alpha_abs = 0.0;
  int iterations = 0;
  Eigen::VectorXd occupation;  // single-site ground occupation distribution
};

struct SweepTable {
  int filling = 1;
  int coordination = 2;
  std::vector<SweepRow> rows;
  // |alpha| non-increasing along the grid within kMonotoneTolerance.
  bool monotone = true;
  // First ratio with |alpha| < kMottThreshold.
  std::optional<double> transition_ratio;
};

inline constexpr double kMonotoneTolerance = 1e-6;
inline constexpr double kMottThreshold = 1e-3;

// Options used by sweeps: points near the transition converge slowly.
MeanFieldOptions sweep_options();

// J = 1, U = ratio at every grid point, each started from alpha0 = 1.
SweepTable sweep_transition(int filling, int coordination, std::span<const double> ratios,
                            const MeanFieldOptions &options = sweep_options());

// x - m, whose solution is the Mott occupation.
Polynomial as_diophantine(int filling);

void to_json(nlohmann::json &j, const LatticeModel &m);
void to_json(nlohmann::json &j, const SweepTable &t);
void write_sweep_csv(std::ostream &out, const SweepTable &t);

}  // namespace dioph::hubbard

#endif  // DIOPH_HUBBARD_HPP
