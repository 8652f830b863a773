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

#ifndef DIOPH_FOCK_HPP
#define DIOPH_FOCK_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "json.hpp"

namespace dioph {

using Complex = std::complex<double>;
using Occupation = std::vector<int>;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// Truncated k-mode bosonic Fock space. Mode i holds occupations
// 0..cutoff(i)-1; the top level is a hard wall. Flat indices enumerate
// occupation tuples in lexicographic order (mode 0 most significant), so
// index order and tuple order agree.
class FockSpace {
 public:
  // Largest dimension this class will index.
  static constexpr std::size_t kMaxDim = std::size_t{1} << 26;

  FockSpace() = default;
  explicit FockSpace(std::vector<int> cutoffs);

  std::size_t modes() const { return cutoffs_.size(); }
  int cutoff(std::size_t mode) const { return cutoffs_.at(mode); }
  const std::vector<int> &cutoffs() const { return cutoffs_; }
  std::size_t dim() const { return dim_; }
  std::size_t stride(std::size_t mode) const { return strides_.at(mode); }

  std::size_t index(std::span<const int> occupation) const;
  Occupation occupation(std::size_t index) const;
  int occupation(std::size_t index, std::size_t mode) const {
    return static_cast<int>((index / strides_[mode]) %
                            static_cast<std::size_t>(cutoffs_[mode]));
  }

  bool operator==(const FockSpace &other) const {
    return cutoffs_ == other.cutoffs_;
  }

 private:
  std::vector<int> cutoffs_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 0;
};

class QuantumState {
 public:
  QuantumState(FockSpace space, Eigen::VectorXcd amplitudes);

  static QuantumState basis(const FockSpace &space,
                            std::span<const int> occupation);

  const FockSpace &space() const { return space_; }
  const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }
  Eigen::VectorXcd &amplitudes() { return amplitudes_; }

  double norm() const { return amplitudes_.norm(); }
  void normalize();
  Eigen::VectorXd probabilities() const;
  // <this|other>
  Complex overlap(const QuantumState &other) const;

 private:
  FockSpace space_;
  Eigen::VectorXcd amplitudes_;
};

class OperatorMatrix {
 public:
  OperatorMatrix(FockSpace space, SparseMatrix matrix);

  static OperatorMatrix identity(const FockSpace &space);
  static OperatorMatrix diagonal(const FockSpace &space,
                                 const Eigen::VectorXd &entries);

  const FockSpace &space() const { return space_; }
  const SparseMatrix &matrix() const { return matrix_; }
  std::size_t dim() const { return space_.dim(); }

  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }
  Eigen::VectorXcd diagonal_entries() const { return matrix_.diagonal(); }
  OperatorMatrix adjoint() const;
  // max |A - A^dagger| over all entries.
  double hermiticity_defect() const;
  // max |A_ij| over all entries.
  double max_abs() const;

  OperatorMatrix operator+(const OperatorMatrix &rhs) const;
  OperatorMatrix operator-(const OperatorMatrix &rhs) const;
  OperatorMatrix operator*(const OperatorMatrix &rhs) const;
  OperatorMatrix operator*(Complex scalar) const;
  QuantumState apply(const QuantumState &state) const;
  // <state|A|state>
  Complex expectation(const QuantumState &state) const;

  // One "row col re im" line per stored nonzero, preceded by a
  // "# dim <n> nnz <m>" header.
  void write_coo(std::ostream &out) const;

 private:
  void require_same_space(const FockSpace &other) const;

  FockSpace space_;
  SparseMatrix matrix_;
};

OperatorMatrix annihilation(const FockSpace &space, std::size_t mode);
OperatorMatrix creation(const FockSpace &space, std::size_t mode);
OperatorMatrix number_operator(const FockSpace &space, std::size_t mode);

// Tail weight above which a truncated coherent state is rejected.
inline constexpr double kCoherentTailTolerance = 1e-6;

// Normalized product coherent state with amplitudes
// prod_i exp(-|a_i|^2/2) a_i^n_i / sqrt(n_i!), renormalized after
// truncation. Throws if the truncated weight 1 - sum|amp|^2 exceeds
// kCoherentTailTolerance.
QuantumState coherent_state(const FockSpace &space,
                            std::span<const Complex> alphas);

struct CommutatorDefect {
  // max |[a,a^dagger] - 1| over rows whose selected-mode occupation is below
  // the top level.
  double interior = 0.0;
  // |[a,a^dagger] - 1| on the top level itself; equals the cutoff N.
  double boundary = 0.0;
};

CommutatorDefect commutator_defect(const FockSpace &space, std::size_t mode);

void to_json(nlohmann::json &j, const FockSpace &space);
// {"space": {"cutoffs": [...]}, "amplitudes": [[re, im], ...]}
void to_json(nlohmann::json &j, const QuantumState &state);
QuantumState state_from_json(const nlohmann::json &j);

}  // namespace dioph

#endif  // DIOPH_FOCK_HPP
