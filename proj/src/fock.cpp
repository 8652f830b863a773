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

#include "dioph/fock.hpp"

#include <cmath>
#include <ostream>

#include "dioph/error.hpp"

namespace dioph {

namespace {

Error fock_error(const std::string &what) {
  return Error(ErrorKind::Precondition, "fockspace", what);
}

void require_mode(const FockSpace &space, std::size_t mode) {
  if (mode >= space.modes())
    throw fock_error("mode " + std::to_string(mode) + " out of range for " +
                     std::to_string(space.modes()) + "-mode space");
}

// Builds an operator that acts on one mode through a single-mode rule
// f(n) -> (n', value) and as the identity elsewhere.
template <typename Rule>
OperatorMatrix single_mode_operator(const FockSpace &space, std::size_t mode,
                                    Rule rule) {
  require_mode(space, mode);
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(space.dim());
  const auto stride = space.stride(mode);
  for (std::size_t col = 0; col < space.dim(); ++col) {
    const int n = space.occupation(col, mode);
    const auto [target, value] = rule(n);
    if (target < 0 || target >= space.cutoff(mode) || value == 0.0) continue;
    const auto row = col + static_cast<std::size_t>(target) * stride -
                     static_cast<std::size_t>(n) * stride;
    triplets.emplace_back(static_cast<int>(row), static_cast<int>(col),
                          Complex(value, 0.0));
  }
  SparseMatrix m(static_cast<Eigen::Index>(space.dim()),
                 static_cast<Eigen::Index>(space.dim()));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return OperatorMatrix(space, std::move(m));
}

}  // namespace

// ---------------------------------------------------------------------------
// FockSpace

FockSpace::FockSpace(std::vector<int> cutoffs) : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty()) throw fock_error("a Fock space needs at least one mode");
  strides_.assign(cutoffs_.size(), 1);
  dim_ = 1;
  for (std::size_t i = cutoffs_.size(); i-- > 0;) {
    if (cutoffs_[i] < 2)
      throw fock_error("cutoff of mode " + std::to_string(i) +
                       " must be at least 2, got " + std::to_string(cutoffs_[i]));
    strides_[i] = dim_;
    dim_ *= static_cast<std::size_t>(cutoffs_[i]);
    if (dim_ > kMaxDim)
      throw Error(ErrorKind::Budget, "fockspace",
                  "dimension exceeds " + std::to_string(kMaxDim));
  }
}

std::size_t FockSpace::index(std::span<const int> occupation) const {
  if (occupation.size() != cutoffs_.size())
    throw fock_error("occupation tuple has wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < cutoffs_.size(); ++i) {
    if (occupation[i] < 0 || occupation[i] >= cutoffs_[i])
      throw fock_error("occupation " + std::to_string(occupation[i]) +
                       " outside cutoff of mode " + std::to_string(i));
    idx += static_cast<std::size_t>(occupation[i]) * strides_[i];
  }
  return idx;
}

Occupation FockSpace::occupation(std::size_t index) const {
  if (index >= dim_) throw fock_error("flat index out of range");
  Occupation occ(cutoffs_.size());
  for (std::size_t i = 0; i < cutoffs_.size(); ++i) occ[i] = occupation(index, i);
  return occ;
}

// ---------------------------------------------------------------------------
// QuantumState

QuantumState::QuantumState(FockSpace space, Eigen::VectorXcd amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim())
    throw fock_error("amplitude vector length does not match space dimension");
}

QuantumState QuantumState::basis(const FockSpace &space,
                                 std::span<const int> occupation) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dim()));
  v(static_cast<Eigen::Index>(space.index(occupation))) = 1.0;
  return QuantumState(space, std::move(v));
}

void QuantumState::normalize() {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(ErrorKind::Numerical, "fockspace", "cannot normalize a zero or non-finite state");
  amplitudes_ /= n;
}

Eigen::VectorXd QuantumState::probabilities() const {
  return amplitudes_.cwiseAbs2();
}

Complex QuantumState::overlap(const QuantumState &other) const {
  if (!(space_ == other.space_)) throw fock_error("states live in different spaces");
  return amplitudes_.dot(other.amplitudes_);
}

// ---------------------------------------------------------------------------
// OperatorMatrix

OperatorMatrix::OperatorMatrix(FockSpace space, SparseMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw fock_error("operator shape does not match space dimension");
  matrix_.makeCompressed();
}

OperatorMatrix OperatorMatrix::identity(const FockSpace &space) {
  SparseMatrix m(static_cast<Eigen::Index>(space.dim()),
                 static_cast<Eigen::Index>(space.dim()));
  m.setIdentity();
  return OperatorMatrix(space, std::move(m));
}

OperatorMatrix OperatorMatrix::diagonal(const FockSpace &space,
                                        const Eigen::VectorXd &entries) {
  if (static_cast<std::size_t>(entries.size()) != space.dim())
    throw fock_error("diagonal length does not match space dimension");
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(space.dim());
  for (Eigen::Index i = 0; i < entries.size(); ++i)
    triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), Complex(entries(i), 0.0));
  SparseMatrix m(entries.size(), entries.size());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return OperatorMatrix(space, std::move(m));
}

void OperatorMatrix::require_same_space(const FockSpace &other) const {
  if (!(space_ == other)) throw fock_error("operands live in different spaces");
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(space_, SparseMatrix(matrix_.adjoint()));
}

double OperatorMatrix::hermiticity_defect() const {
  const SparseMatrix diff = matrix_ - SparseMatrix(matrix_.adjoint());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

double OperatorMatrix::max_abs() const {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix &rhs) const {
  require_same_space(rhs.space_);
  return OperatorMatrix(space_, SparseMatrix(matrix_ + rhs.matrix_));
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix &rhs) const {
  require_same_space(rhs.space_);
  return OperatorMatrix(space_, SparseMatrix(matrix_ - rhs.matrix_));
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix &rhs) const {
  require_same_space(rhs.space_);
  return OperatorMatrix(space_, SparseMatrix(matrix_ * rhs.matrix_));
}

OperatorMatrix OperatorMatrix::operator*(Complex scalar) const {
  return OperatorMatrix(space_, SparseMatrix(matrix_ * scalar));
}

QuantumState OperatorMatrix::apply(const QuantumState &state) const {
  require_same_space(state.space());
  return QuantumState(space_, matrix_ * state.amplitudes());
}

Complex OperatorMatrix::expectation(const QuantumState &state) const {
  require_same_space(state.space());
  return state.amplitudes().dot(matrix_ * state.amplitudes());
}

void OperatorMatrix::write_coo(std::ostream &out) const {
  out << "# dim " << space_.dim() << " nnz " << matrix_.nonZeros() << '\n';
  const auto old = out.precision(17);
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it)
      out << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' '
          << it.value().imag() << '\n';
  out.precision(old);
}

// ---------------------------------------------------------------------------
// Ladder operators and states

OperatorMatrix annihilation(const FockSpace &space, std::size_t mode) {
  return single_mode_operator(space, mode, [](int n) {
    return std::pair{n - 1, std::sqrt(static_cast<double>(n))};
  });
}

OperatorMatrix creation(const FockSpace &space, std::size_t mode) {
  return single_mode_operator(space, mode, [](int n) {
    return std::pair{n + 1, std::sqrt(static_cast<double>(n + 1))};
  });
}

OperatorMatrix number_operator(const FockSpace &space, std::size_t mode) {
  return single_mode_operator(space, mode, [](int n) {
    return std::pair{n, static_cast<double>(n)};
  });
}

QuantumState coherent_state(const FockSpace &space,
                            std::span<const Complex> alphas) {
  if (alphas.size() != space.modes())
    throw fock_error("need one displacement per mode");

  // Per-mode truncated amplitudes; log-gamma keeps n! finite at large n.
  std::vector<Eigen::VectorXcd> factors;
  double retained = 1.0;
  for (std::size_t i = 0; i < space.modes(); ++i) {
    const Complex alpha = alphas[i];
    const double r = std::abs(alpha);
    const double phase = std::arg(alpha);
    const int cutoff = space.cutoff(i);
    Eigen::VectorXcd f(cutoff);
    for (int n = 0; n < cutoff; ++n) {
      if (r == 0.0) {
        f(n) = n == 0 ? 1.0 : 0.0;
        continue;
      }
      const double log_mag = -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
      f(n) = std::polar(std::exp(log_mag), n * phase);
    }
    retained *= f.squaredNorm();
    factors.push_back(std::move(f));
  }
  const double tail = 1.0 - retained;
  if (tail > kCoherentTailTolerance)
    throw Error(ErrorKind::Precondition, "fockspace",
                "coherent state tail weight " + std::to_string(tail) +
                    " exceeds " + std::to_string(kCoherentTailTolerance) +
                    "; raise the cutoff");

  Eigen::VectorXcd amps(static_cast<Eigen::Index>(space.dim()));
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    Complex a = 1.0;
    for (std::size_t i = 0; i < space.modes(); ++i) a *= factors[i](space.occupation(idx, i));
    amps(static_cast<Eigen::Index>(idx)) = a;
  }
  QuantumState state(space, std::move(amps));
  state.normalize();
  return state;
}

CommutatorDefect commutator_defect(const FockSpace &space, std::size_t mode) {
  const auto a = annihilation(space, mode);
  const auto ad = creation(space, mode);
  const SparseMatrix c =
      (a * ad - ad * a - OperatorMatrix::identity(space)).matrix();
  CommutatorDefect out;
  const int top = space.cutoff(mode) - 1;
  for (Eigen::Index row = 0; row < c.outerSize(); ++row) {
    const bool boundary = space.occupation(static_cast<std::size_t>(row), mode) == top;
    for (SparseMatrix::InnerIterator it(c, row); it; ++it) {
      auto &slot = boundary ? out.boundary : out.interior;
      slot = std::max(slot, std::abs(it.value()));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

void to_json(nlohmann::json &j, const FockSpace &space) {
  j = {{"cutoffs", space.cutoffs()}};
}

void to_json(nlohmann::json &j, const QuantumState &state) {
  auto amps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i)
    amps.push_back({state.amplitudes()(i).real(), state.amplitudes()(i).imag()});
  j = {{"space", state.space()}, {"amplitudes", amps}};
}

QuantumState state_from_json(const nlohmann::json &j) {
  try {
    FockSpace space(j.at("space").at("cutoffs").get<std::vector<int>>());
    const auto &amps = j.at("amplitudes");
    if (amps.size() != space.dim())
      throw fock_error("amplitude count does not match space dimension");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(space.dim()));
    for (std::size_t i = 0; i < amps.size(); ++i)
      v(static_cast<Eigen::Index>(i)) = Complex(amps[i].at(0).get<double>(), amps[i].at(1).get<double>());
    return QuantumState(std::move(space), std::move(v));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Config, "fockspace", std::string("malformed state JSON: ") + e.what());
  }
}

}  // namespace dioph
