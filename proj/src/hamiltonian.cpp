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

#include "dioph/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>

#include "dioph/error.hpp"

namespace dioph {

namespace {

Error ham_error(const std::string &what) {
  return Error(ErrorKind::Precondition, "hamiltonian", what);
}

}  // namespace

std::string to_string(ScheduleShape shape) {
  return shape == ScheduleShape::Linear ? "linear" : "smoothstep";
}

ScheduleShape schedule_shape_from_string(const std::string &name) {
  if (name == "linear") return ScheduleShape::Linear;
  if (name == "smoothstep") return ScheduleShape::Smoothstep;
  throw Error(ErrorKind::Config, "hamiltonian", "unknown schedule shape '" + name + "'");
}

Schedule::Schedule(double total_time, ScheduleShape shape)
    : total_time_(total_time), shape_(shape) {
  if (!(total_time > 0.0) || !std::isfinite(total_time))
    throw ham_error("total time must be positive and finite");
}

double Schedule::utilde(double s) const {
  s = std::clamp(s, 0.0, 1.0);
  switch (shape_) {
    case ScheduleShape::Linear:
      return s;
    case ScheduleShape::Smoothstep:
      return s * s * (3.0 - 2.0 * s);
  }
  return s;
}

std::vector<double> prime_weights(std::size_t count) {
  std::vector<double> primes;
  for (int candidate = 2; primes.size() < count; ++candidate) {
    bool prime = true;
    for (int d = 2; d * d <= candidate && prime; ++d) prime = candidate % d != 0;
    if (prime) primes.push_back(candidate);
  }
  return primes;
}

std::vector<BigInt> squared_values(const Polynomial &p, const FockSpace &space) {
  if (p.variable_count() != space.modes())
    throw ham_error("polynomial has " + std::to_string(p.variable_count()) +
                    " variables but the space has " + std::to_string(space.modes()) + " modes");
  std::vector<BigInt> out(space.dim());
  const BigInt budget(static_cast<std::uint64_t>(kExactDiagonalBudget));
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const auto occ = space.occupation(idx);
    const BigInt d = p.evaluate(std::span<const int>(occ));
    out[idx] = d * d;
    if (out[idx] > budget)
      throw Error(ErrorKind::Budget, "hamiltonian",
                  "D^2 = " + out[idx].str() + " at a basis tuple exceeds 2^53 and cannot be "
                  "represented exactly; lower the cutoffs");
  }
  return out;
}

double default_epsilon(const Polynomial &p, const FockSpace &space,
                       const std::vector<double> &weights) {
  const auto values = squared_values(p, space);
  std::set<BigInt> distinct(values.begin(), values.end());
  double spacing = 0.0;
  if (distinct.size() > 1) {
    BigInt best = -1;
    for (auto it = std::next(distinct.begin()); it != distinct.end(); ++it) {
      const BigInt gap = *it - *std::prev(it);
      if (best < 0 || gap < best) best = gap;
    }
    spacing = best.convert_to<double>();
  }
  double epsilon = 1e-2 * (1.0 + spacing);
  double max_weight = 0.0;
  for (std::size_t i = 0; i < space.modes(); ++i)
    max_weight += weights.at(i) * (space.cutoff(i) - 1);
  if (spacing > 0.0 && max_weight > 0.0 && epsilon * max_weight >= 0.5 * spacing)
    epsilon = 0.5 * spacing / max_weight;
  return epsilon;
}

// ---------------------------------------------------------------------------
// ProblemInstance

ProblemInstance::ProblemInstance(Polynomial polynomial, FockSpace space)
    : ProblemInstance(std::move(polynomial), space,
                      std::vector<Complex>(space.modes(), Complex(1.0, 0.0))) {}

ProblemInstance::ProblemInstance(Polynomial polynomial, FockSpace space,
                                 std::vector<Complex> alphas,
                                 SymmetryBreaking symmetry_break)
    : polynomial_(std::move(polynomial)),
      space_(std::move(space)),
      alphas_(std::move(alphas)),
      symmetry_break_(std::move(symmetry_break)) {
  if (polynomial_.variable_count() != space_.modes())
    throw ham_error("polynomial has " + std::to_string(polynomial_.variable_count()) +
                    " variables but the space has " + std::to_string(space_.modes()) + " modes");
  if (alphas_.size() != space_.modes())
    throw ham_error("need one coherent displacement per mode");
  for (const auto &a : alphas_)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw ham_error("coherent displacement must be finite");
  const auto &sb = symmetry_break_;
  if (!(sb.epsilon >= 0.0) || !std::isfinite(sb.epsilon))
    throw ham_error("symmetry-breaking epsilon must be finite and non-negative");
  if (sb.epsilon > 0.0) {
    if (sb.weights.size() != space_.modes())
      throw ham_error("need one symmetry-breaking weight per mode");
    for (std::size_t i = 0; i < sb.weights.size(); ++i) {
      if (!(sb.weights[i] > 0.0)) throw ham_error("symmetry-breaking weights must be positive");
      for (std::size_t j = 0; j < i; ++j)
        if (sb.weights[i] == sb.weights[j])
          throw ham_error("symmetry-breaking weights must be distinct");
    }
  }
}

ProblemInstance ProblemInstance::with_default_symmetry_break(
    Polynomial polynomial, FockSpace space, std::vector<Complex> alphas) {
  SymmetryBreaking sb;
  sb.weights = prime_weights(space.modes());
  sb.epsilon = default_epsilon(polynomial, space, sb.weights);
  return ProblemInstance(std::move(polynomial), std::move(space), std::move(alphas), std::move(sb));
}

// ---------------------------------------------------------------------------
// Builders

Eigen::VectorXd problem_diagonal(const ProblemInstance &inst) {
  const auto &space = inst.space();
  const auto values = squared_values(inst.polynomial(), space);
  const auto &sb = inst.symmetry_break();
  Eigen::VectorXd diag(static_cast<Eigen::Index>(space.dim()));
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    double v = values[idx].convert_to<double>();
    if (sb.epsilon > 0.0) {
      double w = 0.0;
      for (std::size_t i = 0; i < space.modes(); ++i)
        w += sb.weights[i] * space.occupation(idx, i);
      v += sb.epsilon * w;
    }
    diag(static_cast<Eigen::Index>(idx)) = v;
  }
  return diag;
}

OperatorMatrix problem_hamiltonian(const ProblemInstance &inst) {
  return OperatorMatrix::diagonal(inst.space(), problem_diagonal(inst));
}

OperatorMatrix initial_hamiltonian(const ProblemInstance &inst) {
  const auto &space = inst.space();
  SparseMatrix total(static_cast<Eigen::Index>(space.dim()),
                     static_cast<Eigen::Index>(space.dim()));
  const SparseMatrix id = OperatorMatrix::identity(space).matrix();
  for (std::size_t i = 0; i < space.modes(); ++i) {
    const Complex alpha = inst.alphas()[i];
    const SparseMatrix a = annihilation(space, i).matrix();
    const SparseMatrix shifted = a - alpha * id;
    const SparseMatrix shifted_adjoint = shifted.adjoint();
    const SparseMatrix term = shifted_adjoint * shifted;
    total += term;
  }
  total.prune(Complex(0.0, 0.0));
  return OperatorMatrix(space, std::move(total));
}

QuantumState initial_ground_state(const ProblemInstance &inst) {
  const auto &space = inst.space();
  std::vector<Eigen::VectorXcd> factors;
  for (std::size_t i = 0; i < space.modes(); ++i) {
    const int n_max = space.cutoff(i);
    const Complex alpha = inst.alphas()[i];
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_max, n_max);
    for (int n = 1; n < n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXcd shifted = a - alpha * Eigen::MatrixXcd::Identity(n_max, n_max);
    const Eigen::MatrixXcd h = shifted.adjoint() * shifted;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
      throw Error(ErrorKind::Numerical, "hamiltonian", "diagonalization of H_I failed");
    Eigen::VectorXcd v = solver.eigenvectors().col(0);

    // Fix the global phase against the untruncated coherent amplitudes.
    Eigen::VectorXcd reference(n_max);
    reference(0) = 1.0;
    for (int n = 1; n < n_max; ++n)
      reference(n) = reference(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    const Complex z = reference.dot(v);
    if (std::abs(z) > 0.0) v *= std::conj(z) / std::abs(z);
    factors.push_back(std::move(v));
  }
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

// ---------------------------------------------------------------------------
// Interpolation

InterpolatedHamiltonian::InterpolatedHamiltonian(const ProblemInstance &inst,
                                                 Schedule schedule)
    : InterpolatedHamiltonian(initial_hamiltonian(inst), problem_diagonal(inst),
                              schedule) {}

InterpolatedHamiltonian::InterpolatedHamiltonian(OperatorMatrix initial,
                                                 Eigen::VectorXd problem,
                                                 Schedule schedule)
    : initial_(std::move(initial)), problem_(std::move(problem)), schedule_(schedule) {
  if (static_cast<std::size_t>(problem_.size()) != initial_.dim())
    throw ham_error("problem diagonal does not match the initial Hamiltonian");
}

OperatorMatrix InterpolatedHamiltonian::at(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw ham_error("interpolation parameter s outside [0, 1]");
  const double j = schedule_.jtilde(s);
  const double u = schedule_.utilde(s);
  if (u == 0.0) return initial_;
  const auto hp = OperatorMatrix::diagonal(space(), problem_);
  if (j == 0.0) return hp;
  return initial_ * Complex(j, 0.0) + hp * Complex(u, 0.0);
}

void InterpolatedHamiltonian::apply(double s, const Eigen::VectorXcd &in,
                                    Eigen::VectorXcd &out) const {
  const double j = schedule_.jtilde(s);
  const double u = schedule_.utilde(s);
  out.noalias() = initial_.matrix() * in;
  out *= j;
  out.array() += u * problem_.array() * in.array();
}

double InterpolatedHamiltonian::max_diagonal() const {
  const double hi = initial_.diagonal_entries().cwiseAbs().maxCoeff();
  const double hp = problem_.cwiseAbs().maxCoeff();
  return std::max(hi, hp);
}

OperatorMatrix interpolate(const ProblemInstance &inst, const Schedule &schedule, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ham_error("interpolation parameter s outside [0, 1]");
  return InterpolatedHamiltonian(inst, schedule).at(s);
}

void to_json(nlohmann::json &j, const Schedule &schedule) {
  j = {{"total_time", schedule.total_time()}, {"shape", to_string(schedule.shape())}};
}

void to_json(nlohmann::json &j, const SymmetryBreaking &sb) {
  j = {{"epsilon", sb.epsilon}, {"weights", sb.weights}};
}

}  // namespace dioph
