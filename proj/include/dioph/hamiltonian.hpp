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

#ifndef DIOPH_HAMILTONIAN_HPP
#define DIOPH_HAMILTONIAN_HPP

#include <string>
#include <vector>

#include "dioph/fock.hpp"
#include "dioph/polynomial.hpp"

namespace dioph {

enum class ScheduleShape { Linear, Smoothstep };

std::string to_string(ScheduleShape shape);
ScheduleShape schedule_shape_from_string(const std::string &name);

// Interpolation weights H(s) = jtilde(s) H_I + utilde(s) H_P over s = t/T.
// Both weights are monotone with jtilde(0) = utilde(1) = 1.
class Schedule {
 public:
  Schedule(double total_time, ScheduleShape shape = ScheduleShape::Linear);

  double total_time() const { return total_time_; }
  ScheduleShape shape() const { return shape_; }

  double utilde(double s) const;
  double jtilde(double s) const { return 1.0 - utilde(s); }

 private:
  double total_time_;
  ScheduleShape shape_;
};

// Perturbation epsilon * sum_i c_i n_i added to the problem diagonal to
// split degenerate minimizers.
struct SymmetryBreaking {
  double epsilon = 0.0;
  std::vector<double> weights;
};

// First k primes as doubles: 2, 3, 5, ...
std::vector<double> prime_weights(std::size_t count);

// Default epsilon: 1e-2 * (1 + smallest nonzero gap between distinct D^2
// values on the box), reduced when needed so that epsilon * max_box(sum c_i
// n_i) stays below half that gap and the integer argmin is preserved.
double default_epsilon(const Polynomial &p, const FockSpace &space,
                       const std::vector<double> &weights);

class ProblemInstance {
 public:
  // Uses alpha = 1 on every mode and no symmetry breaking.
  ProblemInstance(Polynomial polynomial, FockSpace space);
  ProblemInstance(Polynomial polynomial, FockSpace space,
                  std::vector<Complex> alphas,
                  SymmetryBreaking symmetry_break = {});

  // Instance with the default prime weights and default epsilon.
  static ProblemInstance with_default_symmetry_break(
      Polynomial polynomial, FockSpace space, std::vector<Complex> alphas);

  const Polynomial &polynomial() const { return polynomial_; }
  const FockSpace &space() const { return space_; }
  const std::vector<Complex> &alphas() const { return alphas_; }
  const SymmetryBreaking &symmetry_break() const { return symmetry_break_; }

 private:
  Polynomial polynomial_;
  FockSpace space_;
  std::vector<Complex> alphas_;
  SymmetryBreaking symmetry_break_;
};

// Largest |D(n)|^2 that still converts to double without rounding.
inline constexpr double kExactDiagonalBudget = 9007199254740992.0;  // 2^53

// Exact integer D(n)^2 at every basis tuple, in flat-index order. Throws a
// budget error if an entry exceeds kExactDiagonalBudget.
std::vector<BigInt> squared_values(const Polynomial &p, const FockSpace &space);

// Diagonal of H_P: D(n)^2 + epsilon * sum_i c_i n_i.
Eigen::VectorXd problem_diagonal(const ProblemInstance &inst);

OperatorMatrix problem_hamiltonian(const ProblemInstance &inst);
// sum_i (a_i^dagger - conj(alpha_i)) (a_i - alpha_i)
OperatorMatrix initial_hamiltonian(const ProblemInstance &inst);

// Ground state of the truncated H_I: the product of the lowest eigenvector of
// each single-mode term, phased to overlap positively with the coherent
// amplitudes. Converges to coherent_state() as the cutoffs grow.
QuantumState initial_ground_state(const ProblemInstance &inst);

// H_I and the H_P diagonal held together so H(s) can be applied without
// rebuilding either.
class InterpolatedHamiltonian {
 public:
  InterpolatedHamiltonian(const ProblemInstance &inst, Schedule schedule);
  InterpolatedHamiltonian(OperatorMatrix initial, Eigen::VectorXd problem,
                          Schedule schedule);

  const Schedule &schedule() const { return schedule_; }
  const FockSpace &space() const { return initial_.space(); }
  const OperatorMatrix &initial() const { return initial_; }
  const Eigen::VectorXd &problem() const { return problem_; }

  OperatorMatrix at(double s) const;
  // out = H(s) in
  void apply(double s, const Eigen::VectorXcd &in, Eigen::VectorXcd &out) const;
  // Largest |diagonal entry| of either endpoint Hamiltonian.
  double max_diagonal() const;

 private:
  OperatorMatrix initial_;
  Eigen::VectorXd problem_;
  Schedule schedule_;
};

// jtilde(s) H_I + utilde(s) H_P; s outside [0, 1] is an error.
OperatorMatrix interpolate(const ProblemInstance &inst,
                           const Schedule &schedule, double s);

void to_json(nlohmann::json &j, const Schedule &schedule);
void to_json(nlohmann::json &j, const SymmetryBreaking &sb);

}  // namespace dioph

#endif  // DIOPH_HAMILTONIAN_HPP
