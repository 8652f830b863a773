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

#include <Eigen/Eigenvalues>
#include <cmath>

#include "dioph/error.hpp"
#include "dioph/hamiltonian.hpp"
#include "doctest.h"

using dioph::BigInt;

using dioph::Complex;
using dioph::FockSpace;
using dioph::ProblemInstance;
using dioph::Schedule;
using dioph::SymmetryBreaking;

namespace {

ProblemInstance instance(const char *equation, std::vector<int> cutoffs, double epsilon = 0.0,
                         std::vector<double> weights = {}) {
  auto p = dioph::parse(equation);
  FockSpace space(std::move(cutoffs));
  std::vector<Complex> alphas(space.modes(), Complex(1.0));
  if (weights.empty()) weights = dioph::prime_weights(space.modes());
  return ProblemInstance(std::move(p), std::move(space), alphas, SymmetryBreaking{epsilon, weights});
}

}  // namespace

TEST_CASE("schedule endpoints and shapes") {
  for (auto shape : {dioph::ScheduleShape::Linear, dioph::ScheduleShape::Smoothstep}) {
    const Schedule s(10.0, shape);
    CHECK(s.jtilde(0.0) == 1.0);
    CHECK(s.utilde(0.0) == 0.0);
    CHECK(s.jtilde(1.0) == 0.0);
    CHECK(s.utilde(1.0) == 1.0);
    double last = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double u = s.utilde(i / 100.0);
      CHECK(u >= last);
      last = u;
    }
  }
  CHECK(Schedule(1.0, dioph::ScheduleShape::Smoothstep).utilde(0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(Schedule(0.0), dioph::Error);
  CHECK(dioph::schedule_shape_from_string("smoothstep") == dioph::ScheduleShape::Smoothstep);
  CHECK_THROWS_AS(dioph::schedule_shape_from_string("cubic"), dioph::Error);
}

TEST_CASE("prime weights") {
  CHECK(dioph::prime_weights(5) == std::vector<double>{2, 3, 5, 7, 11});
}

TEST_CASE("problem diagonal of x - 3") {
  const auto inst = instance("x - 3", {16});
  const auto d = dioph::problem_diagonal(inst);
  for (int n = 0; n < 16; ++n) CHECK(d[n] == (n - 3) * (n - 3));
  CHECK(d[3] == 0.0);
}

TEST_CASE("problem diagonal equals the expanded number-operator form") {
  for (int m : {1, 2, 5}) {
    const std::string eq = "x - " + std::to_string(m);
    const auto inst = instance(eq.c_str(), {12});
    const auto d = dioph::problem_diagonal(inst);
    for (int n = 0; n < 12; ++n) CHECK(d[n] == n * n - 2 * m * n + m * m);
  }
}

TEST_CASE("symmetry breaking splits degenerate roots") {
  const auto inst = instance("(x - 2)*(x - 4)", {10}, 0.01, {1.0});
  const auto d = dioph::problem_diagonal(inst);
  CHECK(d[2] == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(d[4] == doctest::Approx(0.04).epsilon(1e-12));
  Eigen::Index argmin = 0;
  d.minCoeff(&argmin);
  CHECK(argmin == 2);
  int count = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) count += d[i] == d.minCoeff();
  CHECK(count == 1);
}

TEST_CASE("instance validation") {
  auto p = dioph::parse("x - y");
  CHECK_THROWS_AS(ProblemInstance(p, FockSpace({4})), dioph::Error);
  const FockSpace space({4, 4});
  CHECK_THROWS_AS(ProblemInstance(p, space, {1.0, 1.0}, SymmetryBreaking{-1.0, {2, 3}}), dioph::Error);
  CHECK_THROWS_AS(ProblemInstance(p, space, {1.0, 1.0}, SymmetryBreaking{0.1, {2, 2}}), dioph::Error);
  CHECK_THROWS_AS(ProblemInstance(p, space, {1.0, 1.0}, SymmetryBreaking{0.1, {2, -3}}), dioph::Error);
  CHECK_THROWS_AS(ProblemInstance(p, space, {1.0, std::nan("")}), dioph::Error);
  CHECK_NOTHROW(ProblemInstance(p, space, {1.0, 1.0}, SymmetryBreaking{0.0, {}}));
}

TEST_CASE("default epsilon keeps the integer argmin and splits ties") {
  for (const char *eq : {"x - 3", "x^2 - 2*y^2", "(x - 2)*(x - 4)", "x*y - 2"}) {
    auto p = dioph::parse(eq);
    const std::size_t k = p.variable_count();
    FockSpace space(std::vector<int>(k, 7));
    const auto inst = ProblemInstance::with_default_symmetry_break(p, space,
                                                                   std::vector<Complex>(k, 1.0));
    CHECK(inst.symmetry_break().epsilon > 0.0);
    const auto d = dioph::problem_diagonal(inst);
    const auto exact = dioph::squared_values(inst.polynomial(), space);
    const BigInt min_exact = *std::min_element(exact.begin(), exact.end());
    Eigen::Index argmin = 0;
    d.minCoeff(&argmin);
    CAPTURE(eq);
    CHECK(exact[static_cast<std::size_t>(argmin)] == min_exact);
    int count = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) count += d[i] == d.minCoeff();
    CHECK(count == 1);
  }
}

TEST_CASE("squared value budget") {
  auto p = dioph::parse("x^20");
  CHECK_THROWS_AS(dioph::squared_values(p, FockSpace({16})), dioph::Error);
}

TEST_CASE("initial hamiltonian with zero displacement is the number operator") {
  auto p = dioph::parse("x - y");
  const FockSpace space({4, 5});
  const ProblemInstance inst(p, space, {0.0, 0.0});
  const auto hi = dioph::initial_hamiltonian(inst);
  const Eigen::MatrixXcd expected =
      (dioph::number_operator(space, 0) + dioph::number_operator(space, 1)).dense();
  CHECK((hi.dense() - expected).cwiseAbs().maxCoeff() < 1e-15);
  const auto g = dioph::initial_ground_state(inst);
  CHECK(std::abs(g.amplitudes()[0] - Complex(1.0)) < 1e-12);
}

TEST_CASE("single-mode initial hamiltonian spectrum") {
  const auto inst = instance("x", {24});
  const auto hi = dioph::initial_hamiltonian(inst);
  CHECK(hi.hermiticity_defect() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hi.dense());
  CHECK(std::abs(solver.eigenvalues()[0]) < 1e-6);
  CHECK(solver.eigenvalues()[1] == doctest::Approx(1.0).epsilon(1e-4));

  const std::vector<Complex> alpha{1.0};
  const auto coherent = dioph::coherent_state(inst.space(), alpha);
  const Eigen::VectorXcd g = solver.eigenvectors().col(0);
  CHECK(std::norm(g.dot(coherent.amplitudes())) > 1.0 - 1e-6);
  CHECK(hi.expectation(coherent).real() < 1e-6);

  const auto ground = dioph::initial_ground_state(inst);
  CHECK(std::norm(g.dot(ground.amplitudes())) > 1.0 - 1e-12);
  CHECK(std::norm(ground.overlap(coherent)) > 1.0 - 1e-6);
}

TEST_CASE("initial ground state is the ground state of the truncated H_I") {
  // Cutoff 8 with alpha = 1 truncates visibly; the product eigenvector must
  // still match dense diagonalization of the full two-mode operator.
  const auto inst = instance("x^2 - 2*y^2", {8, 8});
  const auto hi = dioph::initial_hamiltonian(inst);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hi.dense());
  const auto ground = dioph::initial_ground_state(inst);
  CHECK(std::norm(solver.eigenvectors().col(0).dot(ground.amplitudes())) > 1.0 - 1e-12);
  CHECK(std::abs(hi.expectation(ground).real() - solver.eigenvalues()[0]) < 1e-12);
  CHECK(std::abs(ground.norm() - 1.0) < 1e-14);
}

TEST_CASE("complex displacement") {
  auto p = dioph::parse("x");
  const FockSpace space({24});
  const Complex alpha = std::polar(1.0, 1.1);
  const ProblemInstance inst(p, space, {alpha});
  const auto ground = dioph::initial_ground_state(inst);
  const std::vector<Complex> alphas{alpha};
  CHECK(std::norm(ground.overlap(dioph::coherent_state(space, alphas))) > 1.0 - 1e-6);
}

TEST_CASE("interpolation endpoints") {
  const auto inst = instance("x^2 - 2*y^2", {5, 5}, 0.01);
  const Schedule schedule(10.0);
  const auto h0 = dioph::interpolate(inst, schedule, 0.0);
  const auto h1 = dioph::interpolate(inst, schedule, 1.0);
  const auto hi = dioph::initial_hamiltonian(inst);
  const auto hp = dioph::problem_hamiltonian(inst);
  CHECK((h0.dense() - hi.dense()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((h1.dense() - hp.dense()).cwiseAbs().maxCoeff() == 0.0);
  const auto half = dioph::interpolate(inst, schedule, 0.5);
  const Eigen::MatrixXcd mid = 0.5 * (hi.dense() + hp.dense());
  CHECK((half.dense() - mid).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(dioph::interpolate(inst, schedule, 1.5), dioph::Error);
  CHECK_THROWS_AS(dioph::interpolate(inst, schedule, -0.1), dioph::Error);
}

TEST_CASE("every interpolated hamiltonian is hermitian") {
  const auto inst = instance("x^2 - 2*y^2", {6, 6}, 0.01);
  const dioph::InterpolatedHamiltonian h(inst, Schedule(5.0, dioph::ScheduleShape::Smoothstep));
  for (int i = 0; i <= 10; ++i) CHECK(h.at(i / 10.0).hermiticity_defect() < 1e-12);
}

TEST_CASE("apply matches the assembled matrix") {
  const auto inst = instance("x*y - 3", {5, 6}, 0.01);
  const dioph::InterpolatedHamiltonian h(inst, Schedule(5.0));
  Eigen::VectorXcd v = Eigen::VectorXcd::Random(30);
  Eigen::VectorXcd out(30);
  for (double s : {0.0, 0.3, 1.0}) {
    h.apply(s, v, out);
    const Eigen::VectorXcd expected = h.at(s).matrix() * v;
    CHECK((out - expected).norm() < 1e-12);
  }
}
