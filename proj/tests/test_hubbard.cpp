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
#include <algorithm>
#include <cmath>
#include <sstream>

#include "dioph/error.hpp"
#include "dioph/hubbard.hpp"
#include "dioph/oracle.hpp"
#include "doctest.h"

namespace hb = dioph::hubbard;
using dioph::Occupation;

namespace {

hb::LatticeModel two_site(double j, double u) {
  hb::LatticeModel m;
  m.sites = 2;
  m.atoms = 2;
  m.tunneling = j;
  m.interaction = u;
  m.filling = 1;
  return m;
}

// Second-order susceptibility of the Mott state |m> under
// zJ (a^dagger - alpha*)(a - alpha) + U (n - m)^2, as a function of
// x = U / (zJ); the Mott state destabilizes where it reaches 1.
double susceptibility(double x, int m) {
  return (m + 1) / (x + 1) + m / (x - 1);
}

double critical_ratio(int m, int z) {
  double lo = 1.0 + 1e-9, hi = 1e6;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (susceptibility(mid, m) > 1.0 ? lo : hi) = mid;
  }
  return z * 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("fixed-number basis") {
  const hb::FixedNumberBasis basis(2, 2);
  REQUIRE(basis.dim() == 3);
  CHECK(basis.state(0) == Occupation{2, 0});
  CHECK(basis.state(1) == Occupation{1, 1});
  CHECK(basis.state(2) == Occupation{0, 2});
  CHECK(basis.find(Occupation{1, 1}) == std::optional<std::size_t>(1));
  CHECK_FALSE(basis.find(Occupation{2, 1}));
  CHECK(hb::FixedNumberBasis(4, 3).dim() == 20);
  CHECK(hb::basis_dimension(4, 3) == std::optional<std::uint64_t>(20));
  CHECK(hb::basis_dimension(10, 10) == std::optional<std::uint64_t>(92378));
  CHECK_FALSE(hb::basis_dimension(200, 200));
}

TEST_CASE("lattice geometry") {
  CHECK(hb::Lattice(two_site(1, 1)).bonds().size() == 1);
  CHECK(hb::Lattice(two_site(1, 1)).coordination() == 1);
  hb::LatticeModel ring = two_site(1, 1);
  ring.sites = 4;
  ring.atoms = 4;
  const hb::Lattice lattice(ring);
  CHECK(lattice.bonds().size() == 4);
  CHECK(lattice.coordination() == 2);
  hb::LatticeModel huge = ring;
  huge.sites = 30;
  huge.atoms = 30;
  try {
    hb::Lattice big(huge);
    FAIL("expected a budget error");
  } catch (const dioph::Error &e) {
    CHECK(e.kind() == dioph::ErrorKind::Budget);
  }
}

TEST_CASE("two sites without hopping") {
  const hb::Lattice lattice(two_site(0.0, 1.0));
  const Eigen::MatrixXd h = hb::build_hamiltonian(lattice);
  CHECK(h(0, 0) == 2.0);
  CHECK(h(1, 1) == 0.0);
  CHECK(h(2, 2) == 2.0);
  const auto spectrum = hb::diagonalize(lattice, 3);
  CHECK(std::abs(spectrum.energies[0]) < 1e-10);
  CHECK(std::abs(std::abs(spectrum.ground.dot(hb::mott_state(lattice))) - 1.0) < 1e-12);
}

TEST_CASE("two sites without interaction") {
  for (double j : {1.0, 0.5}) {
    const hb::Lattice lattice(two_site(j, 0.0));
    const Eigen::MatrixXd h = hb::build_hamiltonian(lattice);
    CHECK(h(0, 1) == doctest::Approx(-std::sqrt(2.0) * j));
    CHECK(h(1, 2) == doctest::Approx(-std::sqrt(2.0) * j));
    // Independent 3x3 diagonalization.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    CHECK(solver.eigenvalues()[0] == doctest::Approx(-2.0 * j).epsilon(1e-12));
    CHECK(std::abs(solver.eigenvalues()[1]) < 1e-12);
    CHECK(solver.eigenvalues()[2] == doctest::Approx(2.0 * j).epsilon(1e-12));
    const auto spectrum = hb::diagonalize(lattice, 3);
    CHECK(std::abs(spectrum.energies[0] + 2.0 * j) < 1e-10);
    const double overlap = std::abs(spectrum.ground.dot(hb::superfluid_state(lattice)));
    CHECK(overlap * overlap > 1.0 - 1e-10);
  }
}

TEST_CASE("hamiltonian is symmetric and conserves the atom number") {
  hb::LatticeModel m = two_site(0.7, 1.3);
  m.sites = 3;
  m.atoms = 3;
  const Eigen::MatrixXd h = hb::build_hamiltonian(hb::Lattice(m));
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);

  const auto hf = hb::build_hamiltonian_fock(m, 4);
  const auto n = hb::total_number(hf.space());
  const auto commutator = hf * n - n * hf;
  CHECK(commutator.max_abs() < 1e-12);
  CHECK(hf.hermiticity_defect() < 1e-12);
}

TEST_CASE("fixed-number sector of the tensor-product hamiltonian") {
  const auto model = two_site(0.8, 1.1);
  const auto hf = hb::build_hamiltonian_fock(model, 3);
  const hb::Lattice lattice(model);
  const auto &basis = lattice.basis();
  Eigen::MatrixXd sector(basis.dim(), basis.dim());
  const Eigen::MatrixXcd dense = hf.dense();
  for (std::size_t r = 0; r < basis.dim(); ++r)
    for (std::size_t c = 0; c < basis.dim(); ++c)
      sector(r, c) = dense(hf.space().index(basis.state(r)), hf.space().index(basis.state(c))).real();
  const Eigen::MatrixXd direct = hb::build_hamiltonian(lattice);
  CHECK((sector - direct).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("superfluid state amplitudes") {
  hb::LatticeModel one = two_site(1, 1);
  one.atoms = 1;
  const auto s1 = hb::superfluid_state(hb::Lattice(one));
  CHECK(s1[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(s1[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  const auto s2 = hb::superfluid_state(hb::Lattice(two_site(1, 1)));
  CHECK(s2[0] == doctest::Approx(0.5));
  CHECK(s2[1] == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(s2[2] == doctest::Approx(0.5));
}

TEST_CASE("mott state") {
  const hb::Lattice lattice(two_site(1, 1));
  const auto mott = hb::mott_state(lattice);
  CHECK(mott[1] == 1.0);
  CHECK(mott.norm() == 1.0);
  hb::LatticeModel bad = two_site(1, 1);
  bad.sites = 3;
  bad.atoms = 5;
  bad.filling = 2;
  CHECK_THROWS_AS(hb::mott_state(hb::Lattice(bad)), dioph::Error);
}

TEST_CASE("mean field without hopping") {
  for (int m : {1, 2}) {
    const auto s = hb::mean_field_solve(0.0, 1.0, m, 2, dioph::Complex(1.0));
    CHECK(s.alpha == dioph::Complex(0.0));
    CHECK(s.iterations == 1);
    CHECK(s.converged);
    CHECK(s.single_site_ground.probabilities()[m] == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("mean field Mott limit") {
  const auto s = hb::mean_field_solve(1.0, 1000.0, 1, 2, dioph::Complex(1.0));
  CHECK(s.converged);
  CHECK(std::abs(s.alpha) < 1e-3);
  CHECK(s.single_site_ground.probabilities()[1] > 0.99);
  // The Mott occupation is the solution of x - m found by exhaustive search.
  const std::vector<int> box{10};
  const auto oracle = dioph::search_box(hb::as_diophantine(1), box);
  Eigen::Index peak = 0;
  s.single_site_ground.probabilities().maxCoeff(&peak);
  CHECK(oracle.minimizers.front() == Occupation{static_cast<int>(peak)});
}

TEST_CASE("mean field superfluid branch") {
  const auto s = hb::mean_field_solve(1.0, 0.01, 1, 2, dioph::Complex(1.0), hb::sweep_options());
  CHECK(s.converged);
  CHECK(std::abs(s.alpha) > 0.1);
}

TEST_CASE("mean field preconditions") {
  CHECK_THROWS_AS(hb::mean_field_solve(0.0, 0.0, 1, 2, dioph::Complex(1.0)), dioph::Error);
  hb::MeanFieldOptions small;
  small.cutoff = 4;
  CHECK_THROWS_AS(hb::mean_field_solve(1.0, 1.0, 1, 2, dioph::Complex(1.0), small), dioph::Error);
  hb::MeanFieldOptions few;
  few.max_iterations = 2;
  try {
    hb::mean_field_solve(1.0, 5.0, 1, 2, dioph::Complex(1.0), few);
    FAIL("expected a numerical error");
  } catch (const dioph::Error &e) {
    CHECK(e.kind() == dioph::ErrorKind::Numerical);
  }
  few.require_convergence = false;
  CHECK_FALSE(hb::mean_field_solve(1.0, 5.0, 1, 2, dioph::Complex(1.0), few).converged);
}

TEST_CASE("perturbative critical ratio") {
  CHECK(critical_ratio(1, 2) == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(critical_ratio(2, 2) == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("sweeps cross into the Mott phase where perturbation theory predicts") {
  const std::vector<double> grid{2, 3, 4, 5, 5.5, 6.5, 7, 8, 9, 9.5, 10.5, 11, 12, 15, 20, 50, 100, 1000};
  std::optional<double> crossings[3];
  for (int m : {1, 2}) {
    const auto t = hb::sweep_transition(m, 2, grid);
    CAPTURE(m);
    REQUIRE(t.rows.size() == grid.size());
    CHECK(t.monotone);
    CHECK(t.rows.front().alpha_abs > t.rows.back().alpha_abs);
    REQUIRE(t.transition_ratio);
    const double critical = critical_ratio(m, 2);
    const auto first_above = *std::upper_bound(grid.begin(), grid.end(), critical);
    CHECK(*t.transition_ratio == first_above);
    crossings[m] = t.transition_ratio;
  }
  CHECK(*crossings[1] != *crossings[2]);
}

TEST_CASE("single-point sweep") {
  const std::vector<double> grid{3.0};
  const auto t = hb::sweep_transition(1, 2, grid);
  CHECK(t.rows.size() == 1);
  CHECK_FALSE(t.transition_ratio);
}

TEST_CASE("sweep grid must ascend") {
  const std::vector<double> grid{3.0, 2.0};
  CHECK_THROWS_AS(hb::sweep_transition(1, 2, grid), dioph::Error);
}

TEST_CASE("as_diophantine") {
  CHECK(hb::as_diophantine(1).render() == "x - 1");
  CHECK(hb::as_diophantine(2).evaluate(std::vector<int>{2}) == 0);
}

TEST_CASE("sweep csv") {
  const std::vector<double> grid{2.0, 1000.0};
  const auto t = hb::sweep_transition(1, 2, grid);
  std::ostringstream out;
  hb::write_sweep_csv(out, t);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("ratio,alpha_abs,iterations,p0,p1", 0) == 0);
}
