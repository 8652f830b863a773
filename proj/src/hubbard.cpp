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

#include "dioph/hubbard.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "dioph/error.hpp"
#include "dioph/parallel.hpp"

namespace dioph::hubbard {

namespace {

Error hubbard_error(ErrorKind kind, const std::string &what) {
  return Error(kind, "hubbard", what);
}

void enumerate(int site, int remaining, Occupation &current, std::vector<Occupation> &out) {
  const int last = static_cast<int>(current.size()) - 1;
  if (site == last) {
    current[site] = remaining;
    out.push_back(current);
    return;
  }
  for (int n = remaining; n >= 0; --n) {
    current[site] = n;
    enumerate(site + 1, remaining - n, current, out);
  }
}

std::vector<std::pair<int, int>> chain_bonds(int sites) {
  if (sites == 2) return {{0, 1}};
  std::vector<std::pair<int, int>> bonds;
  for (int i = 0; i < sites; ++i) bonds.emplace_back(i, (i + 1) % sites);
  return bonds;
}

}  // namespace

// ---------------------------------------------------------------------------
// Basis and lattice

FixedNumberBasis::FixedNumberBasis(int sites, int atoms) {
  if (sites < 1 || atoms < 0) throw hubbard_error(ErrorKind::Precondition, "invalid basis shape");
  Occupation current(static_cast<std::size_t>(sites), 0);
  enumerate(0, atoms, current, states_);
}

std::optional<std::size_t> FixedNumberBasis::find(const Occupation &occ) const {
  const auto it = std::lower_bound(states_.begin(), states_.end(), occ, std::greater<>());
  if (it == states_.end() || *it != occ) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

std::optional<std::uint64_t> basis_dimension(int sites, int atoms) {
  if (sites < 1 || atoms < 0) return std::nullopt;
  // C(K + M - 1, M - 1) built incrementally; each partial product is itself
  // a binomial coefficient, so the division is exact.
  unsigned __int128 c = 1;
  const int n = atoms + sites - 1;
  const int r = sites - 1;
  for (int i = 1; i <= r; ++i) {
    c = c * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(c);
}

Lattice::Lattice(LatticeModel model, std::size_t basis_budget)
    : model_(model),
      basis_([&] {
        if (model.sites < 2) throw hubbard_error(ErrorKind::Precondition, "need at least two sites");
        if (model.atoms < 0) throw hubbard_error(ErrorKind::Precondition, "atom count must be non-negative");
        if (!(model.tunneling >= 0.0) || !(model.interaction >= 0.0))
          throw hubbard_error(ErrorKind::Precondition, "J and U must be non-negative");
        if (model.filling < 1) throw hubbard_error(ErrorKind::Precondition, "filling must be a positive integer");
        const auto d = basis_dimension(model.sites, model.atoms);
        if (!d || *d > basis_budget)
          throw hubbard_error(ErrorKind::Budget, "fixed-number basis exceeds the budget of " +
                                                     std::to_string(basis_budget) + " states");
        return FixedNumberBasis(model.sites, model.atoms);
      }()),
      bonds_(chain_bonds(model.sites)) {}

RealSparse build_hamiltonian(const Lattice &lattice) {
  const auto &basis = lattice.basis();
  const auto &m = lattice.model();
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t idx = 0; idx < basis.dim(); ++idx) {
    const auto &occ = basis.state(idx);
    double diag = 0.0;
    for (int n : occ) diag += m.interaction * n * (n - m.filling);
    if (diag != 0.0) triplets.emplace_back(static_cast<int>(idx), static_cast<int>(idx), diag);
    if (m.tunneling == 0.0) continue;
    for (const auto &[i, j] : lattice.bonds()) {
      // a_to^dagger a_from, both directions along the bond.
      for (const auto &[to, from] : {std::pair{i, j}, std::pair{j, i}}) {
        if (occ[from] == 0) continue;
        Occupation target = occ;
        const double amp = std::sqrt(static_cast<double>((occ[to] + 1) * occ[from]));
        target[to] += 1;
        target[from] -= 1;
        const auto row = basis.find(target);
        triplets.emplace_back(static_cast<int>(*row), static_cast<int>(idx), -m.tunneling * amp);
      }
    }
  }
  RealSparse h(static_cast<Eigen::Index>(basis.dim()), static_cast<Eigen::Index>(basis.dim()));
  h.setFromTriplets(triplets.begin(), triplets.end());
  return h;
}

OperatorMatrix total_number(const FockSpace &space) {
  auto total = number_operator(space, 0);
  for (std::size_t i = 1; i < space.modes(); ++i) total = total + number_operator(space, i);
  return total;
}

OperatorMatrix build_hamiltonian_fock(const LatticeModel &model, int cutoff) {
  if (model.sites < 2) throw hubbard_error(ErrorKind::Precondition, "need at least two sites");
  const FockSpace space(std::vector<int>(static_cast<std::size_t>(model.sites), cutoff));
  SparseMatrix h(static_cast<Eigen::Index>(space.dim()), static_cast<Eigen::Index>(space.dim()));
  for (const auto &[i, j] : chain_bonds(model.sites)) {
    const auto ai = annihilation(space, static_cast<std::size_t>(i)).matrix();
    const auto aj = annihilation(space, static_cast<std::size_t>(j)).matrix();
    const SparseMatrix hop = SparseMatrix(ai.adjoint()) * aj + SparseMatrix(aj.adjoint()) * ai;
    h -= Complex(model.tunneling, 0.0) * hop;
  }
  const auto id = OperatorMatrix::identity(space).matrix();
  for (int i = 0; i < model.sites; ++i) {
    const auto n = number_operator(space, static_cast<std::size_t>(i)).matrix();
    const SparseMatrix shifted = n - Complex(model.filling, 0.0) * id;
    h += Complex(model.interaction, 0.0) * SparseMatrix(n * shifted);
  }
  return OperatorMatrix(space, std::move(h));
}

Eigen::VectorXd superfluid_state(const Lattice &lattice) {
  const auto &basis = lattice.basis();
  const int atoms = lattice.model().atoms;
  // Amplitude K! / prod_i sqrt(n_i!), in logs.
  Eigen::VectorXd log_amp(static_cast<Eigen::Index>(basis.dim()));
  for (std::size_t idx = 0; idx < basis.dim(); ++idx) {
    double v = std::lgamma(atoms + 1.0);
    for (int n : basis.state(idx)) v -= 0.5 * std::lgamma(n + 1.0);
    log_amp(static_cast<Eigen::Index>(idx)) = v;
  }
  const double shift = log_amp.maxCoeff();
  Eigen::VectorXd amp = (log_amp.array() - shift).exp();
  return amp / amp.norm();
}

Eigen::VectorXd mott_state(const Lattice &lattice) {
  const auto &m = lattice.model();
  if (m.atoms != m.filling * m.sites)
    throw hubbard_error(ErrorKind::Precondition,
                        "filling mismatch: K = " + std::to_string(m.atoms) + " but m M = " +
                            std::to_string(m.filling * m.sites));
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lattice.basis().dim()));
  v(static_cast<Eigen::Index>(*lattice.basis().find(Occupation(static_cast<std::size_t>(m.sites), m.filling)))) = 1.0;
  return v;
}

LatticeSpectrum diagonalize(const Lattice &lattice, std::size_t levels) {
  if (lattice.basis().dim() > 4096)
    throw hubbard_error(ErrorKind::Budget, "basis too large for dense diagonalization");
  const Eigen::MatrixXd h = Eigen::MatrixXd(build_hamiltonian(lattice));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw hubbard_error(ErrorKind::Numerical, "lattice diagonalization failed");
  LatticeSpectrum out;
  const auto keep = static_cast<Eigen::Index>(std::min<std::size_t>(levels, lattice.basis().dim()));
  out.energies.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + keep);
  out.ground = solver.eigenvectors().col(0);
  return out;
}

// ---------------------------------------------------------------------------
// Mean field

MeanFieldState mean_field_solve(double tunneling, double interaction, int filling,
                                int coordination, Complex alpha0,
                                const MeanFieldOptions &options) {
  if (filling < 1) throw hubbard_error(ErrorKind::Precondition, "filling must be a positive integer");
  if (options.cutoff < filling + 6)
    throw hubbard_error(ErrorKind::Precondition, "single-site cutoff must be at least m + 6");
  if (!(tunneling >= 0.0) || !(interaction >= 0.0) || coordination < 1)
    throw hubbard_error(ErrorKind::Precondition, "J, U must be non-negative and z positive");
  if (tunneling == 0.0 && interaction == 0.0)
    throw hubbard_error(ErrorKind::Precondition, "J and U are both zero; the ground state is degenerate");

  const int dim = options.cutoff;
  const double j_eff = coordination * tunneling;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd interaction_term = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) interaction_term(n, n) = interaction * (n - filling) * (n - filling);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);

  auto ground = [&](Complex alpha) {
    const Eigen::MatrixXcd shifted = a - alpha * id;
    const Eigen::MatrixXcd h = j_eff * (shifted.adjoint() * shifted) + interaction_term;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
      throw hubbard_error(ErrorKind::Numerical, "single-site diagonalization failed");
    Eigen::VectorXcd g = solver.eigenvectors().col(0);
    // Largest component real and positive.
    Eigen::Index k;
    g.cwiseAbs().maxCoeff(&k);
    g *= std::conj(g(k)) / std::abs(g(k));
    return g;
  };
  auto expectation_a = [&](const Eigen::VectorXcd &g) { return g.dot(a * g); };

  const FockSpace site(std::vector<int>{dim});
  Complex alpha = alpha0;
  if (j_eff == 0.0) {
    // H no longer depends on alpha: one evaluation is the fixed point.
    auto g = ground(alpha);
    alpha = expectation_a(g);
    return {alpha, QuantumState(site, std::move(g)), 1, true, 0.0};
  }

  double residual = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    auto g = ground(alpha);
    const Complex target = expectation_a(g);
    residual = std::abs(alpha - target);
    if (residual < options.tolerance) return {alpha, QuantumState(site, std::move(g)), it, true, residual};
    alpha = (1.0 - options.damping) * alpha + options.damping * target;
  }
  if (options.require_convergence)
    throw hubbard_error(ErrorKind::Numerical,
                        "mean field did not converge in " + std::to_string(options.max_iterations) +
                            " iterations (U/J = " + std::to_string(interaction / tunneling) +
                            ", residual " + std::to_string(residual) + ")");
  auto g = ground(alpha);
  return {alpha, QuantumState(site, std::move(g)), options.max_iterations, false, residual};
}

MeanFieldOptions sweep_options() {
  MeanFieldOptions o;
  o.max_iterations = 20000;
  return o;
}

SweepTable sweep_transition(int filling, int coordination, std::span<const double> ratios,
                            const MeanFieldOptions &options) {
  if (ratios.empty()) throw hubbard_error(ErrorKind::Precondition, "ratio grid is empty");
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!(ratios[i] >= 0.0)) throw hubbard_error(ErrorKind::Precondition, "ratios must be non-negative");
    if (i > 0 && ratios[i] <= ratios[i - 1])
      throw hubbard_error(ErrorKind::Precondition, "ratio grid must be strictly ascending");
  }
  SweepTable table;
  table.filling = filling;
  table.coordination = coordination;
  table.rows.resize(ratios.size());
  parallel_for(ratios.size(), [&](std::size_t i) {
    const auto state = mean_field_solve(1.0, ratios[i], filling, coordination, Complex(1.0, 0.0), options);
    table.rows[i] = {ratios[i], std::abs(state.alpha), state.iterations,
                     state.single_site_ground.probabilities()};
  });
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (i > 0 && table.rows[i].alpha_abs > table.rows[i - 1].alpha_abs + kMonotoneTolerance)
      table.monotone = false;
    if (!table.transition_ratio && table.rows[i].alpha_abs < kMottThreshold)
      table.transition_ratio = table.rows[i].ratio;
  }
  return table;
}

Polynomial as_diophantine(int filling) {
  if (filling < 1) throw hubbard_error(ErrorKind::Precondition, "filling must be at least 1");
  return Polynomial({"x"}, {Monomial{BigInt(1), {1}}, Monomial{BigInt(-filling), {0}}});
}

void to_json(nlohmann::json &j, const LatticeModel &m) {
  j = {{"sites", m.sites}, {"atoms", m.atoms}, {"J", m.tunneling}, {"U", m.interaction}, {"m", m.filling}};
}

void to_json(nlohmann::json &j, const SweepTable &t) {
  auto rows = nlohmann::json::array();
  for (const auto &r : t.rows)
    rows.push_back({{"ratio", r.ratio},
                    {"alpha_abs", r.alpha_abs},
                    {"iterations", r.iterations},
                    {"occupation", std::vector<double>(r.occupation.data(), r.occupation.data() + r.occupation.size())}});
  j = {{"m", t.filling},
       {"z", t.coordination},
       {"monotone", t.monotone},
       {"transition_ratio", t.transition_ratio ? nlohmann::json(*t.transition_ratio) : nlohmann::json(nullptr)},
       {"rows", rows}};
}

void write_sweep_csv(std::ostream &out, const SweepTable &t) {
  const Eigen::Index levels = t.rows.empty() ? 0 : t.rows.front().occupation.size();
  out << "ratio,alpha_abs,iterations";
  for (Eigen::Index n = 0; n < levels; ++n) out << ",p" << n;
  out << '\n';
  const auto old = out.precision(15);
  for (const auto &r : t.rows) {
    out << r.ratio << ',' << r.alpha_abs << ',' << r.iterations;
    for (Eigen::Index n = 0; n < r.occupation.size(); ++n) out << ',' << r.occupation(n);
    out << '\n';
  }
  out.precision(old);
}

}  // namespace dioph::hubbard
