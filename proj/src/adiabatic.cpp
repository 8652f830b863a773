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

#include "dioph/adiabatic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "dioph/error.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

namespace {

Error adiabatic_error(ErrorKind kind, const std::string &what) {
  return Error(kind, "adiabatic", what);
}

Eigen::MatrixXcd dense_at(const InterpolatedHamiltonian &h, double s) {
  if (h.space().dim() > kMaxDenseDim)
    throw adiabatic_error(ErrorKind::Budget,
                          "dimension " + std::to_string(h.space().dim()) +
                              " too large for dense diagonalization");
  return h.at(s).dense();
}

// |<g(s)|psi>|^2 with g(s) the lowest eigenvector of H(s).
double ground_overlap(const InterpolatedHamiltonian &h, double s,
                      const Eigen::VectorXcd &psi) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_at(h, s));
  if (solver.info() != Eigen::Success)
    throw adiabatic_error(ErrorKind::Numerical, "diagonalization failed at s = " + std::to_string(s));
  return std::norm(solver.eigenvectors().col(0).dot(psi));
}

// out = -i (j H_I + u diag(d)) in, in one pass over the CSR rows of H_I.
class Derivative {
 public:
  explicit Derivative(const InterpolatedHamiltonian &h)
      : matrix_(h.initial().matrix()), diag_(h.problem().data()), schedule_(h.schedule()) {}

  void operator()(double s, const Complex *in, Complex *out) const {
    const double j = schedule_.jtilde(s);
    const double u = schedule_.utilde(s);
    const auto *outer = matrix_.outerIndexPtr();
    const auto *inner = matrix_.innerIndexPtr();
    const Complex *values = matrix_.valuePtr();
    const Eigen::Index rows = matrix_.rows();
    for (Eigen::Index r = 0; r < rows; ++r) {
      // Spelled out to avoid the library complex multiply (NaN/Inf recovery
      // path), which dominates the cost for small spaces.
      double re = 0.0, im = 0.0;
      for (auto k = outer[r]; k < outer[r + 1]; ++k) {
        const Complex v = values[k];
        const Complex x = in[inner[k]];
        re += v.real() * x.real() - v.imag() * x.imag();
        im += v.real() * x.imag() + v.imag() * x.real();
      }
      const double d = u * diag_[r];
      re = j * re + d * in[r].real();
      im = j * im + d * in[r].imag();
      out[r] = Complex(im, -re);
    }
  }

 private:
  const SparseMatrix &matrix_;
  const double *diag_;
  const Schedule &schedule_;
};

}  // namespace

double automatic_step(const InterpolatedHamiltonian &h, double step_scale) {
  const double total = h.schedule().total_time();
  const double scale = h.max_diagonal();
  double dt = total / 1000.0;
  if (scale > 0.0) dt = std::min(dt, step_scale / scale);
  return dt;
}

EvolutionResult evolve(const InterpolatedHamiltonian &h, QuantumState initial,
                       const EvolveOptions &options) {
  if (!(initial.space() == h.space()))
    throw adiabatic_error(ErrorKind::Precondition, "initial state lives in a different space");
  const double total = h.schedule().total_time();
  double dt_max = options.dt > 0.0 ? options.dt : automatic_step(h, options.step_scale);
  if (dt_max > total / 1000.0 * (1.0 + 1e-12))
    throw adiabatic_error(ErrorKind::Precondition, "step size must not exceed T/1000");
  const auto steps = static_cast<std::size_t>(std::ceil(total / dt_max - 1e-9));
  const double dt = total / static_cast<double>(steps);

  EvolutionResult result{std::move(initial), 0.0, 0.0, steps, dt, {}};
  Eigen::VectorXcd &psi = result.final_state.amplitudes();
  const Eigen::Index n = psi.size();
  Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), tmp(n);
  const Derivative derivative(h);
  if (!h.initial().matrix().isCompressed())
    throw adiabatic_error(ErrorKind::Precondition, "initial Hamiltonian must be compressed");

  auto trace_points = options.trace_points;
  std::sort(trace_points.begin(), trace_points.end());
  std::size_t next_trace = 0;
  auto record_trace = [&](std::size_t step) {
    const double s = static_cast<double>(step) / static_cast<double>(steps);
    while (next_trace < trace_points.size() && trace_points[next_trace] <= s + 1e-12) {
      result.ground_overlap_trace.emplace_back(s, ground_overlap(h, s, psi));
      ++next_trace;
    }
  };
  record_trace(0);

  const double half = 0.5 * dt;
  const double sixth = dt / 6.0;
  for (std::size_t step = 0; step < steps; ++step) {
    const double s0 = static_cast<double>(step) / static_cast<double>(steps);
    const double s_half = (static_cast<double>(step) + 0.5) / static_cast<double>(steps);
    const double s1 = static_cast<double>(step + 1) / static_cast<double>(steps);

    derivative(s0, psi.data(), k1.data());
    for (Eigen::Index i = 0; i < n; ++i) tmp[i] = psi[i] + half * k1[i];
    derivative(s_half, tmp.data(), k2.data());
    for (Eigen::Index i = 0; i < n; ++i) tmp[i] = psi[i] + half * k2[i];
    derivative(s_half, tmp.data(), k3.data());
    for (Eigen::Index i = 0; i < n; ++i) tmp[i] = psi[i] + dt * k3[i];
    derivative(s1, tmp.data(), k4.data());
    for (Eigen::Index i = 0; i < n; ++i)
      psi[i] += sixth * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);

    const double norm = psi.norm();
    if (!std::isfinite(norm))
      throw adiabatic_error(ErrorKind::Numerical,
                            "non-finite amplitude at step " + std::to_string(step) + "; reduce dt");
    const double drift = std::abs(1.0 - norm);
    result.norm_drift = std::max(result.norm_drift, drift);
    result.accumulated_drift += drift;
    if (result.norm_drift > options.max_norm_drift)
      throw adiabatic_error(ErrorKind::Numerical,
                            "norm drift " + std::to_string(result.norm_drift) +
                                " exceeds tolerance at step " + std::to_string(step) + "; reduce dt");
    psi /= norm;
    record_trace(step + 1);
  }
  return result;
}

EvolutionResult evolve(const ProblemInstance &inst, const Schedule &schedule,
                       const EvolveOptions &options) {
  return evolve(InterpolatedHamiltonian(inst, schedule), initial_ground_state(inst), options);
}

// ---------------------------------------------------------------------------
// Spectral flow

SpectralFlow spectral_flow(const ProblemInstance &inst, const Schedule &schedule,
                           std::size_t grid_points, std::size_t levels) {
  if (grid_points < 11)
    throw adiabatic_error(ErrorKind::Precondition, "spectral flow needs at least 11 grid points");
  if (levels < 2) throw adiabatic_error(ErrorKind::Precondition, "need at least two levels");
  const InterpolatedHamiltonian h(inst, schedule);
  const std::size_t keep = std::min(levels, h.space().dim());

  SpectralFlow flow;
  flow.grid.resize(grid_points);
  flow.levels.resize(grid_points);
  flow.gaps.resize(grid_points);
  for (std::size_t g = 0; g < grid_points; ++g)
    flow.grid[g] = static_cast<double>(g) / static_cast<double>(grid_points - 1);

  parallel_for(grid_points, [&](std::size_t g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_at(h, flow.grid[g]),
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw adiabatic_error(ErrorKind::Numerical,
                            "diagonalization failed at s = " + std::to_string(flow.grid[g]));
    const auto &ev = solver.eigenvalues();
    flow.levels[g].assign(ev.data(), ev.data() + keep);
    flow.gaps[g] = ev(1) - ev(0);
  });

  flow.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t g = 1; g + 1 < grid_points; ++g) {
    if (flow.gaps[g] < flow.min_gap) {
      flow.min_gap = flow.gaps[g];
      flow.min_gap_s = flow.grid[g];
    }
  }
  flow.min_gap = std::max(flow.min_gap, 0.0);
  flow.initial_gap = flow.gaps.front();
  flow.final_gap = flow.gaps.back();
  return flow;
}

void write_flow_csv(std::ostream &out, const SpectralFlow &flow,
                    std::span<const std::pair<double, double>> trace) {
  const std::size_t levels = flow.levels.empty() ? 0 : flow.levels.front().size();
  const bool with_overlap = !trace.empty() && trace.size() == flow.grid.size();
  out << "s";
  for (std::size_t l = 0; l < levels; ++l) out << ",E" << l;
  out << ",gap";
  if (with_overlap) out << ",ground_overlap";
  out << '\n';
  const auto old = out.precision(15);
  for (std::size_t g = 0; g < flow.grid.size(); ++g) {
    out << flow.grid[g];
    for (double e : flow.levels[g]) out << ',' << e;
    out << ',' << flow.gaps[g];
    if (with_overlap) out << ',' << trace[g].second;
    out << '\n';
  }
  out.precision(old);
}

// ---------------------------------------------------------------------------
// Bound diagnostic

BoundDiagnostic bound_diagnostic(const QuantumState &initial,
                                 const Eigen::VectorXd &problem_diagonal,
                                 double total_time, double g_theta) {
  if (static_cast<std::size_t>(problem_diagonal.size()) != initial.space().dim())
    throw adiabatic_error(ErrorKind::Precondition, "diagonal does not match the state space");
  const Eigen::VectorXd p = initial.probabilities() / initial.probabilities().sum();
  const double m1 = p.dot(problem_diagonal);
  const double m2 = p.dot(problem_diagonal.cwiseAbs2());
  // Cancellation can leave a tiny negative variance.
  const double variance = std::max(0.0, m2 - m1 * m1);

  BoundDiagnostic b;
  b.delta_ie = std::sqrt(variance);
  b.mean_energy = m1;
  b.g_theta = g_theta;
  b.total_time = total_time;
  b.product = g_theta * total_time * b.delta_ie;
  const double scale = std::max(1.0, std::abs(m1));
  if (b.delta_ie <= 1e-9 * scale) {
    b.status = BoundStatus::DegenerateStart;
    b.satisfied = false;
  } else {
    b.satisfied = b.product > 4.0;
  }
  return b;
}

BoundDiagnostic bound_diagnostic(const ProblemInstance &inst, const Schedule &schedule,
                                 double g_theta) {
  return bound_diagnostic(initial_ground_state(inst), problem_diagonal(inst),
                          schedule.total_time(), g_theta);
}

// ---------------------------------------------------------------------------
// Truncation stability

Occupation preferred_minimizer(const BoxSearchResult &result, const SymmetryBreaking &sb) {
  if (result.minimizers.empty())
    throw adiabatic_error(ErrorKind::Precondition, "oracle result lists no minimizers");
  if (sb.epsilon <= 0.0) return result.minimizers.front();
  auto weight = [&](const Occupation &t) {
    double w = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) w += sb.weights[i] * t[i];
    return w;
  };
  return *std::min_element(result.minimizers.begin(), result.minimizers.end(),
                           [&](const Occupation &a, const Occupation &b) {
                             return weight(a) < weight(b);
                           });
}

StabilityTable truncation_stability(const ProblemInstance &base, const Schedule &schedule,
                                    std::span<const int> cutoff_ladder,
                                    const EvolveOptions &options, double threshold) {
  if (cutoff_ladder.empty())
    throw adiabatic_error(ErrorKind::Precondition, "cutoff ladder is empty");
  for (std::size_t i = 1; i < cutoff_ladder.size(); ++i)
    if (cutoff_ladder[i] <= cutoff_ladder[i - 1])
      throw adiabatic_error(ErrorKind::Precondition, "cutoff ladder must be strictly ascending");

  const std::size_t modes = base.space().modes();
  const std::vector<int> largest_box(modes, cutoff_ladder.back() - 1);
  StabilityTable table;
  table.expected_witness =
      preferred_minimizer(search_box(base.polynomial(), largest_box), base.symmetry_break());
  const int witness_max = *std::max_element(table.expected_witness.begin(),
                                            table.expected_witness.end());
  if (cutoff_ladder.front() < witness_max + 2)
    throw adiabatic_error(ErrorKind::Precondition,
                          "smallest cutoff " + std::to_string(cutoff_ladder.front()) +
                              " does not exceed the expected witness by 2");

  table.rows.resize(cutoff_ladder.size());
  parallel_for(cutoff_ladder.size(), [&](std::size_t i) {
    const FockSpace space(std::vector<int>(modes, cutoff_ladder[i]));
    const ProblemInstance inst(base.polynomial(), space, base.alphas(), base.symmetry_break());
    const auto run = evolve(inst, schedule, options);
    table.rows[i] = {cutoff_ladder[i], identify(run.final_state, threshold)};
  });

  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const auto &a = table.rows[i - 1].identification;
    const auto &b = table.rows[i].identification;
    table.max_difference = std::max(table.max_difference,
                                    std::abs(a.top_probability - b.top_probability));
    if (a.top_outcome != b.top_outcome) table.same_outcome = false;
  }
  return table;
}

// ---------------------------------------------------------------------------
// JSON

std::string to_string(BoundStatus status) {
  return status == BoundStatus::Ok ? "ok" : "degenerate_start";
}

void to_json(nlohmann::json &j, const EvolutionResult &r) {
  auto trace = nlohmann::json::array();
  for (const auto &[s, overlap] : r.ground_overlap_trace) trace.push_back({s, overlap});
  j = {{"steps", r.steps},
       {"dt", r.dt},
       {"norm_drift", r.norm_drift},
       {"accumulated_drift", r.accumulated_drift},
       {"ground_overlap_trace", trace}};
}

void to_json(nlohmann::json &j, const SpectralFlow &f) {
  j = {{"grid_points", f.grid.size()},
       {"levels", f.levels.empty() ? 0 : f.levels.front().size()},
       {"min_gap", f.min_gap},
       {"min_gap_s", f.min_gap_s},
       {"initial_gap", f.initial_gap},
       {"final_gap", f.final_gap}};
}

void to_json(nlohmann::json &j, const BoundDiagnostic &b) {
  j = {{"delta_ie", b.delta_ie},
       {"mean_energy", b.mean_energy},
       {"g_theta", b.g_theta},
       {"total_time", b.total_time},
       {"product", b.product},
       {"satisfied", b.satisfied},
       {"status", to_string(b.status)}};
}

void to_json(nlohmann::json &j, const StabilityTable &t) {
  auto rows = nlohmann::json::array();
  for (const auto &r : t.rows)
    rows.push_back({{"cutoff", r.cutoff},
                    {"top_outcome", r.identification.top_outcome},
                    {"top_probability", r.identification.top_probability},
                    {"identified", r.identification.identified}});
  j = {{"expected_witness", t.expected_witness},
       {"rows", rows},
       {"max_difference", t.max_difference},
       {"same_outcome", t.same_outcome}};
}

}  // namespace dioph
