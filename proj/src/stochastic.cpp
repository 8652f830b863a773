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

#include "dioph/stochastic.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "dioph/error.hpp"
#include "dioph/parallel.hpp"

namespace dioph::stochastic {

namespace {

Error clt_error(ErrorKind kind, const std::string &what) {
  return Error(kind, "stochastic", what);
}

double draw(Distribution d, double mean, double sigma, std::mt19937_64 &rng) {
  if (sigma == 0.0) return mean;
  if (d == Distribution::Gaussian) return std::normal_distribution<double>(mean, sigma)(rng);
  const double half = sigma * std::sqrt(3.0);
  return std::uniform_real_distribution<double>(mean - half, mean + half)(rng);
}

// Product of the per-variable powers for each (tuple, monomial) pair.
Eigen::MatrixXd monomial_table(const Polynomial &p, const FockSpace &space) {
  Eigen::MatrixXd table(static_cast<Eigen::Index>(space.dim()),
                        static_cast<Eigen::Index>(p.monomials().size()));
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    for (std::size_t m = 0; m < p.monomials().size(); ++m) {
      double v = 1.0;
      const auto &e = p.monomials()[m].exponents;
      for (std::size_t i = 0; i < e.size(); ++i)
        v *= std::pow(static_cast<double>(space.occupation(idx, i)), static_cast<double>(e[i]));
      table(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(m)) = v;
    }
  }
  return table;
}

}  // namespace

std::string to_string(Distribution d) {
  return d == Distribution::Gaussian ? "gaussian" : "uniform";
}

std::string to_string(Engine e) { return e == Engine::Oracle ? "oracle" : "adiabatic"; }

Distribution distribution_from_string(const std::string &name) {
  if (name == "gaussian") return Distribution::Gaussian;
  if (name == "uniform") return Distribution::Uniform;
  throw clt_error(ErrorKind::Config, "unknown distribution '" + name + "'");
}

Engine engine_from_string(const std::string &name) {
  if (name == "oracle") return Engine::Oracle;
  if (name == "adiabatic") return Engine::Adiabatic;
  throw clt_error(ErrorKind::Config, "unknown engine '" + name + "'");
}

// ---------------------------------------------------------------------------
// PerturbedPolynomial

PerturbedPolynomial::PerturbedPolynomial(const Polynomial &shape,
                                         std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != shape.monomials().size())
    throw clt_error(ErrorKind::Precondition, "need one coefficient per monomial");
  for (const auto &m : shape.monomials()) exponents_.push_back(m.exponents);
}

double PerturbedPolynomial::evaluate(std::span<const int> point) const {
  double total = 0.0;
  for (std::size_t m = 0; m < coefficients_.size(); ++m) {
    double term = coefficients_[m];
    for (std::size_t i = 0; i < point.size(); ++i)
      term *= std::pow(static_cast<double>(point[i]), static_cast<double>(exponents_[m].at(i)));
    total += term;
  }
  return total;
}

Eigen::VectorXd PerturbedPolynomial::squared_diagonal(const FockSpace &space) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(space.dim()));
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const auto occ = space.occupation(idx);
    const double d = evaluate(occ);
    out(static_cast<Eigen::Index>(idx)) = d * d;
  }
  return out;
}

PerturbedPolynomial sample_instance(const Polynomial &p, const NoiseModel &noise,
                                    std::mt19937_64 &rng) {
  const auto &monomials = p.monomials();
  if (noise.sigmas.size() != 1 && noise.sigmas.size() != monomials.size())
    throw clt_error(ErrorKind::Precondition,
                    "noise model needs one sigma or one per monomial (" +
                        std::to_string(monomials.size()) + ")");
  std::vector<double> coefficients(monomials.size());
  for (std::size_t m = 0; m < monomials.size(); ++m) {
    const double sigma = noise.sigmas.size() == 1 ? noise.sigmas[0] : noise.sigmas[m];
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
      throw clt_error(ErrorKind::Precondition, "sigma must be finite and non-negative");
    coefficients[m] = draw(noise.distribution, monomials[m].coefficient.convert_to<double>(), sigma, rng);
  }
  return PerturbedPolynomial(p, std::move(coefficients));
}

// ---------------------------------------------------------------------------
// CLT experiment

CltReport run_clt(const Polynomial &p, const NoiseModel &noise,
                  std::span<const std::size_t> sample_counts, std::size_t batches,
                  Engine engine, const EngineOptions &options, bool keep_samples) {
  if (batches < kMinBatches)
    throw clt_error(ErrorKind::Precondition,
                    "need at least " + std::to_string(kMinBatches) + " batches");
  if (sample_counts.empty()) throw clt_error(ErrorKind::Precondition, "no sample counts given");
  for (auto n : sample_counts)
    if (n == 0) throw clt_error(ErrorKind::Precondition, "sample counts must be positive");
  if (p.is_zero()) throw clt_error(ErrorKind::Precondition, "polynomial is identically zero");

  const FockSpace space(options.cutoffs);
  if (space.modes() != p.variable_count())
    throw clt_error(ErrorKind::Precondition, "cutoffs do not match the variable count");
  const std::size_t k = space.modes();

  CltReport report;
  report.noise = noise;
  report.engine = engine;
  report.batches = batches;
  report.box = box_of(space);
  report.reference_output = search_box(p, report.box).minimizers.front();

  // Oracle engine: D = table * coefficients over the box.
  Eigen::MatrixXd table;
  // Adiabatic engine: shared initial Hamiltonian, initial state and weights.
  std::optional<ProblemInstance> base;
  std::optional<OperatorMatrix> h_initial;
  std::optional<QuantumState> psi0;
  Eigen::VectorXd symmetry_term = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dim()));
  if (engine == Engine::Oracle) {
    table = monomial_table(p, space);
  } else {
    auto alphas = options.alphas.empty() ? std::vector<Complex>(k, Complex(1.0, 0.0)) : options.alphas;
    base.emplace(p, space, std::move(alphas), options.symmetry_break);
    h_initial.emplace(initial_hamiltonian(*base));
    psi0.emplace(initial_ground_state(*base));
    const auto &sb = options.symmetry_break;
    if (sb.epsilon > 0.0)
      for (std::size_t idx = 0; idx < space.dim(); ++idx)
        for (std::size_t i = 0; i < k; ++i)
          symmetry_term(static_cast<Eigen::Index>(idx)) +=
              sb.epsilon * sb.weights[i] * space.occupation(idx, i);
  }

  auto sample_output = [&](const PerturbedPolynomial &sample) -> Occupation {
    if (engine == Engine::Oracle) {
      const Eigen::Map<const Eigen::VectorXd> c(sample.coefficients().data(),
                                                static_cast<Eigen::Index>(sample.coefficients().size()));
      const Eigen::VectorXd d = table * c;
      Eigen::Index best = 0;
      for (Eigen::Index i = 1; i < d.size(); ++i)
        if (d(i) * d(i) < d(best) * d(best)) best = i;
      return space.occupation(static_cast<std::size_t>(best));
    }
    const InterpolatedHamiltonian h(*h_initial, sample.squared_diagonal(space) + symmetry_term,
                                    Schedule(options.total_time, options.shape));
    const auto run = evolve(h, *psi0, options.evolve);
    return identify(run.final_state, options.threshold).top_outcome;
  };

  struct BatchResult {
    std::vector<double> mean;
    std::uint64_t boundary = 0;
    std::vector<Occupation> outputs;
  };
  const std::size_t n_points = sample_counts.size();
  std::vector<BatchResult> results(n_points * batches);

  parallel_for(results.size(), [&](std::size_t task) {
    const std::size_t j = task / batches;
    const std::size_t b = task % batches;
    const std::uint64_t n = sample_counts[j];
    // seed -> (N, batch) -> sequential samples.
    std::seed_seq seq{static_cast<std::uint32_t>(noise.seed), static_cast<std::uint32_t>(noise.seed >> 32),
                      static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32),
                      static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    auto &out = results[task];
    out.mean.assign(k, 0.0);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto output = sample_output(sample_instance(p, noise, rng));
      bool on_boundary = false;
      for (std::size_t v = 0; v < k; ++v) {
        out.mean[v] += output[v];
        on_boundary = on_boundary || output[v] == report.box[v];
      }
      if (on_boundary) ++out.boundary;
      if (keep_samples) out.outputs.push_back(output);
    }
    for (auto &m : out.mean) m /= static_cast<double>(n);
  });

  if (keep_samples) report.samples.resize(n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    CltPoint point;
    point.samples = sample_counts[j];
    point.grand_mean.assign(k, 0.0);
    point.spread.assign(k, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
      auto &r = results[j * batches + b];
      report.boundary_samples += r.boundary;
      point.batch_means.push_back(r.mean);
      for (std::size_t v = 0; v < k; ++v) point.grand_mean[v] += r.mean[v];
      if (keep_samples) report.samples[j].push_back(std::move(r.outputs));
    }
    for (auto &g : point.grand_mean) g /= static_cast<double>(batches);
    for (std::size_t v = 0; v < k; ++v) {
      double ss = 0.0;
      for (const auto &m : point.batch_means) ss += (m[v] - point.grand_mean[v]) * (m[v] - point.grand_mean[v]);
      point.spread[v] = std::sqrt(ss / static_cast<double>(batches - 1));
      point.spread_norm += point.spread[v] * point.spread[v];
    }
    point.spread_norm = std::sqrt(point.spread_norm);
    report.points.push_back(std::move(point));
  }
  report.boundary_hit = report.boundary_samples > 0;

  for (std::size_t j = 0; j + 1 < n_points; ++j) {
    const double denom = report.points[j + 1].spread_norm;
    report.shrinkage_ratios.push_back(denom > 0.0 ? report.points[j].spread_norm / denom
                                                  : std::numeric_limits<double>::quiet_NaN());
  }
  return report;
}

void to_json(nlohmann::json &j, const NoiseModel &n) {
  j = {{"sigmas", n.sigmas}, {"distribution", to_string(n.distribution)}, {"seed", n.seed}};
}

void to_json(nlohmann::json &j, const CltReport &r) {
  auto points = nlohmann::json::array();
  for (const auto &p : r.points)
    points.push_back({{"N", p.samples},
                      {"grand_mean", p.grand_mean},
                      {"spread", p.spread},
                      {"spread_norm", p.spread_norm},
                      {"batch_means", p.batch_means}});
  auto ratios = nlohmann::json::array();
  for (double x : r.shrinkage_ratios) ratios.push_back(std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr));
  j = {{"noise", r.noise},
       {"engine", to_string(r.engine)},
       {"batches", r.batches},
       {"box", r.box},
       {"reference_output", r.reference_output},
       {"points", points},
       {"shrinkage_ratios", ratios},
       {"boundary_hit", r.boundary_hit},
       {"boundary_samples", r.boundary_samples}};
}

void write_samples_csv(std::ostream &out, const CltReport &r,
                       std::span<const std::string> variables) {
  out << "N,batch,sample";
  for (const auto &v : variables) out << ',' << v;
  out << '\n';
  for (std::size_t j = 0; j < r.samples.size(); ++j)
    for (std::size_t b = 0; b < r.samples[j].size(); ++b)
      for (std::size_t i = 0; i < r.samples[j][b].size(); ++i) {
        out << r.points[j].samples << ',' << b << ',' << i;
        for (int x : r.samples[j][b][i]) out << ',' << x;
        out << '\n';
      }
}

}  // namespace dioph::stochastic
