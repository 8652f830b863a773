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

#ifndef DIOPH_STOCHASTIC_HPP
#define DIOPH_STOCHASTIC_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dioph/adiabatic.hpp"
#include "dioph/polynomial.hpp"

namespace dioph::stochastic {

enum class Distribution { Gaussian, Uniform };
enum class Engine { Oracle, Adiabatic };

std::string to_string(Distribution d);
std::string to_string(Engine e);
Distribution distribution_from_string(const std::string &name);
Engine engine_from_string(const std::string &name);

// Each coefficient is drawn around its exact integer value. sigmas holds one
// standard deviation per monomial of the canonical polynomial, or a single
// value applied to every coefficient. Uniform noise uses half-width
// sigma * sqrt(3) so both distributions share the standard deviation.
struct NoiseModel {
  std::vector<double> sigmas{0.2};
  Distribution distribution = Distribution::Gaussian;
  std::uint64_t seed = 1;
};

// A polynomial with the exponent structure of an integer one and real
// coefficients.
class PerturbedPolynomial {
 public:
  PerturbedPolynomial(const Polynomial &shape, std::vector<double> coefficients);

  const std::vector<double> &coefficients() const { return coefficients_; }
  double evaluate(std::span<const int> point) const;
  // D(n)^2 at every basis tuple of space, in flat-index order.
  Eigen::VectorXd squared_diagonal(const FockSpace &space) const;

 private:
  std::vector<std::vector<unsigned>> exponents_;
  std::vector<double> coefficients_;
};

PerturbedPolynomial sample_instance(const Polynomial &p, const NoiseModel &noise,
                                    std::mt19937_64 &rng);

struct EngineOptions {
  // Oracle engine: box = cutoffs - 1. Adiabatic engine: the Fock space.
  std::vector<int> cutoffs;
  std::vector<Complex> alphas;  // empty: 1 on every mode
  SymmetryBreaking symmetry_break;
  double total_time = 20.0;
  ScheduleShape shape = ScheduleShape::Linear;
  EvolveOptions evolve;
  double threshold = kDefaultThreshold;
};

struct CltPoint {
  std::size_t samples = 0;
  std::vector<std::vector<double>> batch_means;
  // Mean over all batches, per variable.
  std::vector<double> grand_mean;
  // Sample standard deviation of the batch means, per variable.
  std::vector<double> spread;
  // Euclidean norm of spread.
  double spread_norm = 0.0;
};

struct CltReport {
  NoiseModel noise;
  Engine engine = Engine::Oracle;
  std::size_t batches = 0;
  std::vector<int> box;
  // Argmin of the unperturbed D^2 on the box.
  Occupation reference_output;
  std::vector<CltPoint> points;
  // spread_norm(N_j) / spread_norm(N_{j+1}); NaN when the denominator is 0.
  std::vector<double> shrinkage_ratios;
  // Some sample output sat on the box upper boundary, so outputs may be
  // truncated rather than finite-variance; shrinkage is then not meaningful.
  bool boundary_hit = false;
  std::uint64_t boundary_samples = 0;
  // samples[j][b][i]: output tuple of sample i in batch b for N_j. Filled
  // only when requested.
  std::vector<std::vector<std::vector<Occupation>>> samples;
};

inline constexpr std::size_t kMinBatches = 20;

CltReport run_clt(const Polynomial &p, const NoiseModel &noise,
                  std::span<const std::size_t> sample_counts, std::size_t batches,
                  Engine engine, const EngineOptions &options,
                  bool keep_samples = false);

void to_json(nlohmann::json &j, const NoiseModel &n);
void to_json(nlohmann::json &j, const CltReport &r);
// "N,batch,sample,x1,...,xk" rows; requires a report run with keep_samples.
void write_samples_csv(std::ostream &out, const CltReport &r,
                       std::span<const std::string> variables);

}  // namespace dioph::stochastic

#endif  // DIOPH_STOCHASTIC_HPP
