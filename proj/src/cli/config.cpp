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

#include "dioph/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "dioph/error.hpp"

namespace dioph::cli {

namespace {

using nlohmann::json;

Error config_error(const std::string &what) { return Error(ErrorKind::Config, "config", what); }

void check_keys(const json &j, const std::set<std::string> &allowed, const std::string &where) {
  if (!j.is_object()) throw config_error(where + " must be an object");
  for (const auto &[key, value] : j.items())
    if (!allowed.contains(key)) throw config_error("unknown key '" + key + "' in " + where);
}

template <typename T>
void read(const json &j, const char *key, T &out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception &) {
    throw config_error(std::string("key '") + key + "' has the wrong type");
  }
}

Complex complex_from_json(const json &v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw config_error("alphas entries must be numbers or [re, im] pairs");
}

}  // namespace

RunConfig config_from_json(const json &j) {
  check_keys(j, {"equation", "cutoffs", "alphas", "epsilon", "weights", "schedule", "integrator",
                 "threshold", "g_theta", "seed", "epsilon_series", "spectral", "stability", "clt",
                 "hubbard", "oracle"},
             "config");
  RunConfig c;
  read(j, "equation", c.equation);
  if (j.contains("cutoffs")) {
    if (j["cutoffs"].is_number_integer())
      c.cutoffs = {j["cutoffs"].get<int>()};
    else
      read(j, "cutoffs", c.cutoffs);
  }
  if (j.contains("alphas")) {
    if (!j["alphas"].is_array()) throw config_error("alphas must be an array");
    for (const auto &a : j["alphas"]) c.alphas.push_back(complex_from_json(a));
  }
  if (j.contains("epsilon") && !j["epsilon"].is_null()) {
    double e = 0.0;
    read(j, "epsilon", e);
    c.epsilon = e;
  }
  read(j, "weights", c.weights);
  if (j.contains("schedule")) {
    const auto &s = j["schedule"];
    check_keys(s, {"shape", "T", "full_ladder"}, "schedule");
    std::string shape = to_string(c.shape);
    read(s, "shape", shape);
    c.shape = schedule_shape_from_string(shape);
    if (s.contains("T") && s["T"].is_number())
      c.time_ladder = {s["T"].get<double>()};
    else
      read(s, "T", c.time_ladder);
    read(s, "full_ladder", c.full_ladder);
  }
  if (j.contains("integrator")) {
    const auto &s = j["integrator"];
    check_keys(s, {"dt", "step_scale"}, "integrator");
    read(s, "dt", c.dt);
    read(s, "step_scale", c.step_scale);
  }
  read(j, "threshold", c.threshold);
  read(j, "g_theta", c.g_theta);
  read(j, "seed", c.seed);
  read(j, "epsilon_series", c.epsilon_series);
  if (j.contains("spectral")) {
    const auto &s = j["spectral"];
    check_keys(s, {"enabled", "grid_points", "levels"}, "spectral");
    read(s, "enabled", c.spectral.enabled);
    read(s, "grid_points", c.spectral.grid_points);
    read(s, "levels", c.spectral.levels);
  }
  if (j.contains("stability")) {
    const auto &s = j["stability"];
    check_keys(s, {"cutoffs", "T"}, "stability");
    read(s, "cutoffs", c.stability.cutoffs);
    read(s, "T", c.stability.total_time);
  }
  if (j.contains("clt")) {
    const auto &s = j["clt"];
    check_keys(s, {"sigma", "distribution", "samples", "batches", "engine", "T"}, "clt");
    if (s.contains("sigma") && s["sigma"].is_number())
      c.clt.sigmas = {s["sigma"].get<double>()};
    else
      read(s, "sigma", c.clt.sigmas);
    std::string dist = stochastic::to_string(c.clt.distribution);
    read(s, "distribution", dist);
    c.clt.distribution = stochastic::distribution_from_string(dist);
    read(s, "samples", c.clt.samples);
    read(s, "batches", c.clt.batches);
    std::string engine = stochastic::to_string(c.clt.engine);
    read(s, "engine", engine);
    c.clt.engine = stochastic::engine_from_string(engine);
    read(s, "T", c.clt.total_time);
  }
  if (j.contains("hubbard")) {
    const auto &s = j["hubbard"];
    check_keys(s, {"mode", "m", "z", "ratios", "sites", "atoms", "J", "U", "cutoff", "max_iterations"},
               "hubbard");
    read(s, "mode", c.hubbard.mode);
    read(s, "m", c.hubbard.filling);
    read(s, "z", c.hubbard.coordination);
    read(s, "ratios", c.hubbard.ratios);
    read(s, "sites", c.hubbard.sites);
    read(s, "atoms", c.hubbard.atoms);
    read(s, "J", c.hubbard.tunneling);
    read(s, "U", c.hubbard.interaction);
    read(s, "cutoff", c.hubbard.cutoff);
    read(s, "max_iterations", c.hubbard.max_iterations);
  }
  if (j.contains("oracle")) {
    const auto &s = j["oracle"];
    check_keys(s, {"box", "budget"}, "oracle");
    if (s.contains("box") && s["box"].is_number_integer())
      c.oracle.box = {s["box"].get<int>()};
    else
      read(s, "box", c.oracle.box);
    read(s, "budget", c.oracle.budget);
  }
  return c;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw config_error("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void to_json(json &j, const RunConfig &c) {
  auto alphas = json::array();
  for (const auto &a : c.alphas) alphas.push_back({a.real(), a.imag()});
  j = {{"equation", c.equation},
       {"cutoffs", c.cutoffs},
       {"alphas", alphas},
       {"epsilon", c.epsilon ? json(*c.epsilon) : json(nullptr)},
       {"weights", c.weights},
       {"schedule", {{"shape", to_string(c.shape)}, {"T", c.time_ladder}, {"full_ladder", c.full_ladder}}},
       {"integrator", {{"dt", c.dt}, {"step_scale", c.step_scale}}},
       {"threshold", c.threshold},
       {"g_theta", c.g_theta},
       {"seed", c.seed},
       {"epsilon_series", c.epsilon_series},
       {"spectral", {{"enabled", c.spectral.enabled}, {"grid_points", c.spectral.grid_points}, {"levels", c.spectral.levels}}},
       {"stability", {{"cutoffs", c.stability.cutoffs}, {"T", c.stability.total_time}}},
       {"clt",
        {{"sigma", c.clt.sigmas},
         {"distribution", stochastic::to_string(c.clt.distribution)},
         {"samples", c.clt.samples},
         {"batches", c.clt.batches},
         {"engine", stochastic::to_string(c.clt.engine)},
         {"T", c.clt.total_time}}},
       {"hubbard",
        {{"mode", c.hubbard.mode},
         {"m", c.hubbard.filling},
         {"z", c.hubbard.coordination},
         {"ratios", c.hubbard.ratios},
         {"sites", c.hubbard.sites},
         {"atoms", c.hubbard.atoms},
         {"J", c.hubbard.tunneling},
         {"U", c.hubbard.interaction},
         {"cutoff", c.hubbard.cutoff},
         {"max_iterations", c.hubbard.max_iterations}}},
       {"oracle", {{"box", c.oracle.box}, {"budget", c.oracle.budget}}}};
}

void validate(const RunConfig &c) {
  for (int n : c.cutoffs)
    if (n < 2) throw config_error("cutoffs must be at least 2");
  if (c.epsilon && !(*c.epsilon >= 0.0)) throw config_error("epsilon must be non-negative");
  if (c.time_ladder.empty()) throw config_error("schedule.T needs at least one value");
  for (std::size_t i = 0; i < c.time_ladder.size(); ++i) {
    if (!(c.time_ladder[i] > 0.0)) throw config_error("schedule.T values must be positive");
    if (i > 0 && c.time_ladder[i] <= c.time_ladder[i - 1])
      throw config_error("schedule.T ladder must be strictly ascending");
  }
  if (c.dt < 0.0) throw config_error("integrator.dt must be non-negative");
  if (!(c.step_scale > 0.0)) throw config_error("integrator.step_scale must be positive");
  if (!(c.threshold >= 0.5 && c.threshold < 1.0)) throw config_error("threshold must lie in [0.5, 1)");
  if (!(c.g_theta > 0.0)) throw config_error("g_theta must be positive");
  if (c.spectral.grid_points < 11) throw config_error("spectral.grid_points must be at least 11");
  if (c.spectral.levels < 2) throw config_error("spectral.levels must be at least 2");
  if (c.clt.batches < stochastic::kMinBatches)
    throw config_error("clt.batches must be at least " + std::to_string(stochastic::kMinBatches));
  if (c.clt.samples.empty()) throw config_error("clt.samples needs at least one value");
  if (c.hubbard.mode != "sweep" && c.hubbard.mode != "lattice")
    throw config_error("hubbard.mode must be 'sweep' or 'lattice'");
}

std::vector<int> resolve_cutoffs(const RunConfig &c, std::size_t k) {
  std::vector<int> cutoffs = c.cutoffs;
  if (cutoffs.empty()) cutoffs.assign(k, 16);
  if (cutoffs.size() == 1 && k > 1) cutoffs.assign(k, cutoffs[0]);
  if (cutoffs.size() != k) throw config_error("cutoffs must have one entry per variable");
  return cutoffs;
}

ProblemInstance build_instance(const RunConfig &c) {
  return build_instance(c, -1.0);
}

// epsilon < 0 means "use the configured or default value".
ProblemInstance build_instance(const RunConfig &c, double epsilon) {
  if (c.equation.empty()) throw config_error("no equation given");
  auto p = parse(c.equation);
  const std::size_t k = p.variable_count();
  if (k == 0) throw config_error("equation has no variables");

  FockSpace space(resolve_cutoffs(c, k));

  std::vector<Complex> alphas = c.alphas;
  if (alphas.empty()) alphas.assign(k, Complex(1.0, 0.0));
  if (alphas.size() == 1 && k > 1) alphas.assign(k, alphas[0]);
  if (alphas.size() != k) throw config_error("alphas must have one entry per variable");

  SymmetryBreaking sb;
  sb.weights = c.weights.empty() ? prime_weights(k) : c.weights;
  if (sb.weights.size() != k) throw config_error("weights must have one entry per variable");
  if (epsilon >= 0.0)
    sb.epsilon = epsilon;
  else
    sb.epsilon = c.epsilon ? *c.epsilon : default_epsilon(p, space, sb.weights);
  return ProblemInstance(std::move(p), std::move(space), std::move(alphas), std::move(sb));
}

}  // namespace dioph::cli
