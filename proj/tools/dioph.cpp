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

// Command-line driver: dioph <solve|flow|clt|hubbard|oracle|stability> [options]

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dioph/cli/commands.hpp"
#include "dioph/error.hpp"
#include "json.hpp"

namespace {

using dioph::cli::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitBudget = 4;

struct Overrides {
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  bool timing = false;

  std::optional<std::string> equation;
  std::vector<int> cutoffs;
  std::vector<double> alphas;
  std::optional<double> epsilon;
  std::vector<double> weights;
  std::optional<std::string> shape;
  std::vector<double> time_ladder;
  bool full_ladder = false;
  std::optional<double> dt;
  std::optional<double> threshold;
  std::optional<double> g_theta;
  std::optional<std::uint64_t> seed;
  bool no_epsilon_series = false;
  std::optional<std::size_t> grid_points;
  std::optional<std::size_t> levels;
  std::vector<int> box;
  std::optional<double> budget;
  std::vector<std::size_t> samples;
  std::optional<std::size_t> batches;
  std::vector<double> sigmas;
  std::optional<std::string> distribution;
  std::optional<std::string> engine;
  std::optional<std::string> mode;
  std::optional<int> filling;
  std::optional<int> coordination;
  std::vector<double> ratios;
  std::vector<int> stability_cutoffs;
};

void add_common(CLI::App *sub, Overrides &o) {
  sub->add_option("-c,--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("-o,--out", o.out_path, "report path (default: stdout)");
  sub->add_flag("--timing", o.timing, "add wall-clock timing to the report");
  sub->add_option("-e,--equation", o.equation, "polynomial equation, e.g. \"x^2 - 2*y^2\"");
  sub->add_option("--cutoffs", o.cutoffs, "Fock cutoff per variable (one value: all)");
  sub->add_option("--alphas", o.alphas, "real coherent displacement per variable");
  sub->add_option("--epsilon", o.epsilon, "symmetry-breaking strength");
  sub->add_option("--weights", o.weights, "symmetry-breaking weights");
  sub->add_option("--shape", o.shape, "schedule shape: linear | smoothstep");
  sub->add_option("-T,--time", o.time_ladder, "total time or ascending ladder");
  sub->add_option("--dt", o.dt, "fixed integrator step (0: automatic)");
  sub->add_option("--threshold", o.threshold, "identification threshold in [0.5, 1)");
  sub->add_option("--seed", o.seed, "random seed");
}

RunConfig resolve(const Overrides &o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : dioph::cli::load_config(o.config_path);
  if (o.equation) c.equation = *o.equation;
  if (!o.cutoffs.empty()) c.cutoffs = o.cutoffs;
  if (!o.alphas.empty()) {
    c.alphas.clear();
    for (double a : o.alphas) c.alphas.emplace_back(a, 0.0);
  }
  if (o.epsilon) c.epsilon = *o.epsilon;
  if (!o.weights.empty()) c.weights = o.weights;
  if (o.shape) c.shape = dioph::schedule_shape_from_string(*o.shape);
  if (!o.time_ladder.empty()) c.time_ladder = o.time_ladder;
  if (o.full_ladder) c.full_ladder = true;
  if (o.dt) c.dt = *o.dt;
  if (o.threshold) c.threshold = *o.threshold;
  if (o.g_theta) c.g_theta = *o.g_theta;
  if (o.seed) c.seed = *o.seed;
  if (o.no_epsilon_series) c.epsilon_series = false;
  if (o.grid_points) c.spectral.grid_points = *o.grid_points;
  if (o.levels) c.spectral.levels = *o.levels;
  if (!o.box.empty()) c.oracle.box = o.box;
  if (o.budget) c.oracle.budget = *o.budget;
  if (!o.samples.empty()) c.clt.samples = o.samples;
  if (o.batches) c.clt.batches = *o.batches;
  if (!o.sigmas.empty()) c.clt.sigmas = o.sigmas;
  if (o.distribution) c.clt.distribution = dioph::stochastic::distribution_from_string(*o.distribution);
  if (o.engine) c.clt.engine = dioph::stochastic::engine_from_string(*o.engine);
  if (o.mode) c.hubbard.mode = *o.mode;
  if (o.filling) c.hubbard.filling = *o.filling;
  if (o.coordination) c.hubbard.coordination = *o.coordination;
  if (!o.ratios.empty()) c.hubbard.ratios = o.ratios;
  if (!o.stability_cutoffs.empty()) c.stability.cutoffs = o.stability_cutoffs;
  dioph::cli::validate(c);
  return c;
}

int exit_code(dioph::ErrorKind kind) {
  switch (kind) {
    case dioph::ErrorKind::Config:
    case dioph::ErrorKind::Precondition:
      return kExitConfig;
    case dioph::ErrorKind::Numerical:
      return kExitNumerical;
    case dioph::ErrorKind::Budget:
      return kExitBudget;
  }
  return kExitNumerical;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Adiabatic Diophantine solver and Bose-Hubbard tools"};
  app.require_subcommand(1);
  Overrides o;

  auto *solve = app.add_subcommand("solve", "run the T-ladder and report a verdict");
  add_common(solve, o);
  solve->add_flag("--full-ladder", o.full_ladder, "run every ladder time");
  solve->add_option("--g-theta", o.g_theta, "constant g in the bound 4 < g T dE");
  solve->add_flag("--no-epsilon-series", o.no_epsilon_series, "skip the epsilon/2, epsilon/4 reruns");
  solve->add_option("--box", o.box, "cross-check box");

  auto *flow = app.add_subcommand("flow", "spectral flow of H(s) as CSV");
  add_common(flow, o);
  flow->add_option("--csv", o.csv_path, "CSV output path");
  flow->add_option("--grid-points", o.grid_points, "grid size (>= 11)");
  flow->add_option("--levels", o.levels, "number of levels");

  auto *clt = app.add_subcommand("clt", "noisy-coefficient batch experiment");
  add_common(clt, o);
  clt->add_option("--csv", o.csv_path, "per-sample CSV output path");
  clt->add_option("--samples", o.samples, "samples per batch, one value per point");
  clt->add_option("--batches", o.batches, "batches per point (>= 20)");
  clt->add_option("--sigma", o.sigmas, "coefficient standard deviation(s)");
  clt->add_option("--distribution", o.distribution, "gaussian | uniform");
  clt->add_option("--engine", o.engine, "oracle | adiabatic");

  auto *hub = app.add_subcommand("hubbard", "mean-field sweep or lattice spectrum");
  add_common(hub, o);
  hub->add_option("--csv", o.csv_path, "sweep CSV output path");
  hub->add_option("--mode", o.mode, "sweep | lattice");
  hub->add_option("-m,--filling", o.filling, "filling m");
  hub->add_option("-z,--coordination", o.coordination, "coordination number z");
  hub->add_option("--ratios", o.ratios, "U/J grid");

  auto *oracle = app.add_subcommand("oracle", "exhaustive box search");
  add_common(oracle, o);
  oracle->add_option("--box", o.box, "upper bound per variable (one value: all)");
  oracle->add_option("--budget", o.budget, "maximum tuples scanned");

  auto *stability = app.add_subcommand("stability", "truncation stability over a cutoff ladder");
  add_common(stability, o);
  stability->add_option("--ladder", o.stability_cutoffs, "ascending cutoffs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const RunConfig c = resolve(o);
    std::ofstream csv_file;
    std::ostream *csv = nullptr;
    if (!o.csv_path.empty()) {
      csv_file.open(o.csv_path);
      if (!csv_file) throw dioph::Error(dioph::ErrorKind::Config, "cli", "cannot open " + o.csv_path);
      csv = &csv_file;
    }

    nlohmann::json report;
    if (solve->parsed())
      report = dioph::cli::command_solve(c);
    else if (flow->parsed())
      report = dioph::cli::command_flow(c, csv);
    else if (clt->parsed())
      report = dioph::cli::command_clt(c, csv);
    else if (hub->parsed())
      report = dioph::cli::command_hubbard(c, csv);
    else if (oracle->parsed())
      report = dioph::cli::command_oracle(c);
    else
      report = dioph::cli::command_stability(c);

    if (o.timing) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      report["timing"] = {{"wall_seconds", elapsed.count()}};
    }

    const std::string text = report.dump(2) + "\n";
    if (o.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(o.out_path);
      if (!out) throw dioph::Error(dioph::ErrorKind::Config, "cli", "cannot open " + o.out_path);
      out << text;
    }
    if (solve->parsed()) {
      const auto &status = report["result"]["verdict"]["status"];
      std::cerr << "verdict: " << status.get<std::string>() << "\n";
    }
    return kExitOk;
  } catch (const dioph::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::bad_alloc &) {
    std::cerr << "error: out of memory\n";
    return kExitBudget;
  }
}
