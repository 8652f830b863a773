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

#include "dioph/cli/commands.hpp"

#include <ostream>

#include "dioph/error.hpp"
#include "dioph/hubbard.hpp"
#include "dioph/oracle.hpp"
#include "dioph/stochastic.hpp"

namespace dioph::cli {

using nlohmann::json;

namespace {

EvolveOptions evolve_options(const RunConfig &c) {
  EvolveOptions o;
  o.dt = c.dt;
  o.step_scale = c.step_scale;
  return o;
}

std::vector<int> oracle_box(const RunConfig &c, std::size_t k) {
  if (c.oracle.box.empty()) {
    auto box = resolve_cutoffs(c, k);
    for (int &b : box) b -= 1;
    return box;
  }
  if (c.oracle.box.size() == 1 && k > 1) return std::vector<int>(k, c.oracle.box[0]);
  if (c.oracle.box.size() != k)
    throw Error(ErrorKind::Config, "config", "oracle.box must have one entry per variable");
  return c.oracle.box;
}

}  // namespace

SolveResult run_solve(const RunConfig &c) {
  const ProblemInstance inst = build_instance(c);
  const EvolveOptions options = evolve_options(c);
  SolveResult r;

  std::vector<Eigen::VectorXd> probabilities;
  for (double t : c.time_ladder) {
    auto run = evolve(inst, Schedule(t, c.shape), options);
    LadderStep step;
    step.total_time = t;
    step.identification = identify(run.final_state, c.threshold);
    step.steps = run.steps;
    step.dt = run.dt;
    step.norm_drift = run.norm_drift;
    step.accumulated_drift = run.accumulated_drift;
    probabilities.push_back(run.final_state.probabilities());
    r.ladder.push_back(step);
    if (step.identification.identified && !c.full_ladder) break;
  }

  const LadderStep &last = r.ladder.back();
  const auto final_index = inst.space().index(last.identification.top_outcome);
  for (const auto &p : probabilities) r.final_outcome_probability.push_back(p[final_index]);

  r.verdict = decide(inst, last.identification);
  const Schedule last_schedule(last.total_time, c.shape);
  r.bound = bound_diagnostic(inst, last_schedule, c.g_theta);

  if (c.spectral.enabled && inst.space().dim() <= kMaxDenseDim)
    r.spectral = spectral_flow(inst, last_schedule, c.spectral.grid_points, c.spectral.levels);

  const double eps = inst.symmetry_break().epsilon;
  if (c.epsilon_series && eps > 0.0) {
    for (double e : {eps / 2.0, eps / 4.0}) {
      const ProblemInstance variant = build_instance(c, e);
      auto run = evolve(variant, last_schedule, options);
      EpsilonRun er{e, identify(run.final_state, c.threshold)};
      if (er.identification.top_outcome != last.identification.top_outcome ||
          er.identification.identified != last.identification.identified)
        r.epsilon_stable = false;
      r.epsilon_series.push_back(std::move(er));
    }
    if (!r.epsilon_stable && r.verdict.status != VerdictStatus::Inconclusive) {
      r.verdict.status = VerdictStatus::Inconclusive;
      r.verdict.witness.reset();
      r.verdict.confidence.reset();
      r.verdict.advice = "outcome changes as epsilon is reduced; increase T or the cutoffs";
    }
  }

  r.cross_check = cross_check(inst, r.verdict, oracle_box(c, inst.space().modes()));
  return r;
}

json to_json(const SolveResult &r) {
  json ladder = json::array();
  for (std::size_t i = 0; i < r.ladder.size(); ++i) {
    const auto &s = r.ladder[i];
    ladder.push_back({{"T", s.total_time},
                      {"identification", s.identification},
                      {"final_outcome_probability", r.final_outcome_probability[i]},
                      {"steps", s.steps},
                      {"dt", s.dt},
                      {"norm_drift", s.norm_drift},
                      {"accumulated_drift", s.accumulated_drift}});
  }
  json series = json::array();
  for (const auto &e : r.epsilon_series)
    series.push_back({{"epsilon", e.epsilon}, {"identification", e.identification}});
  json j = {{"ladder", ladder},
            {"verdict", r.verdict},
            {"bound", r.bound},
            {"epsilon_series", {{"runs", series}, {"stable", r.epsilon_stable}}},
            {"cross_check", r.cross_check}};
  if (r.spectral) {
    j["spectral"] = {{"min_gap", r.spectral->min_gap},
                     {"min_gap_s", r.spectral->min_gap_s},
                     {"initial_gap", r.spectral->initial_gap},
                     {"final_gap", r.spectral->final_gap},
                     {"grid_points", r.spectral->grid.size()}};
  } else {
    j["spectral"] = nullptr;
  }
  return j;
}

json envelope(const std::string &command, const RunConfig &c) {
  return {{"schema_version", kSchemaVersion},
          {"artifact_version", kArtifactVersion},
          {"command", command},
          {"config", c}};
}

json command_solve(const RunConfig &c) {
  json j = envelope("solve", c);
  j["result"] = to_json(run_solve(c));
  return j;
}

json command_flow(const RunConfig &c, std::ostream *csv) {
  const ProblemInstance inst = build_instance(c);
  const Schedule schedule(c.time_ladder.front(), c.shape);
  const auto flow = spectral_flow(inst, schedule, c.spectral.grid_points, c.spectral.levels);
  if (csv) write_flow_csv(*csv, flow);
  json j = envelope("flow", c);
  j["result"] = {{"min_gap", flow.min_gap},
                 {"min_gap_s", flow.min_gap_s},
                 {"initial_gap", flow.initial_gap},
                 {"final_gap", flow.final_gap},
                 {"flow", flow}};
  return j;
}

json command_clt(const RunConfig &c, std::ostream *csv) {
  const Polynomial p = parse(c.equation);
  stochastic::NoiseModel noise;
  noise.sigmas = c.clt.sigmas;
  noise.distribution = c.clt.distribution;
  noise.seed = c.seed;

  stochastic::EngineOptions options;
  options.cutoffs = resolve_cutoffs(c, p.variable_count());
  options.alphas = c.alphas;
  options.total_time = c.clt.total_time;
  options.shape = c.shape;
  options.evolve = evolve_options(c);
  options.threshold = c.threshold;
  if (c.clt.engine == stochastic::Engine::Adiabatic)
    options.symmetry_break = build_instance(c).symmetry_break();

  const auto report = stochastic::run_clt(p, noise, c.clt.samples, c.clt.batches, c.clt.engine,
                                          options, csv != nullptr);
  if (csv) stochastic::write_samples_csv(*csv, report, p.variables());
  json j = envelope("clt", c);
  j["result"] = report;
  return j;
}

json command_hubbard(const RunConfig &c, std::ostream *csv) {
  const auto &h = c.hubbard;
  json j = envelope("hubbard", c);
  if (h.mode == "sweep") {
    auto options = hubbard::sweep_options();
    options.cutoff = h.cutoff;
    options.max_iterations = h.max_iterations;
    const auto table = hubbard::sweep_transition(h.filling, h.coordination, h.ratios, options);
    if (csv) hubbard::write_sweep_csv(*csv, table);
    j["result"] = table;
    j["result"]["equation"] = hubbard::as_diophantine(h.filling).render();
  } else {
    hubbard::LatticeModel model{h.sites, h.atoms, h.tunneling, h.interaction, h.filling};
    const hubbard::Lattice lattice(model);
    const auto spectrum = hubbard::diagonalize(lattice, c.spectral.levels);
    j["result"] = {{"model", model},
                   {"dimension", lattice.basis().dim()},
                   {"coordination", lattice.coordination()},
                   {"energies", spectrum.energies}};
  }
  return j;
}

json command_oracle(const RunConfig &c) {
  const Polynomial p = parse(c.equation);
  SearchOptions options;
  options.budget = c.oracle.budget;
  const auto result = search_box(p, oracle_box(c, p.variable_count()), options);
  json j = envelope("oracle", c);
  j["result"] = result;
  return j;
}

json command_stability(const RunConfig &c) {
  const ProblemInstance inst = build_instance(c);
  const auto table = truncation_stability(inst, Schedule(c.stability.total_time, c.shape),
                                          c.stability.cutoffs, evolve_options(c), c.threshold);
  json j = envelope("stability", c);
  j["result"] = table;
  return j;
}

}  // namespace dioph::cli
