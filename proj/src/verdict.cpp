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

#include "dioph/verdict.hpp"

#include <algorithm>
#include <cmath>

#include "dioph/error.hpp"

namespace dioph {

namespace {

constexpr double kTieTolerance = 1e-12;

}  // namespace

Identification identify(const QuantumState &final_state, double threshold) {
  const Eigen::VectorXd probs = final_state.probabilities();
  // Index order is lexicographic, so the first index within tolerance of the
  // maximum is the smallest tied tuple.
  const double p_max = probs.maxCoeff();
  Eigen::Index best = -1;
  int ties = 0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (std::abs(probs(i) - p_max) <= kTieTolerance) {
      if (best < 0) best = i;
      ++ties;
    }
  }

  Identification id;
  id.top_outcome = final_state.space().occupation(static_cast<std::size_t>(best));
  id.top_probability = probs(best);
  id.threshold = threshold;
  id.tie = ties > 1;
  id.identified = !id.tie && id.top_probability > threshold;
  return id;
}

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Solution: return "solution";
    case VerdictStatus::NoSolutionProbable: return "no_solution_probable";
    case VerdictStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict decide(const Polynomial &p, const Identification &id) {
  Verdict v;
  v.top_outcome = id.top_outcome;
  v.top_probability = id.top_probability;
  v.threshold = id.threshold;
  if (!id.identified) {
    v.status = VerdictStatus::Inconclusive;
    v.advice = id.tie ? "maximal outcome probability is shared; increase T or the symmetry-breaking epsilon"
                      : "top outcome probability does not exceed the threshold; increase T";
    return v;
  }
  // Substitution check before any Solution is emitted.
  if (p.evaluate(std::span<const int>(id.top_outcome)) == 0) {
    v.status = VerdictStatus::Solution;
    v.witness = id.top_outcome;
    return v;
  }
  v.status = VerdictStatus::NoSolutionProbable;
  v.confidence = std::min(id.top_probability, std::nextafter(1.0, 0.0));
  return v;
}

CrossCheck cross_check(const ProblemInstance &inst, const Verdict &verdict,
                       std::span<const int> box) {
  const auto &space = inst.space();
  if (box.size() != space.modes())
    throw Error(ErrorKind::Precondition, "verdict", "box dimension does not match the instance");
  for (std::size_t i = 0; i < box.size(); ++i)
    if (box[i] < 0 || box[i] > space.cutoff(i) - 1)
      throw Error(ErrorKind::Precondition, "verdict",
                  "cross-check box exceeds the cutoff of mode " + std::to_string(i));

  CrossCheck out;
  out.oracle = search_box(inst.polynomial(), box);
  const auto &oracle = out.oracle;
  auto in_minimizers = [&](const Occupation &t) {
    return std::find(oracle.minimizers.begin(), oracle.minimizers.end(), t) !=
           oracle.minimizers.end();
  };
  switch (verdict.status) {
    case VerdictStatus::Solution:
      out.agrees = oracle.has_solution() && in_minimizers(*verdict.witness);
      out.detail = out.agrees ? "witness is an oracle zero"
                              : "oracle does not list the witness among its zeros";
      break;
    case VerdictStatus::NoSolutionProbable:
      out.agrees = !oracle.has_solution();
      out.detail = out.agrees ? "oracle finds no zero in the box"
                              : "oracle finds a zero the run missed";
      if (out.agrees && !in_minimizers(verdict.top_outcome))
        out.detail += "; top outcome is not an oracle minimizer of D^2";
      break;
    case VerdictStatus::Inconclusive:
      out.agrees = true;
      out.detail = "verdict inconclusive; nothing to compare";
      break;
  }
  return out;
}

void to_json(nlohmann::json &j, const Identification &id) {
  j = {{"top_outcome", id.top_outcome},
       {"top_probability", id.top_probability},
       {"threshold", id.threshold},
       {"identified", id.identified},
       {"tie", id.tie}};
}

void to_json(nlohmann::json &j, const Verdict &v) {
  j = {{"status", to_string(v.status)},
       {"top_outcome", v.top_outcome},
       {"top_probability", v.top_probability},
       {"threshold", v.threshold}};
  j["witness"] = v.witness ? nlohmann::json(*v.witness) : nlohmann::json(nullptr);
  j["confidence"] = v.confidence ? nlohmann::json(*v.confidence) : nlohmann::json(nullptr);
  if (!v.advice.empty()) j["advice"] = v.advice;
}

void to_json(nlohmann::json &j, const CrossCheck &c) {
  j = {{"oracle", c.oracle}, {"agrees", c.agrees}, {"detail", c.detail}};
}

}  // namespace dioph
