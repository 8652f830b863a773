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

#ifndef DIOPH_VERDICT_HPP
#define DIOPH_VERDICT_HPP

#include <optional>
#include <span>
#include <string>

#include "dioph/fock.hpp"
#include "dioph/hamiltonian.hpp"
#include "dioph/oracle.hpp"

namespace dioph {

inline constexpr double kDefaultThreshold = 0.5;

struct Identification {
  Occupation top_outcome;
  double top_probability = 0.0;
  double threshold = kDefaultThreshold;
  // top_probability > threshold and the maximum is not shared.
  bool identified = false;
  bool tie = false;
};

// Basis outcome of maximal probability. Ties (within 1e-12) report the
// lexicographically smallest tuple and are never identified.
Identification identify(const QuantumState &final_state,
                        double threshold = kDefaultThreshold);

enum class VerdictStatus { Solution, NoSolutionProbable, Inconclusive };

std::string to_string(VerdictStatus status);

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  // Set only for Solution; D(witness) == 0 has been checked by substitution.
  std::optional<Occupation> witness;
  // NoSolutionProbable only; always strictly below 1.
  std::optional<double> confidence;
  Occupation top_outcome;
  double top_probability = 0.0;
  double threshold = kDefaultThreshold;
  std::string advice;
};

Verdict decide(const Polynomial &p, const Identification &id);
inline Verdict decide(const ProblemInstance &inst, const Identification &id) {
  return decide(inst.polynomial(), id);
}

struct CrossCheck {
  BoxSearchResult oracle;
  bool agrees = false;
  std::string detail;
};

// Compares a verdict with exhaustive search over box (which must lie inside
// the instance cutoffs). Inconclusive verdicts agree vacuously.
CrossCheck cross_check(const ProblemInstance &inst, const Verdict &verdict,
                       std::span<const int> box);

void to_json(nlohmann::json &j, const Identification &id);
void to_json(nlohmann::json &j, const Verdict &v);
void to_json(nlohmann::json &j, const CrossCheck &c);

}  // namespace dioph

#endif  // DIOPH_VERDICT_HPP
