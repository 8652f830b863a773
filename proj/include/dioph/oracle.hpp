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

#ifndef DIOPH_ORACLE_HPP
#define DIOPH_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dioph/fock.hpp"
#include "dioph/polynomial.hpp"

namespace dioph {

// Exhaustive ground truth for D^2 on the box 0 <= x_i <= box_i.
struct BoxSearchResult {
  std::vector<int> box;
  BigInt min_value;
  // Lexicographically ordered; at most SearchOptions::max_minimizers kept.
  std::vector<Occupation> minimizers;
  std::uint64_t overflow = 0;  // minimizers not listed
  std::uint64_t scanned = 0;

  bool has_solution() const { return min_value == 0; }
  std::uint64_t minimizer_count() const { return minimizers.size() + overflow; }
};

struct SearchOptions {
  double budget = 1e8;  // max number of tuples scanned
  std::size_t max_minimizers = 64;
  std::size_t workers = 0;  // 0: hardware concurrency
};

BoxSearchResult search_box(const Polynomial &p, std::span<const int> box,
                           const SearchOptions &options = {});

// Box that coincides with a Fock space: cutoff_i - 1 on each mode.
std::vector<int> box_of(const FockSpace &space);

// True iff the epsilon-free H_P diagonal and the box search agree on the
// minimum and on the minimizer set. The box must equal box_of(space).
bool agrees_with_problem_diagonal(const Polynomial &p, const FockSpace &space,
                                  std::span<const int> box);

void to_json(nlohmann::json &j, const BoxSearchResult &r);

}  // namespace dioph

#endif  // DIOPH_ORACLE_HPP
