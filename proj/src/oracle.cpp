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

#include "dioph/oracle.hpp"

#include <algorithm>
#include <limits>

#include "dioph/error.hpp"
#include "dioph/hamiltonian.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

namespace {

struct ChunkResult {
  BigInt min_value = -1;
  std::vector<Occupation> minimizers;
  std::uint64_t count = 0;
};

}  // namespace

BoxSearchResult search_box(const Polynomial &p, std::span<const int> box,
                           const SearchOptions &options) {
  if (box.size() != p.variable_count())
    throw Error(ErrorKind::Precondition, "oracle",
                "box has " + std::to_string(box.size()) + " bounds, polynomial has " +
                    std::to_string(p.variable_count()) + " variables");
  double total = 1.0;
  for (int b : box) {
    if (b < 0) throw Error(ErrorKind::Precondition, "oracle", "box bounds must be non-negative");
    total *= static_cast<double>(b) + 1.0;
  }
  if (total > options.budget)
    throw Error(ErrorKind::Budget, "oracle",
                "box holds " + std::to_string(total) + " tuples, budget is " +
                    std::to_string(options.budget));
  const auto n_tuples = static_cast<std::uint64_t>(total);

  // Contiguous flat-index chunks; lexicographic tuple order within and across
  // chunks, so an in-order merge is deterministic.
  const std::uint64_t chunk_size = std::max<std::uint64_t>(4096, n_tuples / 64 + 1);
  const std::size_t n_chunks = static_cast<std::size_t>((n_tuples + chunk_size - 1) / chunk_size);
  std::vector<ChunkResult> chunks(n_chunks);

  parallel_for(
      n_chunks,
      [&](std::size_t c) {
        auto &out = chunks[c];
        const std::uint64_t begin = c * chunk_size;
        const std::uint64_t end = std::min(n_tuples, begin + chunk_size);
        std::vector<std::uint64_t> point(box.size());
        for (std::uint64_t flat = begin; flat < end; ++flat) {
          std::uint64_t rest = flat;
          for (std::size_t i = box.size(); i-- > 0;) {
            const auto extent = static_cast<std::uint64_t>(box[i]) + 1;
            point[i] = rest % extent;
            rest /= extent;
          }
          const BigInt d = p.evaluate(std::span<const std::uint64_t>(point));
          const BigInt sq = d * d;
          if (out.min_value < 0 || sq < out.min_value) {
            out.min_value = sq;
            out.minimizers.clear();
            out.count = 0;
          }
          if (sq == out.min_value) {
            if (out.minimizers.size() < options.max_minimizers)
              out.minimizers.emplace_back(point.begin(), point.end());
            ++out.count;
          }
        }
      },
      options.workers);

  BoxSearchResult result;
  result.box.assign(box.begin(), box.end());
  result.scanned = n_tuples;
  result.min_value = -1;
  for (const auto &c : chunks)
    if (c.count > 0 && (result.min_value < 0 || c.min_value < result.min_value))
      result.min_value = c.min_value;
  std::uint64_t count = 0;
  for (auto &c : chunks) {
    if (c.count == 0 || c.min_value != result.min_value) continue;
    count += c.count;
    for (auto &m : c.minimizers)
      if (result.minimizers.size() < options.max_minimizers)
        result.minimizers.push_back(std::move(m));
  }
  result.overflow = count - result.minimizers.size();
  return result;
}

std::vector<int> box_of(const FockSpace &space) {
  std::vector<int> box(space.cutoffs());
  for (auto &b : box) b -= 1;
  return box;
}

bool agrees_with_problem_diagonal(const Polynomial &p, const FockSpace &space,
                                  std::span<const int> box) {
  const auto expected = box_of(space);
  if (!std::equal(box.begin(), box.end(), expected.begin(), expected.end()))
    throw Error(ErrorKind::Precondition, "oracle",
                "box must equal the cutoffs minus one to compare with H_P");
  const auto oracle = search_box(p, box);
  const auto diag = problem_diagonal(ProblemInstance(p, space));
  const double min_diag = diag.minCoeff();
  std::vector<Occupation> argmins;
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (diag(i) == min_diag) argmins.push_back(space.occupation(static_cast<std::size_t>(i)));

  if (BigInt(static_cast<std::uint64_t>(min_diag)) != oracle.min_value) return false;
  if (argmins.size() != oracle.minimizer_count()) return false;
  return std::equal(oracle.minimizers.begin(), oracle.minimizers.end(), argmins.begin());
}

void to_json(nlohmann::json &j, const BoxSearchResult &r) {
  nlohmann::json min_value;
  if (r.min_value <= std::numeric_limits<std::int64_t>::max())
    min_value = r.min_value.convert_to<std::int64_t>();
  else
    min_value = r.min_value.str();
  j = {{"box", r.box},
       {"min_value", min_value},
       {"has_solution", r.has_solution()},
       {"minimizers", r.minimizers},
       {"minimizer_overflow", r.overflow},
       {"scanned", r.scanned}};
}

}  // namespace dioph
