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

#include <functional>

#include "dioph/error.hpp"
#include "dioph/oracle.hpp"
#include "doctest.h"

using dioph::Occupation;

namespace {

// Reference scan with a closed-form integrand.
std::pair<long long, std::vector<Occupation>> scan2(int bx, int by,
                                                    const std::function<long long(int, int)> &f) {
  long long best = -1;
  std::vector<Occupation> where;
  for (int x = 0; x <= bx; ++x)
    for (int y = 0; y <= by; ++y) {
      const long long v = f(x, y) * f(x, y);
      if (best < 0 || v < best) {
        best = v;
        where.clear();
      }
      if (v == best) where.push_back({x, y});
    }
  return {best, where};
}

}  // namespace

TEST_CASE("two-variable box search") {
  const std::vector<int> box{5, 5};
  const auto r = dioph::search_box(dioph::parse("x^2 - 2*y^2"), box);
  CHECK(r.has_solution());
  CHECK(r.min_value == 0);
  REQUIRE(r.minimizers.size() == 1);
  CHECK(r.minimizers[0] == Occupation{0, 0});
  CHECK(r.scanned == 36);
}

TEST_CASE("unsolvable single-variable search") {
  const std::vector<int> box{10};
  const auto r = dioph::search_box(dioph::parse("x^2 - 2"), box);
  CHECK_FALSE(r.has_solution());
  CHECK(r.min_value == 1);
  REQUIRE(r.minimizers.size() == 1);
  CHECK(r.minimizers[0] == Occupation{1});
}

TEST_CASE("two minimizers are listed in order") {
  const std::vector<int> box{10};
  const auto r = dioph::search_box(dioph::parse("(x - 2)*(x - 4)"), box);
  CHECK(r.min_value == 0);
  CHECK(r.minimizers == std::vector<Occupation>{{2}, {4}});
}

TEST_CASE("search agrees with a reference scan") {
  const std::vector<std::pair<const char *, std::function<long long(int, int)>>> cases{
      {"x^2 - 2*y^2 - 1", [](int x, int y) { return 1LL * x * x - 2LL * y * y - 1; }},
      {"x*y - 12", [](int x, int y) { return 1LL * x * y - 12; }},
      {"3*x + 5*y - 17", [](int x, int y) { return 3LL * x + 5LL * y - 17; }},
      {"x^3 - y^2 - 7", [](int x, int y) { return 1LL * x * x * x - 1LL * y * y - 7; }},
  };
  for (const auto &[eq, f] : cases) {
    for (std::size_t workers : {1u, 3u}) {
      dioph::SearchOptions opts;
      opts.workers = workers;
      const std::vector<int> box{13, 9};
      const auto r = dioph::search_box(dioph::parse(eq), box, opts);
      const auto [best, where] = scan2(13, 9, f);
      CAPTURE(eq);
      CHECK(r.min_value == best);
      CHECK(r.minimizers == where);
    }
  }
}

TEST_CASE("minimizer cap counts the overflow") {
  dioph::SearchOptions opts;
  opts.max_minimizers = 3;
  const std::vector<int> box{4, 4};
  const auto r = dioph::search_box(dioph::parse("x*y - x*y"), box, opts);
  CHECK(r.minimizers.size() == 3);
  CHECK(r.minimizer_count() == 25);
  CHECK(r.minimizers[0] == Occupation{0, 0});
}

TEST_CASE("budget and shape errors") {
  dioph::SearchOptions opts;
  opts.budget = 100;
  const std::vector<int> box{20, 20};
  try {
    dioph::search_box(dioph::parse("x - y"), box, opts);
    FAIL("expected a budget error");
  } catch (const dioph::Error &e) {
    CHECK(e.kind() == dioph::ErrorKind::Budget);
  }
  const std::vector<int> short_box{3};
  CHECK_THROWS_AS(dioph::search_box(dioph::parse("x - y"), short_box), dioph::Error);
  const std::vector<int> negative{-1, 2};
  CHECK_THROWS_AS(dioph::search_box(dioph::parse("x - y"), negative), dioph::Error);
}

TEST_CASE("box search agrees with the problem diagonal") {
  const dioph::FockSpace one({16});
  CHECK(dioph::agrees_with_problem_diagonal(dioph::parse("x - 3"), one, dioph::box_of(one)));
  const dioph::FockSpace two({8, 8});
  CHECK(dioph::agrees_with_problem_diagonal(dioph::parse("x^2 - 2*y^2"), two, dioph::box_of(two)));
  const std::vector<int> wrong{7, 6};
  try {
    dioph::agrees_with_problem_diagonal(dioph::parse("x^2 - 2*y^2"), two, wrong);
    FAIL("expected a precondition error");
  } catch (const dioph::Error &e) {
    CHECK(e.kind() == dioph::ErrorKind::Precondition);
  }
}

TEST_CASE("result json") {
  const std::vector<int> box{5, 5};
  const nlohmann::json j = dioph::search_box(dioph::parse("x^2 - 2*y^2"), box);
  CHECK(j["min_value"] == 0);
  CHECK(j["has_solution"] == true);
  CHECK(j["minimizers"][0] == nlohmann::json::array({0, 0}));
}
