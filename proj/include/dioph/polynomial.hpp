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

#ifndef DIOPH_POLYNOMIAL_HPP
#define DIOPH_POLYNOMIAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dioph {

using BigInt = boost::multiprecision::cpp_int;

struct Monomial {
  BigInt coefficient;
  std::vector<unsigned> exponents;

  unsigned total_degree() const;
  bool operator==(const Monomial &other) const = default;
};

// Graded-lexicographic "greater than": higher total degree first, ties broken
// lexicographically on the exponent vector. Canonical polynomials list their
// monomials in this order (leading term first).
bool grlex_greater(const std::vector<unsigned> &a,
                   const std::vector<unsigned> &b);

// Multivariate polynomial with arbitrary-precision integer coefficients.
//
// Always canonical: monomials sorted by grlex_greater, equal exponent vectors
// merged, zero coefficients dropped. Arithmetic requires both operands to
// share the same variable list.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::vector<std::string> variables,
             std::vector<Monomial> monomials);

  static Polynomial constant(BigInt value,
                             std::vector<std::string> variables = {});
  static Polynomial variable(std::size_t index,
                             std::vector<std::string> variables);

  const std::vector<std::string> &variables() const { return variables_; }
  const std::vector<Monomial> &monomials() const { return monomials_; }
  std::size_t variable_count() const { return variables_.size(); }
  bool is_zero() const { return monomials_.empty(); }

  Polynomial operator+(const Polynomial &rhs) const;
  Polynomial operator-(const Polynomial &rhs) const;
  Polynomial operator*(const Polynomial &rhs) const;
  Polynomial operator-() const;
  Polynomial pow(unsigned exponent) const;

  bool operator==(const Polynomial &other) const = default;

  // Exact value at a point of non-negative integers.
  BigInt evaluate(std::span<const std::uint64_t> point) const;
  BigInt evaluate(std::span<const int> point) const;

  // Componentwise maximum exponent; zero vector for a constant.
  std::vector<unsigned> degree_bounds() const;

  // Text in the parser's grammar, e.g. "x^2 - 2*y^2".
  std::string render() const;

 private:
  void canonicalize();
  void require_same_variables(const Polynomial &rhs) const;

  std::vector<std::string> variables_;
  std::vector<Monomial> monomials_;
};

// Parses an expression over integer literals, identifiers, + - * ^ and
// parentheses. A trailing "= rhs" is folded in as lhs - rhs, so "x - 3 = 0"
// and "x - 3" parse to the same polynomial. Variables are ordered by first
// appearance; the second overload pins a prefix of the order.
Polynomial parse(std::string_view text);
Polynomial parse(std::string_view text,
                 std::span<const std::string> variable_order);

std::string to_string(const BigInt &value);

// {"variables": [...], "monomials": [[coeff, [e1..ek]], ...]}. Coefficients
// outside the int64 range are written as decimal strings.
void to_json(nlohmann::json &j, const Polynomial &p);
void from_json(const nlohmann::json &j, Polynomial &p);

}  // namespace dioph

#endif  // DIOPH_POLYNOMIAL_HPP
