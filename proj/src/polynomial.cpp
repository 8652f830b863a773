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

#include "dioph/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "dioph/error.hpp"

namespace dioph {

namespace {

constexpr unsigned kMaxExponent = 1024;

Error poly_error(const std::string &what) {
  return Error(ErrorKind::Precondition, "polynomial", what);
}

}  // namespace

unsigned Monomial::total_degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0u);
}

bool grlex_greater(const std::vector<unsigned> &a,
                   const std::vector<unsigned> &b) {
  const auto da = std::accumulate(a.begin(), a.end(), 0u);
  const auto db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial::Polynomial(std::vector<std::string> variables,
                       std::vector<Monomial> monomials)
    : variables_(std::move(variables)), monomials_(std::move(monomials)) {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    for (std::size_t j = i + 1; j < variables_.size(); ++j)
      if (variables_[i] == variables_[j])
        throw poly_error("duplicate variable '" + variables_[i] + "'");
  for (const auto &m : monomials_)
    if (m.exponents.size() != variables_.size())
      throw poly_error("monomial has " + std::to_string(m.exponents.size()) +
                       " exponents, expected " +
                       std::to_string(variables_.size()));
  canonicalize();
}

Polynomial Polynomial::constant(BigInt value,
                                std::vector<std::string> variables) {
  std::vector<unsigned> zeros(variables.size(), 0);
  return Polynomial(std::move(variables), {Monomial{std::move(value), zeros}});
}

Polynomial Polynomial::variable(std::size_t index,
                                std::vector<std::string> variables) {
  if (index >= variables.size())
    throw poly_error("variable index out of range");
  std::vector<unsigned> e(variables.size(), 0);
  e[index] = 1;
  return Polynomial(std::move(variables), {Monomial{BigInt(1), e}});
}

void Polynomial::canonicalize() {
  std::sort(monomials_.begin(), monomials_.end(),
            [](const Monomial &a, const Monomial &b) {
              return grlex_greater(a.exponents, b.exponents);
            });
  std::vector<Monomial> merged;
  merged.reserve(monomials_.size());
  for (auto &m : monomials_) {
    if (!merged.empty() && merged.back().exponents == m.exponents)
      merged.back().coefficient += m.coefficient;
    else
      merged.push_back(std::move(m));
  }
  std::erase_if(merged, [](const Monomial &m) { return m.coefficient == 0; });
  monomials_ = std::move(merged);
}

void Polynomial::require_same_variables(const Polynomial &rhs) const {
  if (variables_ != rhs.variables_)
    throw poly_error("operands have different variable lists");
}

Polynomial Polynomial::operator+(const Polynomial &rhs) const {
  require_same_variables(rhs);
  auto terms = monomials_;
  terms.insert(terms.end(), rhs.monomials_.begin(), rhs.monomials_.end());
  return Polynomial(variables_, std::move(terms));
}

Polynomial Polynomial::operator-() const {
  auto terms = monomials_;
  for (auto &m : terms) m.coefficient = -m.coefficient;
  return Polynomial(variables_, std::move(terms));
}

Polynomial Polynomial::operator-(const Polynomial &rhs) const {
  return *this + (-rhs);
}

Polynomial Polynomial::operator*(const Polynomial &rhs) const {
  require_same_variables(rhs);
  std::vector<Monomial> terms;
  terms.reserve(monomials_.size() * rhs.monomials_.size());
  for (const auto &a : monomials_) {
    for (const auto &b : rhs.monomials_) {
      Monomial m{a.coefficient * b.coefficient, a.exponents};
      for (std::size_t i = 0; i < m.exponents.size(); ++i)
        m.exponents[i] += b.exponents[i];
      terms.push_back(std::move(m));
    }
  }
  return Polynomial(variables_, std::move(terms));
}

Polynomial Polynomial::pow(unsigned exponent) const {
  auto result = constant(BigInt(1), variables_);
  auto base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

BigInt Polynomial::evaluate(std::span<const std::uint64_t> point) const {
  if (point.size() != variables_.size())
    throw poly_error("point has " + std::to_string(point.size()) +
                     " coordinates, polynomial has " +
                     std::to_string(variables_.size()) + " variables");
  BigInt total = 0;
  for (const auto &m : monomials_) {
    BigInt term = m.coefficient;
    for (std::size_t i = 0; i < point.size() && term != 0; ++i)
      if (m.exponents[i] > 0)
        term *= boost::multiprecision::pow(BigInt(point[i]), m.exponents[i]);
    total += term;
  }
  return total;
}

BigInt Polynomial::evaluate(std::span<const int> point) const {
  std::vector<std::uint64_t> p(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i] < 0) throw poly_error("variables range over non-negative integers");
    p[i] = static_cast<std::uint64_t>(point[i]);
  }
  return evaluate(std::span<const std::uint64_t>(p));
}

std::vector<unsigned> Polynomial::degree_bounds() const {
  std::vector<unsigned> bounds(variables_.size(), 0);
  for (const auto &m : monomials_)
    for (std::size_t i = 0; i < bounds.size(); ++i)
      bounds[i] = std::max(bounds[i], m.exponents[i]);
  return bounds;
}

std::string to_string(const BigInt &value) { return value.str(); }

std::string Polynomial::render() const {
  if (monomials_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto &m : monomials_) {
    const bool negative = m.coefficient < 0;
    const BigInt magnitude = negative ? BigInt(-m.coefficient) : m.coefficient;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;

    std::vector<std::string> factors;
    const bool is_constant = m.total_degree() == 0;
    if (magnitude != 1 || is_constant) factors.push_back(magnitude.str());
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (m.exponents[i] == 0) continue;
      auto f = variables_[i];
      if (m.exponents[i] > 1) f += "^" + std::to_string(m.exponents[i]);
      factors.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) out += "*";
      out += factors[i];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, LParen, RParen, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '.' || s[j] == 'e' || s[j] == 'E'))
        throw ParseError(i, "non-integer literal");
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '=': kind = Tok::Equals; break;
      case '.': throw ParseError(i, "non-integer literal");
      default:
        throw ParseError(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<std::string> variables)
      : tokens_(std::move(tokens)), variables_(std::move(variables)) {}

  Polynomial equation() {
    auto lhs = expr();
    if (peek().kind == Tok::Equals) {
      advance();
      auto rhs = expr();
      lhs = lhs - rhs;
    }
    if (peek().kind != Tok::End) unexpected();
    return lhs;
  }

 private:
  const Token &peek() const { return tokens_[pos_]; }
  const Token &advance() { return tokens_[pos_++]; }

  [[noreturn]] void unexpected() const {
    const auto &t = peek();
    if (t.kind == Tok::End) throw ParseError(t.pos, "unexpected end of input");
    if (t.kind == Tok::Int || t.kind == Tok::Ident || t.kind == Tok::LParen)
      throw ParseError(t.pos, "implicit multiplication is not supported, use '*'");
    throw ParseError(t.pos, "unexpected '" + t.text + "'");
  }

  Polynomial expr() {
    auto acc = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = advance().kind == Tok::Minus;
      auto rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Polynomial term() {
    auto acc = factor();
    while (peek().kind == Tok::Star) {
      advance();
      acc = acc * factor();
    }
    return acc;
  }

  Polynomial factor() {
    if (peek().kind == Tok::Minus) {
      advance();
      return -factor();
    }
    if (peek().kind == Tok::Plus) {
      advance();
      return factor();
    }
    return power();
  }

  Polynomial power() {
    auto base = primary();
    if (peek().kind != Tok::Caret) return base;
    advance();
    const auto &e = peek();
    if (e.kind == Tok::Minus)
      throw ParseError(e.pos, "negative exponent");
    if (e.kind != Tok::Int)
      throw ParseError(e.pos, "exponent must be an integer literal");
    advance();
    if (e.text.size() > 6 || std::stoul(e.text) > kMaxExponent)
      throw ParseError(e.pos, "exponent exceeds " + std::to_string(kMaxExponent));
    return base.pow(static_cast<unsigned>(std::stoul(e.text)));
  }

  Polynomial primary() {
    const auto &t = peek();
    switch (t.kind) {
      case Tok::Int:
        advance();
        return Polynomial::constant(BigInt(t.text), variables_);
      case Tok::Ident: {
        advance();
        const auto it = std::find(variables_.begin(), variables_.end(), t.text);
        return Polynomial::variable(
            static_cast<std::size_t>(it - variables_.begin()), variables_);
      }
      case Tok::LParen: {
        advance();
        auto inner = expr();
        if (peek().kind != Tok::RParen) {
          if (peek().kind == Tok::End)
            throw ParseError(peek().pos, "missing ')'");
          unexpected();
        }
        advance();
        return inner;
      }
      case Tok::End:
        throw ParseError(t.pos, "unexpected end of input");
      default:
        throw ParseError(t.pos, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::vector<std::string> variables_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse(std::string_view text) { return parse(text, {}); }

Polynomial parse(std::string_view text,
                 std::span<const std::string> variable_order) {
  auto tokens = tokenize(text);
  std::vector<std::string> variables(variable_order.begin(),
                                     variable_order.end());
  for (const auto &t : tokens)
    if (t.kind == Tok::Ident &&
        std::find(variables.begin(), variables.end(), t.text) == variables.end())
      variables.push_back(t.text);
  return Parser(std::move(tokens), std::move(variables)).equation();
}

// ---------------------------------------------------------------------------
// JSON

void to_json(nlohmann::json &j, const Polynomial &p) {
  auto monomials = nlohmann::json::array();
  for (const auto &m : p.monomials()) {
    nlohmann::json coeff;
    if (m.coefficient >= std::numeric_limits<std::int64_t>::min() &&
        m.coefficient <= std::numeric_limits<std::int64_t>::max())
      coeff = m.coefficient.convert_to<std::int64_t>();
    else
      coeff = m.coefficient.str();
    monomials.push_back({coeff, m.exponents});
  }
  j = {{"variables", p.variables()}, {"monomials", monomials}};
}

void from_json(const nlohmann::json &j, Polynomial &p) {
  try {
    auto variables = j.at("variables").get<std::vector<std::string>>();
    std::vector<Monomial> monomials;
    for (const auto &entry : j.at("monomials")) {
      const auto &c = entry.at(0);
      BigInt coeff = c.is_string() ? BigInt(c.get<std::string>())
                                   : BigInt(c.get<std::int64_t>());
      monomials.push_back({coeff, entry.at(1).get<std::vector<unsigned>>()});
    }
    p = Polynomial(std::move(variables), std::move(monomials));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Config, "polynomial",
                std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace dioph
