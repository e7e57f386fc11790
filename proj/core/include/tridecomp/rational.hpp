// Copyright 2026 The tridecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIDECOMP_RATIONAL_HPP_
#define TRIDECOMP_RATIONAL_HPP_

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tridecomp {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact p/q text form; integers are written as "p/1".
std::string to_string(const Rational& value);

// Parses "p/q" or "p"; throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

Rational make_rational(long long num, long long den = 1);

// Certified decimal approximation, only for human-facing output.
double to_double(const Rational& value);

// A closed-form bound of the shape  c0 + sum_k c_k * sqrt(r_k)  with rational
// coefficients and non-negative rational radicands. Comparisons against a
// rational are decided exactly by interval refinement of the square roots.
class SurdSum {
 public:
  SurdSum() = default;
  explicit SurdSum(Rational constant) : constant_(std::move(constant)) {}

  SurdSum& add(const Rational& value);
  SurdSum& add_sqrt(const Rational& coefficient, const Rational& radicand);
  SurdSum& scale(const Rational& factor);

  const Rational& constant() const { return constant_; }
  const std::vector<std::pair<Rational, Rational>>& surds() const { return surds_; }

  // Interval [lo, hi] containing the exact value; width shrinks with bits.
  std::pair<Rational, Rational> enclose(unsigned bits) const;

  std::string to_string() const;

 private:
  Rational constant_{0};
  std::vector<std::pair<Rational, Rational>> surds_;  // (coefficient, radicand)
};

SurdSum operator+(SurdSum lhs, const SurdSum& rhs);

// Exact decision of value <= bound (resp. value < bound).
bool certainly_le(const Rational& value, const SurdSum& bound);
bool certainly_lt(const Rational& value, const SurdSum& bound);

// Floor and ceiling of sqrt of a non-negative rational, exact.
BigInt floor_sqrt(const Rational& value);
BigInt ceil_sqrt(const Rational& value);

}  // namespace tridecomp

#endif  // TRIDECOMP_RATIONAL_HPP_
