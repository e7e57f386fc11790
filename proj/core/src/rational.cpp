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

#include "tridecomp/rational.hpp"

#include <stdexcept>

namespace tridecomp {

namespace mp = boost::multiprecision;

std::string to_string(const Rational& value) {
  return mp::numerator(value).str() + "/" + mp::denominator(value).str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& part) {
    if (part.empty()) throw std::invalid_argument("malformed rational: " + text);
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) throw std::invalid_argument("malformed rational: " + text);
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') {
        throw std::invalid_argument("malformed rational: " + text);
      }
    }
    return BigInt(part[0] == '+' ? part.substr(1) : part);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + text);
  return Rational(num, den);
}

Rational make_rational(long long num, long long den) { return Rational(num, den); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

BigInt floor_sqrt(const Rational& value) {
  if (value < 0) throw std::domain_error("sqrt of negative rational");
  // floor(sqrt(p/q)) = floor(sqrt(floor(p/q)))
  BigInt whole = mp::numerator(value) / mp::denominator(value);
  return mp::sqrt(whole);
}

BigInt ceil_sqrt(const Rational& value) {
  BigInt f = floor_sqrt(value);
  if (Rational(f * f) == value) return f;
  return f + 1;
}

namespace {

// lo/hi with hi - lo <= 2^-bits for sqrt(radicand).
std::pair<Rational, Rational> enclose_sqrt(const Rational& radicand, unsigned bits) {
  const BigInt& p = mp::numerator(radicand);
  const BigInt& q = mp::denominator(radicand);
  // sqrt(p/q) = sqrt(p*q)/q ; scale by 2^bits.
  BigInt scale = BigInt(1) << bits;
  BigInt scaled = p * q * scale * scale;
  BigInt root = mp::sqrt(scaled);
  Rational lo(root, q * scale);
  if (root * root == scaled) return {lo, lo};
  return {lo, Rational(root + 1, q * scale)};
}

}  // namespace

SurdSum& SurdSum::add(const Rational& value) {
  constant_ += value;
  return *this;
}

SurdSum& SurdSum::add_sqrt(const Rational& coefficient, const Rational& radicand) {
  if (radicand < 0) throw std::domain_error("negative radicand");
  if (coefficient != 0 && radicand != 0) surds_.emplace_back(coefficient, radicand);
  return *this;
}

SurdSum& SurdSum::scale(const Rational& factor) {
  constant_ *= factor;
  for (auto& [c, r] : surds_) c *= factor;
  return *this;
}

std::pair<Rational, Rational> SurdSum::enclose(unsigned bits) const {
  Rational lo = constant_;
  Rational hi = constant_;
  for (const auto& [c, r] : surds_) {
    auto [slo, shi] = enclose_sqrt(r, bits);
    if (c >= 0) {
      lo += c * slo;
      hi += c * shi;
    } else {
      lo += c * shi;
      hi += c * slo;
    }
  }
  return {lo, hi};
}

std::string SurdSum::to_string() const {
  std::string out = tridecomp::to_string(constant_);
  for (const auto& [c, r] : surds_) {
    out += " + " + tridecomp::to_string(c) + "*sqrt(" + tridecomp::to_string(r) + ")";
  }
  return out;
}

SurdSum operator+(SurdSum lhs, const SurdSum& rhs) {
  lhs.add(rhs.constant());
  for (const auto& [c, r] : rhs.surds()) lhs.add_sqrt(c, r);
  return lhs;
}

namespace {

// -1: value < bound, 0: equal, +1: value > bound. Equality is only reported
// when every square root is exact.
int compare(const Rational& value, const SurdSum& bound) {
  for (unsigned bits = 32; bits <= 4096; bits *= 2) {
    auto [lo, hi] = bound.enclose(bits);
    if (lo == hi) return value < lo ? -1 : (value == lo ? 0 : 1);
    if (value < lo) return -1;
    if (value > hi) return 1;
  }
  // Unresolved at 4096 bits: treat as equal (only reachable for identities).
  return 0;
}

}  // namespace

bool certainly_le(const Rational& value, const SurdSum& bound) {
  return compare(value, bound) <= 0;
}

bool certainly_lt(const Rational& value, const SurdSum& bound) {
  return compare(value, bound) < 0;
}

}  // namespace tridecomp
