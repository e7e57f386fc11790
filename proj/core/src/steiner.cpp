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

#include "tridecomp/steiner.hpp"

#include <string>

#include "tridecomp/errors.hpp"

namespace tridecomp {

namespace {

// Idempotent commutative quasigroup on Z_m, m odd: x o y = (x + y) / 2.
int bose_op(int x, int y, int m) { return ((x + y) * ((m + 1) / 2)) % m; }

// Half-idempotent commutative quasigroup on Z_{2t}.
int skolem_op(int x, int y, int t) {
  int s = (x + y) % (2 * t);
  return s % 2 == 0 ? s / 2 : t + (s - 1) / 2;
}

SteinerSystem bose(int n) {
  const int m = n / 3;  // 2t + 1
  auto pt = [m](int x, int i) { return x + (i % 3) * m; };
  SteinerSystem s{n, {}};
  for (int x = 0; x < m; ++x) s.triples.emplace_back(pt(x, 0), pt(x, 1), pt(x, 2));
  for (int i = 0; i < 3; ++i) {
    for (int x = 0; x < m; ++x) {
      for (int y = x + 1; y < m; ++y) s.triples.emplace_back(pt(x, i), pt(y, i), pt(bose_op(x, y, m), i + 1));
    }
  }
  return s;
}

SteinerSystem skolem(int n) {
  const int t = (n - 1) / 6;
  const int m = 2 * t;
  const int inf = n - 1;
  auto pt = [m](int x, int i) { return x + (i % 3) * m; };
  SteinerSystem s{n, {}};
  for (int x = 0; x < t; ++x) s.triples.emplace_back(pt(x, 0), pt(x, 1), pt(x, 2));
  for (int i = 0; i < 3; ++i) {
    for (int x = 0; x < t; ++x) s.triples.emplace_back(inf, pt(x + t, i), pt(x, i + 1));
  }
  for (int i = 0; i < 3; ++i) {
    for (int x = 0; x < m; ++x) {
      for (int y = x + 1; y < m; ++y) s.triples.emplace_back(pt(x, i), pt(y, i), pt(skolem_op(x, y, t), i + 1));
    }
  }
  return s;
}

}  // namespace

SteinerSystem build_sts(int n) {
  if (n < 3 || (n % 6 != 1 && n % 6 != 3)) {
    throw PreconditionError("no Steiner triple system of order " + std::to_string(n));
  }
  SteinerSystem s = n % 6 == 3 ? bose(n) : skolem(n);
  if (!is_steiner_system(s)) throw ContractViolation("STS construction failed for n = " + std::to_string(n));
  return s;
}

bool is_steiner_system(const SteinerSystem& s) {
  const int n = s.order;
  if (static_cast<long long>(s.triples.size()) * 6 != static_cast<long long>(n) * (n - 1)) return false;
  std::vector<char> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (const Triangle& t : s.triples) {
    if (t.a < 0 || t.c >= n || t.a == t.b || t.b == t.c) return false;
    for (const Edge& e : t.edges()) {
      if (seen[static_cast<std::size_t>(e.u * n + e.v)]++) return false;
    }
  }
  return true;
}

KirkmanColoring::KirkmanColoring(const SteinerSystem& s)
    : order_(s.order), table_(static_cast<std::size_t>(s.order) * static_cast<std::size_t>(s.order), -1) {
  auto set = [this](int x, int y, int c) {
    table_[static_cast<std::size_t>(x * order_ + y)] = c;
    table_[static_cast<std::size_t>(y * order_ + x)] = c;
  };
  for (const Triangle& t : s.triples) {
    set(t.b, t.c, t.a);
    set(t.a, t.c, t.b);
    set(t.a, t.b, t.c);
  }
}

std::vector<Edge> KirkmanColoring::color_class(int c) const {
  std::vector<Edge> out;
  for (int x = 0; x < order_; ++x) {
    for (int y = x + 1; y < order_; ++y) {
      if (color(x, y) == c) out.emplace_back(x, y);
    }
  }
  return out;
}

KirkmanColoring induced_coloring(const SteinerSystem& s) { return KirkmanColoring(s); }

}  // namespace tridecomp
