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

#ifndef TRIDECOMP_STEINER_HPP_
#define TRIDECOMP_STEINER_HPP_

#include <vector>

#include "tridecomp/graph.hpp"

namespace tridecomp {

// S(2,3,n): every pair of {0..n-1} lies in exactly one triple.
struct SteinerSystem {
  int order = 0;
  std::vector<Triangle> triples;
};

// Pair {x,y} gets the third point of its triple as colour. Colour class i is
// a perfect matching of the points other than i.
class KirkmanColoring {
 public:
  KirkmanColoring() = default;
  explicit KirkmanColoring(const SteinerSystem& s);

  int order() const { return order_; }
  // -1 on the diagonal.
  int color(int x, int y) const { return table_[static_cast<std::size_t>(x * order_ + y)]; }
  std::vector<Edge> color_class(int c) const;

 private:
  int order_ = 0;
  std::vector<int> table_;
};

// Bose construction for n = 3 (mod 6), Skolem for n = 1 (mod 6).
// Throws PreconditionError for any other n.
SteinerSystem build_sts(int n);

KirkmanColoring induced_coloring(const SteinerSystem& s);

// True iff every pair is covered exactly once.
bool is_steiner_system(const SteinerSystem& s);

}  // namespace tridecomp

#endif  // TRIDECOMP_STEINER_HPP_
