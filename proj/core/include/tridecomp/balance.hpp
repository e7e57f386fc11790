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

#ifndef TRIDECOMP_BALANCE_HPP_
#define TRIDECOMP_BALANCE_HPP_

#include <array>
#include <vector>

#include "tridecomp/graph.hpp"
#include "tridecomp/metrics.hpp"

namespace tridecomp {

using Cycle = std::vector<int>;  // closed: back() is adjacent to front()

struct BalanceOptions {
  // Throw unless eps_T < 1/12 and xi_T < eps_T / 6 (skipped when the view
  // is balanced already).
  bool enforce_preconditions = true;
};

struct BalanceResult {
  std::vector<Edge> deleted;
  std::array<int, 5> paths_by_length{};  // index = path length
  int max_vertex_loss = 0;              // edges removed at a single vertex
  DensityMetrics before;
  DensityMetrics after;
};

// Deletes positively oriented paths (part i to part i+1) from a surplus
// vertex (deg+ > deg-) to a deficit vertex until deg+ = deg- on every vertex
// of the view. Only edges of g between different parts of `view` are touched.
// Path length is forced mod 3 by the parts of the endpoints: 1 (or 4 when the
// direct edge is absent), 2 or 3.
BalanceResult balance_tripartite(Graph& g, const PartiteView& view, const BalanceOptions& options = {});

bool is_balanced(const Graph& g, const PartiteView& view);

// Edge-disjoint simple cycles covering E(g). Throws PreconditionError on an
// odd-degree vertex.
std::vector<Cycle> cycle_decompose(const Graph& g);

// Same for the cross-part edges of a tripartite view, using only positively
// oriented steps, so every cycle has length divisible by three. Needs
// deg+ = deg- everywhere.
std::vector<Cycle> oriented_cycle_decompose(const Graph& g, const PartiteView& view);

}  // namespace tridecomp

#endif  // TRIDECOMP_BALANCE_HPP_
