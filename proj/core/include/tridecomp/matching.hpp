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

#ifndef TRIDECOMP_MATCHING_HPP_
#define TRIDECOMP_MATCHING_HPP_

#include <functional>
#include <span>
#include <vector>

#include "tridecomp/graph.hpp"
#include "tridecomp/metrics.hpp"
#include "tridecomp/partition.hpp"
#include "tridecomp/steiner.hpp"

namespace tridecomp {

// Vertex-disjoint edges. For bipartite matchings each edge is stored as
// (left, right) in `pairs` as well, since Edge normalises its endpoints.
struct Matching {
  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> pairs;

  std::size_t size() const { return edges.size(); }
};

// Perfect matching of the bipartite graph g[left, right] by augmenting
// paths. Throws PreconditionError if the sides differ in size and
// HallViolation (with a witness S subset of left) if no perfect matching exists.
Matching perfect_matching(const Graph& g, std::span<const int> left, std::span<const int> right);

// Same, trying partners in ascending cost(left, right) order. A heuristic
// preference only: the result is perfect but not cost-minimal.
using PairCost = std::function<int(int, int)>;
Matching perfect_matching(const Graph& g, std::span<const int> left, std::span<const int> right,
                          const PairCost& cost);

// Outcome of the two-phase rainbow matching inside N(v).
struct RainbowState {
  Matching matching;
  std::vector<int> unmatched;   // U
  std::vector<int> used_colors;  // C_M, in insertion order
  int greedy_size = 0;          // |M| after phase (1)
  int exchanges = 0;            // phase (2) moves applied
};

// Rainbow matching in the subgraph of g induced by N_g(v), with edge colours
// taken from `coloring` (indexed by vertex of g). Phase (1) adds any edge of
// an unused colour with both ends unmatched, scanning edges in lexicographic
// order; phase (2) replaces a matched {x,y} by {u,x},{y,w} with u,w unmatched
// and the two colours distinct and unused, scanning M in insertion order and
// U in vertex order. Both phases run until nothing applies.
RainbowState rainbow_matching(const Graph& g, const KirkmanColoring& coloring, int v);

// Same, restricted to an explicit vertex set instead of N_g(v).
RainbowState rainbow_matching_on(const Graph& g, const KirkmanColoring& coloring,
                                 std::span<const int> vertices);

// |U| <= max(4, eps_H * n) with eps_H * n = n - delta(H).
bool rainbow_bound_holds(const RainbowState& state, const Graph& h);

struct RemainderOptions {
  // Reject inputs with eps_G > 1/6 - 70/|V| up front.
  bool enforce_density_bound = true;
  // Prefer matching edges whose removal evens out deg+ - deg- in the big
  // and small tripartite pieces, so the balancing step deletes less.
  bool orientation_aware = false;
};

struct RemainderResult {
  TriangleSet triangles;
  Graph graph;  // input minus the emitted triangles; V_rem is isolated
  DensityMetrics before;  // whole graph
  DensityMetrics after;   // the 9n non-remainder vertices
};

// Removes every edge incident to V_rem by emitting, for each remainder vertex
// v in turn, the triangles {v, a, b} over a perfect matching between the two
// halves of N(v).
RemainderResult eliminate_remainder(const Graph& g, const VertexPartition& partition,
                                    const RemainderOptions& options = {});

}  // namespace tridecomp

#endif  // TRIDECOMP_MATCHING_HPP_
