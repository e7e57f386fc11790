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

#ifndef TRIDECOMP_METRICS_HPP_
#define TRIDECOMP_METRICS_HPP_

#include <string>
#include <vector>

#include "tridecomp/graph.hpp"
#include "tridecomp/rational.hpp"

namespace tridecomp {

enum class PartiteMode { kWhole, kBipartite, kTripartite, kNinePartite };

std::string to_string(PartiteMode mode);

// A labelling of some vertices of a graph into disjoint parts. In kWhole mode
// there is a single part and the view describes the induced subgraph on it;
// in the partite modes only edges between different parts belong to the view.
struct PartiteView {
  std::vector<std::vector<int>> parts;
  PartiteMode mode = PartiteMode::kWhole;

  static PartiteView whole(std::vector<int> vertices);
  static PartiteView whole_graph(const Graph& g);
  static PartiteView tripartite(std::vector<int> p0, std::vector<int> p1, std::vector<int> p2);

  std::size_t part_count() const { return parts.size(); }
  // part index per vertex of a graph with `vertex_count` vertices, -1 if absent.
  std::vector<int> part_index(int vertex_count) const;
  // Throws PreconditionError unless parts are disjoint, in range, and their
  // count matches the mode.
  void validate(int vertex_count) const;
};

// Edge count of g restricted to the view.
long long view_edge_count(const Graph& g, const PartiteView& view);

// Tripartite degrees: edges from v (in part i) to part i+1 / part i-1, mod 3.
int deg_plus(const Graph& g, const PartiteView& view, int v);
int deg_minus(const Graph& g, const PartiteView& view, int v);

// The local/global density pair of a (sub)graph:
//   whole mode, k vertices:            |E| = C(k,2) - xi k^2,  delta = (1 - eps) k
//   m-partite mode, parts of size k:   |E| = C(m,2) k^2 - xi k^2,
//                                      delta = min_v min_{j: v not in V_j} deg_j(v)
struct DensityMetrics {
  Rational epsilon;
  Rational xi;
  int part_size = 0;
  int min_degree = 0;    // delta as defined above
  long long missing = 0;  // xi * k^2
};

// Throws PreconditionError on an empty part or unequal partite part sizes.
DensityMetrics metrics(const Graph& g, const PartiteView& view);

// Metrics of the complement of g relative to the view's complete host.
DensityMetrics complement_metrics(const Graph& g, const PartiteView& view);

// Largest vertex degree of a leftover graph: the worst per-vertex load that
// the leftover bounds write as delta(L).
int leftover_degree(const Graph& g);

}  // namespace tridecomp

#endif  // TRIDECOMP_METRICS_HPP_
