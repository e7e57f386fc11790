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


#ifndef TRIDECOMP_VERIFY_HPP_
#define TRIDECOMP_VERIFY_HPP_

#include <string>
#include <vector>

#include "tridecomp/graph.hpp"

namespace tridecomp {

// Outcome of a decomposition check. Violations are line records:
//   bad <a> <b> <c>      vertex out of range or repeated
//   foreign <a> <b> <c>  a triangle edge is not in the graph
//   reused <u> <v>       edge covered more than once
//   missing <u> <v>      edge of the graph left uncovered
struct DecompositionReport {
  bool ok = false;
  long long graph_edges = 0;
  long long covered_edges = 0;  // distinct graph edges hit by some triangle
  std::vector<std::string> violations;

  std::string to_string() const;
};

// True iff every triangle lies in g, no edge is used twice and every edge of
// g is used. Triangles are checked in parallel chunks (`threads` <= 1 runs
// inline); violation order does not depend on the thread count.
DecompositionReport check_decomposition(const Graph& g, const TriangleSet& triangles, int threads = 1);

struct BruteForceResult {
  bool found = false;
  TriangleSet triangles;  // sorted, when found
  long long nodes = 0;
  // When nothing is found: why the search closed, e.g. the edge with no
  // covering triangle at the root or the exhausted node count.
  std::string certificate;
};

// Exhaustive search: always branch on the smallest uncovered edge, over the
// completing vertices in ascending order. Throws PreconditionError when g
// has more than `edge_cap` edges.
BruteForceResult brute_force_decompose(const Graph& g, int edge_cap = 30);

// C4 strong product K_n: four corner cliques K_n, consecutive corners joined
// completely. A triangle through a side edge has two vertices in one corner,
// so it spends two side edges and one corner edge; the 4n^2 side edges would
// need 2n^2 corner edges but only 4 C(n,2) = 2n^2 - 2n exist.
struct C4BoxCertificate {
  int n = 0;
  Graph graph;
  long long side_edges = 0;
  long long corner_edges = 0;
  long long corner_edges_needed = 0;  // side_edges / 2
  bool tridivisible = false;
  bool infeasible = false;
  std::string text;
};

C4BoxCertificate analyze_c4_box_kn(int n);

// Vertex (corner, index) of the product graph.
inline int c4_box_vertex(int n, int corner, int index) { return corner * n + index; }

}  // namespace tridecomp

#endif  // TRIDECOMP_VERIFY_HPP_
