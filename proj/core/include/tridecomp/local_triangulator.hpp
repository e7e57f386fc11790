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

#ifndef TRIDECOMP_LOCAL_TRIANGULATOR_HPP_
#define TRIDECOMP_LOCAL_TRIANGULATOR_HPP_

#include <vector>

#include "tridecomp/graph.hpp"
#include "tridecomp/metrics.hpp"
#include "tridecomp/rational.hpp"

namespace tridecomp {

// One rainbow-matching repair of a low-degree vertex.
struct RepairRun {
  int vertex = -1;
  int gap_before = 0;      // deg_H(v) - deg_R(v) before the run
  int gap_after = 0;
  int matched = 0;         // |M|
  int unmatched = 0;       // |U|
  int max_other_drop = 0;  // largest deg_R loss among w != v
  long long edge_loss = 0; // |E(R)| before minus after (may be negative)
};

struct NearTriangulation {
  TriangleSet triangles;  // R, in vertex labels of h
  Graph leftover;         // h minus E(R)
  DensityMetrics h_metrics;
  DensityMetrics r_metrics;
  int discarded_triples = 0;
  int planned_runs = 0;  // ceil(sqrt(xi_H / 3) n) - 1
  std::vector<RepairRun> runs;

  // eps_H + 4 sqrt(3 xi_H)
  SurdSum epsilon_bound() const;
  // (2 xi_H + sqrt(3 xi_H)) n^2
  SurdSum leftover_bound() const;
};

// STS template filtered to h, then rainbow-matching repairs of the vertices
// with the largest deg_H - deg_R gap (recomputed after each run, ties to the
// lowest index). Throws PreconditionError unless n = 1 or 3 (mod 6).
NearTriangulation near_triangulate(const Graph& h);

// Number of repair runs for n^2 xi = missing edges: smallest k with
// 3k^2 >= missing, minus one.
int planned_repair_runs(long long missing);

}  // namespace tridecomp

#endif  // TRIDECOMP_LOCAL_TRIANGULATOR_HPP_
