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

#include "tridecomp/local_triangulator.hpp"

#include <gtest/gtest.h>

#include "tridecomp/errors.hpp"
#include "tridecomp/rng.hpp"
#include "tridecomp/steiner.hpp"

namespace tridecomp {
namespace {

void expect_lemma_bounds(const Graph& h, const NearTriangulation& nt) {
  EXPECT_NO_THROW(validate_triangle_set(h, nt.triangles));
  EXPECT_EQ(nt.leftover.edge_count() + 3 * static_cast<long long>(nt.triangles.size()), h.edge_count());
  EXPECT_TRUE(certainly_le(nt.r_metrics.epsilon, nt.epsilon_bound()))
      << to_string(nt.r_metrics.epsilon) << " vs " << nt.epsilon_bound().to_string();
  EXPECT_TRUE(certainly_le(Rational(nt.leftover.edge_count()), nt.leftover_bound()))
      << nt.leftover.edge_count() << " vs " << nt.leftover_bound().to_string();
  const int n = h.vertex_count();
  for (const RepairRun& run : nt.runs) EXPECT_LE(run.edge_loss, 3 * n);
  // The six-per-run argument relies on every deleted triangle being an STS
  // triple, which only holds before the first repair.
  if (!nt.runs.empty()) EXPECT_LE(nt.runs.front().max_other_drop, 6);
}

TEST(NearTriangulateTest, CompleteGraphKeepsWholeSystem) {
  for (int n : {7, 9, 13, 15}) {
    Graph h = Graph::complete(n);
    NearTriangulation nt = near_triangulate(h);
    EXPECT_EQ(nt.leftover.edge_count(), 0);
    EXPECT_EQ(static_cast<int>(nt.triangles.size()), n * (n - 1) / 6);
    EXPECT_EQ(nt.planned_runs, 0);
    EXPECT_TRUE(nt.runs.empty());
  }
}

TEST(NearTriangulateTest, K9MinusMatching) {
  Graph h = Graph::complete(9);
  for (int v = 0; v < 8; v += 2) h.remove_edge(v, v + 1);
  NearTriangulation nt = near_triangulate(h);
  EXPECT_EQ(nt.h_metrics.xi, Rational(4, 81));
  // bound = 8 + 9 sqrt(12) ~ 39.18
  SurdSum bound(Rational(8));
  bound.add_sqrt(Rational(9), Rational(12));
  EXPECT_TRUE(certainly_le(Rational(nt.leftover.edge_count()), bound));
  expect_lemma_bounds(h, nt);
}

TEST(NearTriangulateTest, SevenMinusAnySingleEdge) {
  SteinerSystem s = build_sts(7);
  for (int u = 0; u < 7; ++u) {
    for (int v = u + 1; v < 7; ++v) {
      Graph h = Graph::complete(7);
      h.remove_edge(u, v);
      NearTriangulation nt = near_triangulate(h);
      EXPECT_EQ(nt.discarded_triples, 1);  // exactly one triple holds {u,v}
      EXPECT_EQ(nt.planned_runs, 0);       // 3 * 1^2 >= 1
      EXPECT_EQ(nt.leftover.edge_count(), 2);
      expect_lemma_bounds(h, nt);
    }
  }
}

TEST(NearTriangulateTest, PlannedRuns) {
  EXPECT_EQ(planned_repair_runs(0), 0);
  EXPECT_EQ(planned_repair_runs(3), 0);
  EXPECT_EQ(planned_repair_runs(4), 1);
  EXPECT_EQ(planned_repair_runs(12), 1);
  EXPECT_EQ(planned_repair_runs(13), 2);
  EXPECT_EQ(planned_repair_runs(300), 9);
}

TEST(NearTriangulateTest, RandomSparseDeletions) {
  for (int n : {13, 19, 25, 27}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed * 31 + static_cast<std::uint64_t>(n));
      Graph h = Graph::complete(n);
      for (int k = 0; k < n / 2; ++k) {
        int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (u != v) h.remove_edge(u, v);
      }
      NearTriangulation nt = near_triangulate(h);
      expect_lemma_bounds(h, nt);
    }
  }
}

TEST(NearTriangulateTest, RepairRaisesLowDegreeVertex) {
  Graph h = Graph::complete(19);
  // Vertex 0 loses six edges, which kills up to six STS triples through it.
  for (int u = 1; u <= 6; ++u) h.remove_edge(0, u);
  NearTriangulation nt = near_triangulate(h);
  ASSERT_FALSE(nt.runs.empty());
  EXPECT_EQ(nt.runs.front().vertex, 0);
  EXPECT_LT(nt.runs.front().gap_after, nt.runs.front().gap_before);
  expect_lemma_bounds(h, nt);
}

TEST(NearTriangulateTest, BadResidue) {
  EXPECT_THROW(near_triangulate(Graph::complete(8)), PreconditionError);
}

}  // namespace
}  // namespace tridecomp
