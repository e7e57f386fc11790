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

#include "tridecomp/metrics.hpp"

#include <gtest/gtest.h>

#include "tridecomp/errors.hpp"

namespace tridecomp {
namespace {

Graph complete_tripartite(int k) {
  Graph g(3 * k);
  for (int u = 0; u < 3 * k; ++u) {
    for (int v = u + 1; v < 3 * k; ++v) {
      if (u / k != v / k) g.add_edge(u, v);
    }
  }
  return g;
}

PartiteView blocks_of(int k) {
  std::vector<int> p[3];
  for (int v = 0; v < 3 * k; ++v) p[v / k].push_back(v);
  return PartiteView::tripartite(p[0], p[1], p[2]);
}

TEST(MetricsTest, CompleteGraph) {
  Graph k9 = Graph::complete(9);
  auto m = metrics(k9, PartiteView::whole_graph(k9));
  EXPECT_EQ(m.epsilon, Rational(1, 9));
  EXPECT_EQ(m.xi, Rational(0));
  EXPECT_EQ(m.min_degree, 8);
}

TEST(MetricsTest, MissingEdge) {
  Graph g = Graph::complete(9);
  g.remove_edge(2, 5);
  auto m = metrics(g, PartiteView::whole_graph(g));
  EXPECT_EQ(m.xi, Rational(1, 81));
  EXPECT_EQ(m.epsilon, Rational(2, 9));
  EXPECT_EQ(m.missing, 1);
}

TEST(MetricsTest, CompleteTripartite) {
  Graph g = complete_tripartite(3);
  auto m = metrics(g, blocks_of(3));
  EXPECT_EQ(m.epsilon, Rational(0));
  EXPECT_EQ(m.xi, Rational(0));
}

TEST(MetricsTest, TripartiteIgnoresInPartEdges) {
  Graph g = complete_tripartite(4);
  g.add_edge(0, 1);
  g.remove_edge(0, 4);
  g.remove_edge(0, 8);
  auto m = metrics(g, blocks_of(4));
  EXPECT_EQ(m.missing, 2);
  EXPECT_EQ(m.xi, Rational(2, 16));
  EXPECT_EQ(m.epsilon, Rational(1, 4));
}

TEST(MetricsTest, DegPlusMinus) {
  Graph g = complete_tripartite(3);
  auto view = blocks_of(3);
  g.remove_edge(0, 3);  // part 0 -> part 1 is positive for vertex 0
  EXPECT_EQ(deg_plus(g, view, 0), 2);
  EXPECT_EQ(deg_minus(g, view, 0), 3);
  EXPECT_EQ(deg_plus(g, view, 3), 3);
  EXPECT_EQ(deg_minus(g, view, 3), 2);
}

TEST(MetricsTest, ComplementConsistency) {
  Graph g = Graph::complete(10);
  g.remove_edge(0, 1);
  g.remove_edge(2, 3);
  g.remove_edge(0, 4);
  auto view = PartiteView::whole_graph(g);
  auto m = metrics(g, view);
  auto c = complement_metrics(g, view);
  // xi_H + xi_Hbar = C(k,2)/k^2 exactly.
  EXPECT_EQ(m.xi + c.xi, Rational(45, 100));
  EXPECT_EQ(c.missing, 42);
}

TEST(MetricsTest, EmptyPartIsAnError) {
  Graph g(3);
  auto view = PartiteView::tripartite({0}, {1}, {});
  EXPECT_THROW(metrics(g, view), PreconditionError);
}

TEST(MetricsTest, OverlappingPartsRejected) {
  Graph g(3);
  auto view = PartiteView::tripartite({0}, {0}, {2});
  EXPECT_THROW(view.validate(3), PreconditionError);
}

}  // namespace
}  // namespace tridecomp
