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

#include "tridecomp/matching.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "tridecomp/errors.hpp"
#include "tridecomp/io.hpp"
#include "tridecomp/partition.hpp"
#include "tridecomp/rng.hpp"

namespace tridecomp {
namespace {

// Unit-capacity max flow (Edmonds-Karp on an explicit residual matrix).
int max_flow_matching(const Graph& g, const std::vector<int>& left, const std::vector<int>& right) {
  const int a = static_cast<int>(left.size());
  const int b = static_cast<int>(right.size());
  const int s = a + b, t = a + b + 1, nodes = a + b + 2;
  std::vector<std::vector<int>> cap(static_cast<std::size_t>(nodes), std::vector<int>(static_cast<std::size_t>(nodes), 0));
  for (int i = 0; i < a; ++i) cap[s][i] = 1;
  for (int j = 0; j < b; ++j) cap[a + j][t] = 1;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      if (g.has_edge(left[i], right[j])) cap[i][a + j] = 1;
    }
  }
  int flow = 0;
  while (true) {
    std::vector<int> prev(static_cast<std::size_t>(nodes), -1);
    prev[s] = s;
    std::vector<int> queue{s};
    for (std::size_t q = 0; q < queue.size() && prev[t] < 0; ++q) {
      int x = queue[q];
      for (int y = 0; y < nodes; ++y) {
        if (prev[y] < 0 && cap[x][y] > 0) {
          prev[y] = x;
          queue.push_back(y);
        }
      }
    }
    if (prev[t] < 0) return flow;
    for (int y = t; y != s; y = prev[y]) {
      --cap[prev[y]][y];
      ++cap[y][prev[y]];
    }
    ++flow;
  }
}

TEST(PerfectMatchingTest, CompleteBipartite) {
  Graph g(6);
  for (int u = 0; u < 3; ++u) {
    for (int v = 3; v < 6; ++v) g.add_edge(u, v);
  }
  std::vector<int> left{0, 1, 2}, right{3, 4, 5};
  Matching m = perfect_matching(g, left, right);
  ASSERT_EQ(m.size(), 3u);
  std::set<int> used;
  for (auto [l, r] : m.pairs) {
    EXPECT_TRUE(g.has_edge(l, r));
    EXPECT_TRUE(used.insert(l).second);
    EXPECT_TRUE(used.insert(r).second);
  }
}

TEST(PerfectMatchingTest, StarGivesHallWitness) {
  Graph g(5);  // star centred at 0, vertex 4 isolated
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  std::vector<int> left{1, 2}, right{0, 4};
  try {
    perfect_matching(g, left, right);
    FAIL() << "expected a Hall violation";
  } catch (const HallViolation& hv) {
    EXPECT_GT(hv.witness().size(), hv.neighbourhood().size());
    std::set<int> nbhd;
    for (int s : hv.witness()) {
      for (int r : right) {
        if (g.has_edge(s, r)) nbhd.insert(r);
      }
    }
    EXPECT_EQ(nbhd.size(), hv.neighbourhood().size());
  }
}

TEST(PerfectMatchingTest, UnequalSides) {
  Graph g(3);
  std::vector<int> left{0}, right{1, 2};
  EXPECT_THROW(perfect_matching(g, left, right), PreconditionError);
}

TEST(PerfectMatchingTest, AgreesWithMaxFlowOnDenseRandom) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    Graph g(40);
    std::vector<int> left, right;
    for (int i = 0; i < 20; ++i) {
      left.push_back(i);
      right.push_back(20 + i);
    }
    for (int u : left) {
      std::vector<int> others = right;
      rng.shuffle(others);
      for (int k = 0; k < 15; ++k) g.add_edge(u, others[static_cast<std::size_t>(k)]);
    }
    ASSERT_EQ(max_flow_matching(g, left, right), 20);
    Matching m = perfect_matching(g, left, right);
    EXPECT_EQ(m.size(), 20u);
  }
}

TEST(PerfectMatchingTest, WitnessOnSparseRandomFailures) {
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    Graph g(16);
    std::vector<int> left{0, 1, 2, 3, 4, 5, 6, 7}, right{8, 9, 10, 11, 12, 13, 14, 15};
    for (int u : left) {
      for (int v : right) {
        if (rng.below(5) == 0) g.add_edge(u, v);
      }
    }
    int flow = max_flow_matching(g, left, right);
    if (flow == 8) {
      EXPECT_EQ(perfect_matching(g, left, right).size(), 8u);
      continue;
    }
    ++failures;
    try {
      perfect_matching(g, left, right);
      ADD_FAILURE() << "seed " << seed;
    } catch (const HallViolation& hv) {
      EXPECT_LT(hv.neighbourhood().size(), hv.witness().size());
    }
  }
  EXPECT_GT(failures, 0);
}

bool is_rainbow(const RainbowState& st, const KirkmanColoring& c) {
  std::set<int> colors, verts;
  for (const Edge& e : st.matching.edges) {
    if (!colors.insert(c.color(e.u, e.v)).second) return false;
    if (!verts.insert(e.u).second || !verts.insert(e.v).second) return false;
  }
  return true;
}

// Largest rainbow matching by exhaustive search.
int max_rainbow(const Graph& g, const KirkmanColoring& c, const std::vector<int>& verts) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (g.has_edge(verts[i], verts[j])) edges.emplace_back(verts[i], verts[j]);
    }
  }
  int best = 0;
  std::set<int> used_v, used_c;
  std::function<void(std::size_t, int)> go = [&](std::size_t k, int size) {
    best = std::max(best, size);
    for (std::size_t i = k; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      int col = c.color(e.u, e.v);
      if (used_v.count(e.u) || used_v.count(e.v) || used_c.count(col)) continue;
      used_v.insert(e.u);
      used_v.insert(e.v);
      used_c.insert(col);
      go(i + 1, size + 1);
      used_v.erase(e.u);
      used_v.erase(e.v);
      used_c.erase(col);
    }
  };
  go(0, 0);
  return best;
}

TEST(RainbowMatchingTest, EmptyNeighbourhood) {
  Graph g(7);
  auto c = induced_coloring(build_sts(7));
  RainbowState st = rainbow_matching(g, c, 0);
  EXPECT_EQ(st.matching.size(), 0u);
  EXPECT_TRUE(st.unmatched.empty());
}

TEST(RainbowMatchingTest, RainbowPerfectMatchingKeptWhole) {
  auto c = induced_coloring(build_sts(9));
  Graph g(9);
  // v = 0 sees 1..8; pick a perfect matching of 1..8 with distinct colours.
  for (int u = 1; u < 9; ++u) g.add_edge(0, u);
  std::vector<Edge> pm;
  std::set<int> colors;
  std::vector<int> rest{1, 2, 3, 4, 5, 6, 7, 8};
  std::function<bool()> pick = [&]() {
    if (rest.empty()) return true;
    int x = rest.front();
    for (std::size_t i = 1; i < rest.size(); ++i) {
      int y = rest[i];
      int col = c.color(x, y);
      if (colors.count(col)) continue;
      std::vector<int> saved = rest;
      colors.insert(col);
      pm.emplace_back(x, y);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      rest.erase(rest.begin());
      if (pick()) return true;
      rest = saved;
      pm.pop_back();
      colors.erase(col);
    }
    return false;
  };
  ASSERT_TRUE(pick());
  for (const Edge& e : pm) g.add_edge(e);
  RainbowState st = rainbow_matching(g, c, 0);
  EXPECT_EQ(st.matching.size(), 4u);
  EXPECT_TRUE(st.unmatched.empty());
  std::set<Edge> got(st.matching.edges.begin(), st.matching.edges.end());
  EXPECT_EQ(got, std::set<Edge>(pm.begin(), pm.end()));
}

TEST(RainbowMatchingTest, ExchangePhaseGrowsAStalledGreedy) {
  // Search small coloured neighbourhoods for one where phase (1) alone is not
  // maximum; phase (2) must then improve on it.
  auto c = induced_coloring(build_sts(13));
  std::vector<int> nbhd{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  bool found = false;
  for (std::uint64_t seed = 0; seed < 5000 && !found; ++seed) {
    Rng rng(seed);
    Graph g(13);
    for (int u : nbhd) g.add_edge(0, u);
    for (std::size_t i = 0; i < nbhd.size(); ++i) {
      for (std::size_t j = i + 1; j < nbhd.size(); ++j) {
        if (rng.below(4) == 0) g.add_edge(nbhd[i], nbhd[j]);
      }
    }
    RainbowState st = rainbow_matching(g, c, 0);
    ASSERT_TRUE(is_rainbow(st, c));
    if (st.exchanges == 0) continue;
    int best = max_rainbow(g, c, nbhd);
    ASSERT_LT(st.greedy_size, best);
    EXPECT_GT(static_cast<int>(st.matching.size()), st.greedy_size);
    EXPECT_LE(static_cast<int>(st.matching.size()), best);
    found = true;
  }
  EXPECT_TRUE(found);
}

TEST(RainbowMatchingTest, DenseNeighbourhoodsMeetTheBound) {
  auto c = induced_coloring(build_sts(31));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    Graph h = Graph::complete(31);
    for (int k = 0; k < 40; ++k) {
      int u = static_cast<int>(rng.below(31)), v = static_cast<int>(rng.below(31));
      if (u != v) h.remove_edge(u, v);
    }
    int v = static_cast<int>(rng.below(31));
    RainbowState st = rainbow_matching(h, c, v);
    EXPECT_TRUE(is_rainbow(st, c));
    EXPECT_TRUE(rainbow_bound_holds(st, h)) << "seed " << seed << " |U| = " << st.unmatched.size();
    EXPECT_EQ(st.unmatched.size() + 2 * st.matching.size(), static_cast<std::size_t>(h.degree(v)));
  }
}

TEST(RemainderTest, NoRemainderIsIdentity) {
  Graph g = Graph::complete(63);
  VertexPartition p = partition_vertices(g, 3);
  RemainderResult r = eliminate_remainder(g, p);
  EXPECT_TRUE(r.triangles.empty());
  EXPECT_EQ(r.graph, g);
}

TEST(RemainderTest, SingleDegreeFourVertex) {
  // 63 core vertices complete, plus one vertex joined to four of them.
  Graph g(64);
  for (int u = 0; u < 63; ++u) {
    for (int v = u + 1; v < 63; ++v) g.add_edge(u, v);
  }
  for (int u = 0; u < 4; ++u) g.add_edge(63, u);
  // Restore even degrees on 0..3 and fix |E| mod 3 with a 5-cycle.
  g.remove_edge(0, 1);
  g.remove_edge(2, 3);
  for (int i = 0; i < 5; ++i) g.remove_edge(10 + i, 10 + (i + 1) % 5);
  ASSERT_TRUE(is_tridivisible(g));
  std::vector<int> order(64);
  for (int v = 0; v < 64; ++v) order[static_cast<std::size_t>(v)] = v;
  VertexPartition p(64, 7, order);
  RemainderOptions opt;
  opt.enforce_density_bound = false;
  RemainderResult r = eliminate_remainder(g, p, opt);
  EXPECT_EQ(r.triangles.size(), 2u);
  EXPECT_EQ(r.graph.degree(63), 0);
  EXPECT_EQ(r.graph.edge_count(), g.edge_count() - 6);
}

TEST(RemainderTest, NineteenRemainderVertices) {
  Graph g = Graph::complete(100);  // odd degree 99: remove a perfect matching
  for (int v = 0; v < 100; v += 2) g.remove_edge(v, v + 1);
  // 4900 edges, 4900 = 1 mod 3: remove a 4-cycle on fresh pairs.
  g.remove_edge(0, 2);
  g.remove_edge(2, 4);
  g.remove_edge(4, 6);
  g.remove_edge(6, 0);
  ASSERT_TRUE(is_tridivisible(g));
  VertexPartition p = partition_vertices(g, 11);
  ASSERT_EQ(p.remainder_size(), 19);
  RemainderOptions opt;
  opt.enforce_density_bound = false;
  RemainderResult r = eliminate_remainder(g, p, opt);
  for (int v : p.remainder()) EXPECT_EQ(r.graph.degree(v), 0);
  for (const Triangle& t : r.triangles) {
    int rem = 0;
    for (int v : {t.a, t.b, t.c}) rem += p.in_remainder(v) ? 1 : 0;
    EXPECT_GE(rem, 1);
  }
  EXPECT_NO_THROW(validate_triangle_set(g, r.triangles));
  EXPECT_EQ(r.graph.edge_count() + 3 * static_cast<long long>(r.triangles.size()), g.edge_count());
  EXPECT_TRUE(r.graph.all_degrees_even());
}

TEST(RemainderTest, DensityBoundEnforced) {
  Graph g = Graph::complete(100);
  for (int v = 0; v < 100; v += 2) g.remove_edge(v, v + 1);
  g.remove_edge(0, 2);
  g.remove_edge(2, 4);
  g.remove_edge(4, 6);
  g.remove_edge(6, 0);
  VertexPartition p = partition_vertices(g, 11);
  // 1/6 - 70/100 < 0, so nothing of this size qualifies.
  EXPECT_THROW(eliminate_remainder(g, p), PreconditionError);
}

// Core edge used by each remainder triangle, by the piece it came from.
struct PieceCounts {
  int big = 0, small = 0, block = 0;
};

PieceCounts classify(const VertexPartition& p, const TriangleSet& ts) {
  PieceCounts out;
  for (const Triangle& t : ts) {
    std::vector<int> core;
    for (int v : {t.a, t.b, t.c}) {
      if (!p.in_remainder(v)) core.push_back(v);
    }
    if (core.size() != 2) continue;
    if (p.group_of(core[0]) != p.group_of(core[1])) {
      ++out.big;
    } else if (p.block_of(core[0]) != p.block_of(core[1])) {
      ++out.small;
    } else {
      ++out.block;
    }
  }
  return out;
}

TEST(RemainderTest, OrientationAwareKeepsBlocksAndSmallPiecesIntact) {
  // 243 core vertices and a remainder of 10.
  const Graph g = generate_instance({253, Rational(1, 50), Rational(1, 250), 3});
  VertexPartition p = partition_vertices(g, 5);
  ASSERT_GT(p.remainder_size(), 0);
  RemainderOptions plain{.enforce_density_bound = false};
  RemainderOptions aware{.enforce_density_bound = false, .orientation_aware = true};
  const RemainderResult a = eliminate_remainder(g, p, plain);
  const RemainderResult b = eliminate_remainder(g, p, aware);
  EXPECT_NO_THROW(validate_triangle_set(g, b.triangles));
  EXPECT_EQ(a.triangles.size(), b.triangles.size());
  for (int v : p.remainder()) EXPECT_EQ(b.graph.degree(v), 0);
  const PieceCounts pa = classify(p, a.triangles), pb = classify(p, b.triangles);
  EXPECT_LT(pb.block, pa.block);
  EXPECT_LT(pb.small, pa.small);
}

TEST(PerfectMatchingTest, CostOrderPrefersCheapPartners) {
  Graph g = Graph::complete(6);
  const std::vector<int> left{0, 1, 2}, right{3, 4, 5};
  // Cheapest is the "diagonal" 0-5, 1-4, 2-3.
  const PairCost cost = [](int a, int b) { return a + b == 5 ? 0 : 1; };
  const Matching m = perfect_matching(g, left, right, cost);
  ASSERT_EQ(m.size(), 3u);
  for (auto [a, b] : m.pairs) EXPECT_EQ(a + b, 5);
}

}  // namespace
}  // namespace tridecomp
