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

#include "tridecomp/trades.hpp"

#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "tridecomp/errors.hpp"
#include "tridecomp/rng.hpp"

namespace tridecomp {
namespace {

VertexPartition identity_partition(int vertices) {
  std::vector<int> order(static_cast<std::size_t>(vertices));
  std::iota(order.begin(), order.end(), 0);
  return VertexPartition(vertices, partition_shape(vertices).block_size, order);
}

// All core edges between different blocks.
Graph nine_partite_host(const VertexPartition& p) {
  Graph h(p.vertex_count());
  for (int u = 0; u < p.vertex_count(); ++u) {
    for (int v = u + 1; v < p.vertex_count(); ++v) {
      if (p.in_remainder(u) || p.in_remainder(v)) continue;
      if (p.block_of(u) != p.block_of(v)) h.add_edge(u, v);
    }
  }
  return h;
}

Graph trail_graph(int vertices, const std::vector<Cycle>& trails) {
  Graph g(vertices);
  for (const auto& c : trails) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (!g.add_edge(c[k], c[(k + 1) % c.size()])) ADD_FAILURE() << "trail repeats an edge";
    }
  }
  return g;
}

// Oracle: emitted triangles partition exactly leftover + consumed, consumed
// triangles were edge-disjoint host triangles, and the host lost exactly them.
void expect_exact_trade(const Graph& leftover, const Graph& host_before, const Graph& host_after,
                        const TriangleSet& consumed, const TriangleSet& emitted) {
  std::map<Edge, int> balance;
  for (const Edge& e : leftover.edges()) ++balance[e];
  std::set<Edge> consumed_edges;
  for (const Triangle& t : consumed) {
    for (const Edge& e : t.edges()) {
      EXPECT_TRUE(host_before.has_edge(e));
      EXPECT_FALSE(host_after.has_edge(e));
      EXPECT_TRUE(consumed_edges.insert(e).second) << "edge consumed twice";
      ++balance[e];
    }
  }
  EXPECT_EQ(host_before.edge_count() - host_after.edge_count(), static_cast<long long>(consumed_edges.size()));
  for (const Triangle& t : emitted) {
    EXPECT_TRUE(t.a < t.b && t.b < t.c);
    for (const Edge& e : t.edges()) --balance[e];
  }
  for (const auto& [e, c] : balance) EXPECT_EQ(c, 0) << e.u << "-" << e.v;
}

struct Fixture {
  VertexPartition part = identity_partition(63);
  Graph host = nine_partite_host(part);
};

TEST(TradeEngineTest, ThreeDisjointFourCyclesNeedTwoMergesAndNineShrinks) {
  Fixture f;
  // Each C4 alternates between groups 0 and 1 across different blocks.
  std::vector<Cycle> trails = {{0, 21, 7, 28}, {1, 22, 8, 29}, {2, 23, 9, 30}};
  Graph leftover = trail_graph(63, trails);
  for (const Edge& e : leftover.edges()) f.host.remove_edge(e);
  Graph before = f.host;
  AbsorbResult r = absorb_leftovers(leftover, f.host, f.part);
  EXPECT_EQ(r.ledger.merge_trades, 2);
  EXPECT_EQ(r.ledger.shrink_trades, 9);
  EXPECT_EQ(r.ledger.splice_merges, 0);
  EXPECT_EQ(r.ledger.splits, 0);
  expect_exact_trade(leftover, before, f.host, r.consumed, r.emitted);
}

TEST(TradeEngineTest, EmptyLeftoverIsIdentity) {
  Fixture f;
  Graph before = f.host;
  AbsorbResult r = absorb_leftovers(Graph(63), f.host, f.part);
  EXPECT_TRUE(r.emitted.empty());
  EXPECT_TRUE(r.consumed.empty());
  EXPECT_EQ(f.host, before);
}

TEST(TradeEngineTest, NineCycleShrinksOnceThenCloses) {
  Fixture f;
  Cycle c9 = {0, 21, 42, 7, 28, 49, 14, 35, 56};  // labels 0,1,2 repeating
  Graph leftover = trail_graph(63, {c9});
  for (const Edge& e : leftover.edges()) f.host.remove_edge(e);
  std::vector<int> labels(63), blocks(63);
  for (int v = 0; v < 63; ++v) {
    labels[static_cast<std::size_t>(v)] = f.part.group_of(v);
    blocks[static_cast<std::size_t>(v)] = f.part.block_of(v) % 3;
  }
  Graph before = f.host;
  TradeEngine engine(f.host, labels, blocks);
  TradeStep first = engine.shrink_cycle(c9);
  ASSERT_EQ(first.trails.size(), 1u);
  EXPECT_EQ(first.trails[0].size(), 6u);
  EXPECT_EQ(first.p3_position, 0);
  TradeStep second = engine.shrink_cycle(first.trails[0], first.p3_position);
  EXPECT_TRUE(second.trails.empty());
  EXPECT_EQ(engine.ledger().shrink_trades, 2);
  EXPECT_EQ(engine.ledger().hexagon_trades, 1);
  expect_exact_trade(leftover, before, f.host, engine.consumed(), engine.emitted());
}

TEST(TradeEngineTest, SixCycleInsideOneBlock) {
  Fixture f;
  Cycle c6 = {0, 1, 2, 3, 4, 5};  // all in V_{0,0}: labelling 111111, one block
  Graph leftover = trail_graph(63, {c6});
  Graph before = f.host;
  AbsorbResult r = absorb_leftovers(leftover, f.host, f.part);
  EXPECT_EQ(r.ledger.shrink_trades, 1);
  EXPECT_EQ(r.ledger.consumed_total(), static_cast<long long>(r.consumed.size()));
  expect_exact_trade(leftover, before, f.host, r.consumed, r.emitted);
}

TEST(TradeEngineTest, TripartiteHexagonAppliesDirectly) {
  Fixture f;
  Cycle c6 = {0, 21, 42, 7, 28, 49};
  Graph leftover = trail_graph(63, {c6});
  for (const Edge& e : leftover.edges()) f.host.remove_edge(e);
  Graph before = f.host;
  AbsorbResult r = absorb_leftovers(leftover, f.host, f.part);
  EXPECT_EQ(r.ledger.hexagon_trades, 1);
  EXPECT_EQ(r.ledger.refined_templates, 0);
  expect_exact_trade(leftover, before, f.host, r.consumed, r.emitted);
}

TEST(TradeEngineTest, FourAndFiveCycleMergeAndClose) {
  Fixture f;
  std::vector<Cycle> trails = {{0, 21, 7, 28}, {1, 22, 43, 8, 29}};
  Graph leftover = trail_graph(63, trails);
  for (const Edge& e : leftover.edges()) f.host.remove_edge(e);
  Graph before = f.host;
  AbsorbResult r = absorb_leftovers(leftover, f.host, f.part);
  EXPECT_EQ(r.ledger.merge_trades, 1);
  // 4 + 5 + 9 = 18: five shrinks down to triangles.
  EXPECT_EQ(r.ledger.shrink_trades, 5);
  EXPECT_EQ(r.ledger.max_cross_per_trade <= 7, true);
  expect_exact_trade(leftover, before, f.host, r.consumed, r.emitted);
}

TEST(TradeEngineTest, SharedVertexSplicesWithoutTriangles) {
  Fixture f;
  std::vector<int> labels(63), blocks(63, -1);
  for (int v = 0; v < 63; ++v) labels[static_cast<std::size_t>(v)] = f.part.group_of(v);
  TradeEngine engine(f.host, labels, blocks);
  TradeStep s = engine.merge_cycles({0, 21, 7, 28}, {0, 22, 8, 29});
  ASSERT_EQ(s.trails.size(), 1u);
  EXPECT_EQ(s.trails[0].size(), 8u);
  EXPECT_TRUE(s.consumed.empty());
  EXPECT_EQ(engine.ledger().splice_merges, 1);
  EXPECT_EQ(engine.ledger().merge_trades, 0);
}

TEST(TradeEngineTest, MergeGadgetUsesThreeCrossTriangles) {
  Fixture f;
  TradeOptions opts;
  opts.allow_splice = false;
  std::vector<int> labels(63), blocks(63, -1);
  for (int v = 0; v < 63; ++v) labels[static_cast<std::size_t>(v)] = f.part.group_of(v);
  Graph before = f.host;
  TradeEngine engine(f.host, labels, blocks, opts);
  TradeStep s = engine.merge_cycles({0, 21, 7, 28}, {1, 22, 43, 8, 29});
  ASSERT_EQ(s.trails.size(), 1u);
  EXPECT_EQ(s.trails[0].size(), 18u);
  ASSERT_EQ(s.consumed.size(), 3u);
  for (const Triangle& t : s.consumed) {
    std::set<int> g{f.part.group_of(t.a), f.part.group_of(t.b), f.part.group_of(t.c)};
    EXPECT_EQ(g.size(), 3u);
    EXPECT_TRUE(before.has_triangle(t));
  }
  // The joined trail uses the nine gadget edges once each.
  Graph joined = trail_graph(63, {s.trails[0]});
  EXPECT_EQ(joined.edge_count(), 18);
}

TEST(TradeEngineTest, MergeRejectsResidueZero) {
  Fixture f;
  TradeEngine engine(f.host, std::vector<int>(63, 0), {});
  EXPECT_THROW(engine.merge_cycles({0, 1, 2}, {3, 4, 5, 6}), PreconditionError);
}

TEST(TradeEngineTest, ExhaustionNamesTheTrail) {
  Graph host(63);  // nothing to borrow from
  std::vector<int> labels(63);
  for (int v = 0; v < 63; ++v) labels[static_cast<std::size_t>(v)] = v % 3;
  TradeEngine engine(host, labels, {});
  try {
    engine.shrink_cycle({0, 1, 2, 3, 4, 5, 6});
    FAIL() << "expected CandidateExhausted";
  } catch (const CandidateExhausted& e) {
    EXPECT_NE(std::string(e.what()).find("length 7"), std::string::npos);
  }
}

// Random even leftover made of short cycles inside the core, removed from a
// complete nine-partite host.
std::vector<Cycle> random_cycles(Rng& rng, int core, int count, std::set<Edge>& used) {
  std::vector<Cycle> out;
  while (static_cast<int>(out.size()) < count) {
    int len = 3 + static_cast<int>(rng.below(6));
    Cycle c;
    std::set<int> vs;
    while (static_cast<int>(c.size()) < len) {
      int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(core)));
      if (vs.insert(v).second) c.push_back(v);
    }
    bool ok = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (used.count(Edge(c[k], c[(k + 1) % c.size()]))) ok = false;
    }
    if (!ok) continue;
    for (std::size_t k = 0; k < c.size(); ++k) used.insert(Edge(c[k], c[(k + 1) % c.size()]));
    out.push_back(c);
  }
  return out;
}

TEST(TradeEngineTest, RandomLeftoversAbsorbExactly) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Rng rng(seed);
    VertexPartition part = identity_partition(seed % 2 ? 63 : 117);
    Graph host = nine_partite_host(part);
    const int core = 9 * part.block_size();
    std::set<Edge> used;
    std::vector<Cycle> cycles;
    long long total = 0;
    do {
      cycles = random_cycles(rng, core, 1 + static_cast<int>(rng.below(5)), used);
      total = 0;
      for (const auto& c : cycles) total += static_cast<long long>(c.size());
      used.clear();
    } while (total % 3 != 0);
    Graph leftover = trail_graph(host.vertex_count(), cycles);
    for (const Edge& e : leftover.edges()) host.remove_edge(e);
    Graph before = host;
    AbsorbResult r = absorb_leftovers(leftover, host, part);
    expect_exact_trade(leftover, before, host, r.consumed, r.emitted);
    // The xi bounds are pure counting. The epsilon bounds lean on the
    // side condition 2 xi + 22|E(L)|/n < eps, which a complete host fails.
    EXPECT_TRUE(r.xi_t_bound()) << "seed " << seed;
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(r.xi_ti_bound(i)) << "seed " << seed;
  }
}

TEST(TradeEngineTest, OrderingSwitchOnlyChangesSchedule) {
  for (auto ordering : {TradeOptions::Ordering::kMod3, TradeOptions::Ordering::kMod4}) {
    Fixture f;
    std::vector<Cycle> trails = {{0, 21, 7, 28, 14, 35, 42}, {1, 22, 8, 29, 15}};  // 7 + 5
    Graph leftover = trail_graph(63, trails);
    for (const Edge& e : leftover.edges()) f.host.remove_edge(e);
    Graph before = f.host;
    TradeOptions opts;
    opts.ordering = ordering;
    AbsorbResult r = absorb_leftovers(leftover, f.host, f.part, opts);
    expect_exact_trade(leftover, before, f.host, r.consumed, r.emitted);
  }
}

// --- complement preparation ----------------------------------------------

struct TriFixture {
  Graph host;
  PartiteView view;
};

TriFixture complete_tripartite(int k) {
  TriFixture t{Graph(3 * k), {}};
  std::vector<int> p[3];
  for (int v = 0; v < 3 * k; ++v) p[v / k].push_back(v);
  for (int u = 0; u < 3 * k; ++u) {
    for (int v = u + 1; v < 3 * k; ++v) {
      if (u / k != v / k) t.host.add_edge(u, v);
    }
  }
  t.view = PartiteView::tripartite(p[0], p[1], p[2]);
  return t;
}

void expect_cells_cover(const Graph& before, const Graph& after, const PartiteView& view,
                        const ComplementResult& r) {
  // Cells must partition (complement of before) + consumed, and be tripartite.
  auto part = view.part_index(before.vertex_count());
  std::map<Edge, int> cover;
  for (const Triangle& t : r.cells) {
    std::set<int> ps{part[static_cast<std::size_t>(t.a)], part[static_cast<std::size_t>(t.b)],
                     part[static_cast<std::size_t>(t.c)]};
    EXPECT_EQ(ps.size(), 3u);
    for (const Edge& e : t.edges()) ++cover[e];
  }
  std::set<Edge> consumed;
  for (const Triangle& t : r.consumed) {
    for (const Edge& e : t.edges()) {
      EXPECT_TRUE(before.has_edge(e));
      EXPECT_FALSE(after.has_edge(e));
      consumed.insert(e);
    }
  }
  for (const auto& [e, c] : cover) {
    EXPECT_EQ(c, 1);
    EXPECT_TRUE(!before.has_edge(e) || consumed.count(e));
  }
  long long complement = 0;
  for (int u = 0; u < before.vertex_count(); ++u) {
    for (int v = u + 1; v < before.vertex_count(); ++v) {
      int pu = part[static_cast<std::size_t>(u)], pv = part[static_cast<std::size_t>(v)];
      if (pu >= 0 && pv >= 0 && pu != pv && !before.has_edge(u, v)) ++complement;
    }
  }
  EXPECT_EQ(static_cast<long long>(cover.size()), complement + static_cast<long long>(consumed.size()));
}

TEST(ComplementTest, CompleteTripartiteNeedsNothing) {
  TriFixture t = complete_tripartite(9);
  ComplementResult r = prepare_complement(t.host, t.view);
  EXPECT_TRUE(r.consumed.empty());
  EXPECT_TRUE(r.cells.empty());
}

ComplementOptions relaxed() {
  ComplementOptions o;
  o.enforce_preconditions = false;
  return o;
}

TEST(ComplementTest, DegreeConditionIsChecked) {
  TriFixture t = complete_tripartite(9);
  t.host.remove_triangle(Triangle(0, 9, 18));
  // 9 - 8 * (1/9) * 9 = 1, not > 3.
  EXPECT_THROW(prepare_complement(t.host, t.view), PreconditionError);
}

TEST(ComplementTest, OrientedTriangleIsACellAsIs) {
  TriFixture t = complete_tripartite(9);
  t.host.remove_triangle(Triangle(0, 9, 18));
  Graph before = t.host;
  ComplementResult r = prepare_complement(t.host, t.view, relaxed());
  EXPECT_TRUE(r.consumed.empty());
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0], Triangle(0, 9, 18));
  EXPECT_EQ(r.ledger.shrink_trades, 0);
}

TEST(ComplementTest, OrientedHexagonTakesOneTrade) {
  TriFixture t = complete_tripartite(9);
  Cycle c6 = {0, 9, 18, 1, 10, 19};
  for (std::size_t k = 0; k < 6; ++k) t.host.remove_edge(c6[k], c6[(k + 1) % 6]);
  Graph before = t.host;
  ComplementResult r = prepare_complement(t.host, t.view, relaxed());
  EXPECT_EQ(r.ledger.shrink_trades, 1);
  EXPECT_LE(r.consumed.size(), 7u);
  expect_cells_cover(before, t.host, t.view, r);
  // Doubling of epsilon is asymptotic: a fresh internal vertex already loses
  // several edges per part here. The xi bound is exact counting.
  EXPECT_TRUE(r.xi_bound());
}

TEST(ComplementTest, RandomBalancedComplements) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    TriFixture t = complete_tripartite(15);
    Rng rng(seed);
    // Remove a few random positively oriented closed walks.
    for (int w = 0; w < 4; ++w) {
      int len = 3 * (1 + static_cast<int>(rng.below(4)));
      std::vector<int> walk;
      std::set<int> seen;
      for (int k = 0; k < len; ++k) {
        int v;
        do {
          v = (k % 3) * 15 + static_cast<int>(rng.below(15));
        } while (seen.count(v));
        seen.insert(v);
        walk.push_back(v);
      }
      bool ok = true;
      for (int k = 0; k < len; ++k) ok = ok && t.host.has_edge(walk[k], walk[(k + 1) % len]);
      if (!ok) continue;
      for (int k = 0; k < len; ++k) t.host.remove_edge(walk[k], walk[(k + 1) % len]);
    }
    Graph before = t.host;
    ComplementResult r = prepare_complement(t.host, t.view, relaxed());
    expect_cells_cover(before, t.host, t.view, r);
    EXPECT_TRUE(r.xi_bound()) << "seed " << seed;
    EXPECT_TRUE(is_balanced(t.host, t.view));
  }
}

TEST(ComplementTest, RejectsUnbalancedView) {
  TriFixture t = complete_tripartite(9);
  t.host.remove_edge(0, 9);
  EXPECT_THROW(prepare_complement(t.host, t.view), PreconditionError);
}

}  // namespace
}  // namespace tridecomp
