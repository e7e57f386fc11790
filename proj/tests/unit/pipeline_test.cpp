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


#include "tridecomp/pipeline.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "tridecomp/io.hpp"
#include "tridecomp/verify.hpp"

namespace tridecomp {
namespace {

void expect_decomposes(const Graph& g, const PipelineResult& r) {
  const DecompositionReport rep = check_decomposition(g, r.triangles);
  EXPECT_TRUE(rep.ok) << rep.to_string();
  EXPECT_EQ(static_cast<long long>(r.triangles.size()) * 3, g.edge_count());
}

const LedgerEntry* find_entry(const DensityLedger& ledger, const std::string& stage, const std::string& quantity) {
  for (const auto& e : ledger.entries()) {
    if (e.stage == stage && e.quantity == quantity) return &e;
  }
  return nullptr;
}

TEST(PipelineTest, EmptyGraphGivesNothing) {
  const PipelineResult r = decompose(Graph(0), 1);
  EXPECT_TRUE(r.triangles.empty());
  const PipelineResult r5 = decompose(Graph(5), 1);
  EXPECT_TRUE(r5.triangles.empty());
}

TEST(PipelineTest, SmallCompleteGraphsUseSteinerSystems) {
  for (int n : {3, 7, 9, 13}) {
    const Graph g = Graph::complete(n);
    const PipelineResult r = decompose(g, 4);
    EXPECT_TRUE(r.degenerate);
    expect_decomposes(g, r);
  }
  EXPECT_EQ(decompose(Graph::complete(9), 0).triangles.size(), 12u);
}

TEST(PipelineTest, K63) {
  const Graph g = Graph::complete(63);
  const PipelineResult r = decompose(g, 2);
  EXPECT_EQ(r.triangles.size(), 651u);
  expect_decomposes(g, r);
}

TEST(PipelineTest, CompleteInputHasZeroXi) {
  const PipelineResult r = decompose(Graph::complete(81), 3);
  const LedgerEntry* xi = find_entry(r.ledger, "input", "xi(G)");
  ASSERT_NE(xi, nullptr);
  EXPECT_EQ(xi->value, Rational(0));
  EXPECT_TRUE(xi->holds);
}

TEST(PipelineTest, ForcedFullRunOnCompleteGraph) {
  PipelineOptions o;
  o.force_full_pipeline = true;
  const Graph g = Graph::complete(81);
  const PipelineResult r = decompose(g, 5, o);
  EXPECT_FALSE(r.degenerate);
  expect_decomposes(g, r);
  EXPECT_GT(r.totals.latin_triangles, 0);
}

TEST(PipelineTest, GeneratedInstancesWithoutRemainder) {
  for (int n : {135, 171}) {
    for (std::uint64_t seed : {0u, 1u}) {
      const Graph g = generate_instance({n, Rational(1, 50), Rational(1, 2000), seed});
      const PipelineResult r = decompose(g, seed);
      EXPECT_FALSE(r.degenerate);
      expect_decomposes(g, r);
      EXPECT_TRUE(r.ledger.all_hold(LedgerEntry::Kind::kPrecondition));
    }
  }
}

TEST(PipelineTest, SameSeedSameOutput) {
  const Graph g = generate_instance({135, Rational(1, 50), Rational(1, 2000), 7});
  const PipelineResult a = decompose(g, 11);
  const PipelineResult b = decompose(g, 11);
  EXPECT_EQ(a.triangles, b.triangles);
  EXPECT_EQ(a.ledger.report(), b.ledger.report());
}

TEST(PipelineTest, ThreadedNearTriangulationMatchesSerial) {
  const Graph g = generate_instance({171, Rational(1, 50), Rational(1, 2000), 3});
  PipelineOptions o;
  o.threads = 4;
  EXPECT_EQ(decompose(g, 9).triangles, decompose(g, 9, o).triangles);
}

TEST(PipelineTest, Mod4OrderingAlsoWorks) {
  const Graph g = generate_instance({135, Rational(1, 50), Rational(1, 2000), 2});
  PipelineOptions o;
  o.ordering = TradeOptions::Ordering::kMod4;
  expect_decomposes(g, decompose(g, 2, o));
}

TEST(PipelineTest, NonTridivisibleInputIsRejected) {
  Graph g(4);
  for (int i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4);
  try {
    decompose(g, 0);
    FAIL() << "expected PipelineError";
  } catch (const PipelineError& e) {
    EXPECT_EQ(e.stage(), "input");
    ASSERT_FALSE(e.ledger().entries().empty());
    EXPECT_FALSE(e.ledger().entries().back().holds);
  }
}

TEST(PipelineTest, SmallNonCompleteGraphFails) {
  Graph g = Graph::complete(9);
  g.remove_triangle(Triangle(0, 1, 2));
  ASSERT_TRUE(is_tridivisible(g));
  EXPECT_THROW(decompose(g, 0), PipelineError);
}

TEST(PipelineTest, StrictModeStopsOnRegionMiss) {
  // eps(K63) = 1/63 is far outside the asymptotic input region.
  PipelineOptions o;
  o.strict = true;
  try {
    decompose(Graph::complete(63), 0, o);
    FAIL() << "expected PipelineError";
  } catch (const PipelineError& e) {
    EXPECT_EQ(e.stage(), "input");
    EXPECT_NE(e.inequality().find("eps(G)"), std::string::npos);
  }
}

TEST(PipelineTest, RetryCountsAttempts) {
  const Graph g = generate_instance({135, Rational(1, 50), Rational(1, 2000), 1});
  PipelineOptions o;
  o.retry_attempts = 3;
  const PipelineResult r = decompose(g, 1, o);
  EXPECT_GE(r.attempts, 1);
  EXPECT_LE(r.attempts, 4);
  expect_decomposes(g, r);
}

TEST(PipelineTest, ReportHasOneLinePerEntry) {
  const PipelineResult r = decompose(Graph::complete(9), 0);
  const std::string text = r.ledger.report();
  const auto lines = std::count(text.begin(), text.end(), '\n');
  EXPECT_EQ(static_cast<std::size_t>(lines), r.ledger.entries().size());
}

}  // namespace
}  // namespace tridecomp
