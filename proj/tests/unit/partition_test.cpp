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

#include "tridecomp/partition.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "tridecomp/errors.hpp"

namespace tridecomp {
namespace {

// Independent scan: every admissible (n, r), keep the largest n.
PartitionShape brute_shape(int v) {
  PartitionShape best{-1, -1};
  for (int n = 7; 9 * n <= v; ++n) {
    if (n % 6 != 1 && n % 6 != 3) continue;
    int r = v - 9 * n;
    if (r >= 0 && r <= 35) best = {n, r};
  }
  return best;
}

TEST(PartitionTest, ShapeExamples) {
  auto s100 = partition_shape(100);
  EXPECT_EQ(s100.block_size, 9);
  EXPECT_EQ(s100.remainder, 19);
  auto s63 = partition_shape(63);
  EXPECT_EQ(s63.block_size, 7);
  EXPECT_EQ(s63.remainder, 0);
  auto s120 = partition_shape(120);
  EXPECT_EQ(s120.block_size, 13);
  EXPECT_EQ(s120.remainder, 3);
}

TEST(PartitionTest, ShapeMatchesScan) {
  for (int v = 63; v <= 1200; ++v) {
    auto got = partition_shape(v);
    auto want = brute_shape(v);
    ASSERT_EQ(got.block_size, want.block_size) << v;
    ASSERT_EQ(got.remainder, want.remainder) << v;
  }
}

TEST(PartitionTest, TooSmall) {
  EXPECT_THROW(partition_shape(62), PreconditionError);
  EXPECT_THROW(partition_shape(9), PreconditionError);
}

TEST(PartitionTest, PartsCoverVertices) {
  Graph g = Graph::complete(100);
  VertexPartition p = partition_vertices(g, 17);
  std::vector<int> all;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      ASSERT_EQ(p.block(i, j).size(), 9u);
      for (int v : p.block(i, j)) {
        EXPECT_EQ(p.group_of(v), i);
        EXPECT_EQ(p.block_of(v), 3 * i + j);
      }
      all.insert(all.end(), p.block(i, j).begin(), p.block(i, j).end());
    }
  }
  for (int v : p.remainder()) EXPECT_TRUE(p.in_remainder(v));
  all.insert(all.end(), p.remainder().begin(), p.remainder().end());
  std::sort(all.begin(), all.end());
  for (int v = 0; v < 100; ++v) EXPECT_EQ(all[static_cast<std::size_t>(v)], v);
}

TEST(PartitionTest, SeedDeterministic) {
  Graph g = Graph::complete(82);
  VertexPartition a = partition_vertices(g, 5);
  VertexPartition b = partition_vertices(g, 5);
  VertexPartition c = partition_vertices(g, 6);
  EXPECT_EQ(a.block(1, 2), b.block(1, 2));
  EXPECT_EQ(a.remainder(), b.remainder());
  bool differs = false;
  for (int i = 0; i < 3; ++i) differs |= a.block(i, 0) != c.block(i, 0);
  EXPECT_TRUE(differs);
}

TEST(PartitionTest, ViewsHaveExpectedModes) {
  Graph g = Graph::complete(63);
  VertexPartition p = partition_vertices(g, 1);
  EXPECT_EQ(p.big_tripartite().parts[0].size(), 21u);
  EXPECT_EQ(p.small_tripartite(2).parts[1], p.block(2, 1));
  auto m = metrics(g, p.big_tripartite());
  EXPECT_EQ(m.epsilon, Rational(0));
  EXPECT_EQ(p.nine_partite().parts.size(), 9u);
}

}  // namespace
}  // namespace tridecomp
