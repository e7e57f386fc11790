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

#ifndef TRIDECOMP_PARTITION_HPP_
#define TRIDECOMP_PARTITION_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "tridecomp/graph.hpp"
#include "tridecomp/metrics.hpp"

namespace tridecomp {

// |V| = 9n + r with n = 1 or 3 (mod 6) and 0 <= r <= 35, n maximal.
struct PartitionShape {
  int block_size = 0;  // n
  int remainder = 0;   // r
};

// Throws PreconditionError when |V| < 63.
PartitionShape partition_shape(int vertex_count);

// Ten-way split of the vertex set: nine blocks V_{i,j} of size n plus V_rem.
// Indices i, j are zero-based here.
class VertexPartition {
 public:
  VertexPartition() = default;
  VertexPartition(int vertex_count, int block_size, std::vector<int> order);

  int vertex_count() const { return vertex_count_; }
  int block_size() const { return block_size_; }
  int remainder_size() const { return static_cast<int>(remainder_.size()); }

  const std::vector<int>& block(int i, int j) const { return blocks_[idx(i, j)]; }
  const std::vector<int>& remainder() const { return remainder_; }
  // Union of V_{i,0}, V_{i,1}, V_{i,2}.
  std::vector<int> group(int i) const;

  // -1 for remainder vertices.
  int group_of(int v) const { return group_of_[static_cast<std::size_t>(v)]; }
  int block_of(int v) const { return block_of_[static_cast<std::size_t>(v)]; }
  bool in_remainder(int v) const { return group_of(v) < 0; }
  // Position of v within its block, -1 for remainder vertices.
  int position_in_block(int v) const { return position_[static_cast<std::size_t>(v)]; }

  // T: tripartite on (V_0, V_1, V_2) with parts of size 3n.
  PartiteView big_tripartite() const;
  // T_i: tripartite on (V_{i,0}, V_{i,1}, V_{i,2}).
  PartiteView small_tripartite(int i) const;
  // G_{i,j}: induced block.
  PartiteView block_view(int i, int j) const;
  // Nine-partite view over all blocks.
  PartiteView nine_partite() const;
  // Whole view over the 9n non-remainder vertices.
  PartiteView core_view() const;

 private:
  static std::size_t idx(int i, int j) { return static_cast<std::size_t>(3 * i + j); }

  int vertex_count_ = 0;
  int block_size_ = 0;
  std::array<std::vector<int>, 9> blocks_;
  std::vector<int> remainder_;
  std::vector<int> group_of_;
  std::vector<int> block_of_;
  std::vector<int> position_;
};

// Seed-deterministic split. The shuffle uses mt19937_64 with an explicit
// Fisher-Yates pass so output is identical across standard libraries.
VertexPartition partition_vertices(const Graph& g, std::uint64_t seed);

}  // namespace tridecomp

#endif  // TRIDECOMP_PARTITION_HPP_
