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

#include <numeric>
#include <string>

#include "tridecomp/errors.hpp"
#include "tridecomp/rng.hpp"

namespace tridecomp {

PartitionShape partition_shape(int vertex_count) {
  for (int n = vertex_count / 9; n >= 7; --n) {
    if (n % 6 != 1 && n % 6 != 3) continue;
    int r = vertex_count - 9 * n;
    if (r <= 35) return {n, r};
    break;  // smaller n only grows r
  }
  throw PreconditionError("graph too small to partition: |V| = " + std::to_string(vertex_count) +
                          " (need 9n + r with n = 1,3 mod 6, n >= 7, r <= 35)");
}

VertexPartition::VertexPartition(int vertex_count, int block_size, std::vector<int> order)
    : vertex_count_(vertex_count),
      block_size_(block_size),
      group_of_(static_cast<std::size_t>(vertex_count), -1),
      block_of_(static_cast<std::size_t>(vertex_count), -1),
      position_(static_cast<std::size_t>(vertex_count), -1) {
  if (static_cast<int>(order.size()) != vertex_count || 9 * block_size > vertex_count) {
    throw PreconditionError("partition order does not match the vertex count");
  }
  for (int b = 0; b < 9; ++b) {
    auto& block = blocks_[static_cast<std::size_t>(b)];
    for (int k = 0; k < block_size; ++k) {
      int v = order[static_cast<std::size_t>(b * block_size + k)];
      block.push_back(v);
      group_of_[static_cast<std::size_t>(v)] = b / 3;
      block_of_[static_cast<std::size_t>(v)] = b;
      position_[static_cast<std::size_t>(v)] = k;
    }
  }
  remainder_.assign(order.begin() + 9 * block_size, order.end());
}

std::vector<int> VertexPartition::group(int i) const {
  std::vector<int> out;
  for (int j = 0; j < 3; ++j) {
    const auto& b = block(i, j);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

PartiteView VertexPartition::big_tripartite() const {
  return PartiteView::tripartite(group(0), group(1), group(2));
}

PartiteView VertexPartition::small_tripartite(int i) const {
  return PartiteView::tripartite(block(i, 0), block(i, 1), block(i, 2));
}

PartiteView VertexPartition::block_view(int i, int j) const { return PartiteView::whole(block(i, j)); }

PartiteView VertexPartition::nine_partite() const {
  PartiteView view;
  view.mode = PartiteMode::kNinePartite;
  for (const auto& b : blocks_) view.parts.push_back(b);
  return view;
}

PartiteView VertexPartition::core_view() const {
  std::vector<int> all;
  for (const auto& b : blocks_) all.insert(all.end(), b.begin(), b.end());
  return PartiteView::whole(std::move(all));
}

VertexPartition partition_vertices(const Graph& g, std::uint64_t seed) {
  PartitionShape shape = partition_shape(g.vertex_count());
  std::vector<int> order(static_cast<std::size_t>(g.vertex_count()));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  return VertexPartition(g.vertex_count(), shape.block_size, std::move(order));
}

}  // namespace tridecomp
