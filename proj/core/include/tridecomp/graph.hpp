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

#ifndef TRIDECOMP_GRAPH_HPP_
#define TRIDECOMP_GRAPH_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace tridecomp {

// Unordered vertex pair, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

// Unordered vertex triple, stored sorted.
struct Triangle {
  int a = 0;
  int b = 0;
  int c = 0;

  Triangle() = default;
  Triangle(int x, int y, int z);

  std::array<Edge, 3> edges() const { return {Edge(a, b), Edge(a, c), Edge(b, c)}; }
  bool contains(int v) const { return a == v || b == v || c == v; }

  auto operator<=>(const Triangle&) const = default;
};

// Ordered collection of vertex triples meant to be edge-disjoint.
using TriangleSet = std::vector<Triangle>;

// Undirected simple graph on the dense vertex range [0, n). Adjacency is a
// bit matrix, so membership, insertion and removal are O(1) and neighbour
// scans cost O(n / 64).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);

  static Graph complete(int vertex_count);
  static Graph from_edges(int vertex_count, std::span<const Edge> edges);

  int vertex_count() const { return n_; }
  long long edge_count() const { return edge_count_; }
  int degree(int v) const { return degree_[v]; }

  bool has_edge(int u, int v) const {
    return (rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

  // Returns false (and leaves the graph unchanged) for loops or duplicates.
  bool add_edge(int u, int v);
  bool add_edge(const Edge& e) { return add_edge(e.u, e.v); }
  // Returns false if the edge was absent.
  bool remove_edge(int u, int v);
  bool remove_edge(const Edge& e) { return remove_edge(e.u, e.v); }

  bool has_triangle(const Triangle& t) const {
    return has_edge(t.a, t.b) && has_edge(t.a, t.c) && has_edge(t.b, t.c);
  }
  void remove_triangle(const Triangle& t);
  void add_triangle(const Triangle& t);

  // Ascending neighbour list.
  std::vector<int> neighbors(int v) const;
  // Number of neighbours of v inside `mask` (a bit row of this graph's width).
  int count_neighbors_in(int v, std::span<const std::uint64_t> mask) const;
  std::span<const std::uint64_t> row(int v) const {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  std::size_t words() const { return words_; }

  // Edges in ascending lexicographic order.
  std::vector<Edge> edges() const;

  // Induced subgraph on `vertices`; vertex k of the result is vertices[k].
  Graph induced(std::span<const int> vertices) const;

  int min_degree() const;
  int max_degree() const;
  bool all_degrees_even() const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && rows_ == other.rows_;
  }

 private:
  int n_ = 0;
  std::size_t words_ = 0;
  long long edge_count_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<int> degree_;
};

// Bit row of width `vertex_count` with the given members set.
std::vector<std::uint64_t> make_mask(int vertex_count, std::span<const int> members);

// Every vertex degree even and |E| divisible by three.
bool is_tridivisible(const Graph& g);

// Throws PreconditionError unless the triangles are pairwise edge-disjoint
// and every triangle edge is present in g.
void validate_triangle_set(const Graph& g, std::span<const Triangle> triangles);

}  // namespace tridecomp

#endif  // TRIDECOMP_GRAPH_HPP_
