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

#include "tridecomp/graph.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>

#include "tridecomp/errors.hpp"

namespace tridecomp {

Triangle::Triangle(int x, int y, int z) {
  std::array<int, 3> s{x, y, z};
  std::sort(s.begin(), s.end());
  a = s[0];
  b = s[1];
  c = s[2];
}

Graph::Graph(int vertex_count)
    : n_(vertex_count),
      words_(static_cast<std::size_t>((vertex_count + 63) / 64)),
      rows_(static_cast<std::size_t>(vertex_count) * words_, 0),
      degree_(static_cast<std::size_t>(vertex_count), 0) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
}

Graph Graph::complete(int vertex_count) {
  Graph g(vertex_count);
  for (int u = 0; u < vertex_count; ++u) {
    for (int v = u + 1; v < vertex_count; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph Graph::from_edges(int vertex_count, std::span<const Edge> edges) {
  Graph g(vertex_count);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v >= vertex_count) throw std::out_of_range("edge endpoint out of range");
    g.add_edge(e);
  }
  return g;
}

bool Graph::add_edge(int u, int v) {
  if (u == v || has_edge(u, v)) return false;
  rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  rows_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
  ++degree_[u];
  ++degree_[v];
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(int u, int v) {
  if (u == v || !has_edge(u, v)) return false;
  rows_[static_cast<std::size_t>(u) * words_ + (v >> 6)] &= ~(std::uint64_t{1} << (v & 63));
  rows_[static_cast<std::size_t>(v) * words_ + (u >> 6)] &= ~(std::uint64_t{1} << (u & 63));
  --degree_[u];
  --degree_[v];
  --edge_count_;
  return true;
}

void Graph::remove_triangle(const Triangle& t) {
  for (const Edge& e : t.edges()) {
    if (!remove_edge(e)) {
      throw ContractViolation("remove_triangle: missing edge " + std::to_string(e.u) + "-" +
                              std::to_string(e.v));
    }
  }
}

void Graph::add_triangle(const Triangle& t) {
  for (const Edge& e : t.edges()) {
    if (!add_edge(e)) {
      throw ContractViolation("add_triangle: edge already present " + std::to_string(e.u) + "-" +
                              std::to_string(e.v));
    }
  }
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(degree_[v]));
  auto r = row(v);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = r[w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(static_cast<int>(w * 64) + b);
      bits &= bits - 1;
    }
  }
  return out;
}

int Graph::count_neighbors_in(int v, std::span<const std::uint64_t> mask) const {
  auto r = row(v);
  int count = 0;
  for (std::size_t w = 0; w < words_; ++w) count += std::popcount(r[w] & mask[w]);
  return count;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (int u = 0; u < n_; ++u) {
    for (int v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const int> vertices) const {
  Graph h(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (has_edge(vertices[i], vertices[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return h;
}

int Graph::min_degree() const {
  if (n_ == 0) return 0;
  return *std::min_element(degree_.begin(), degree_.end());
}

int Graph::max_degree() const {
  if (n_ == 0) return 0;
  return *std::max_element(degree_.begin(), degree_.end());
}

bool Graph::all_degrees_even() const {
  return std::all_of(degree_.begin(), degree_.end(), [](int d) { return d % 2 == 0; });
}

std::vector<std::uint64_t> make_mask(int vertex_count, std::span<const int> members) {
  std::vector<std::uint64_t> mask(static_cast<std::size_t>((vertex_count + 63) / 64), 0);
  for (int v : members) mask[static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
  return mask;
}

bool is_tridivisible(const Graph& g) {
  return g.all_degrees_even() && g.edge_count() % 3 == 0;
}

void validate_triangle_set(const Graph& g, std::span<const Triangle> triangles) {
  std::set<Edge> seen;
  for (const Triangle& t : triangles) {
    if (t.a == t.b || t.b == t.c) throw PreconditionError("degenerate triangle");
    for (const Edge& e : t.edges()) {
      if (!g.has_edge(e)) {
        throw PreconditionError("triangle edge " + std::to_string(e.u) + "-" +
                                std::to_string(e.v) + " not in graph");
      }
      if (!seen.insert(e).second) {
        throw PreconditionError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                " used by two triangles");
      }
    }
  }
}

}  // namespace tridecomp
