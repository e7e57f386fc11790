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

#include <algorithm>
#include <limits>
#include <numeric>

#include "tridecomp/errors.hpp"

namespace tridecomp {

std::string to_string(PartiteMode mode) {
  switch (mode) {
    case PartiteMode::kWhole:
      return "whole";
    case PartiteMode::kBipartite:
      return "bipartite";
    case PartiteMode::kTripartite:
      return "tripartite";
    case PartiteMode::kNinePartite:
      return "nine-partite";
  }
  return "unknown";
}

PartiteView PartiteView::whole(std::vector<int> vertices) {
  PartiteView view;
  view.parts.push_back(std::move(vertices));
  view.mode = PartiteMode::kWhole;
  return view;
}

PartiteView PartiteView::whole_graph(const Graph& g) {
  std::vector<int> all(static_cast<std::size_t>(g.vertex_count()));
  std::iota(all.begin(), all.end(), 0);
  return whole(std::move(all));
}

PartiteView PartiteView::tripartite(std::vector<int> p0, std::vector<int> p1,
                                    std::vector<int> p2) {
  PartiteView view;
  view.parts = {std::move(p0), std::move(p1), std::move(p2)};
  view.mode = PartiteMode::kTripartite;
  return view;
}

std::vector<int> PartiteView::part_index(int vertex_count) const {
  std::vector<int> index(static_cast<std::size_t>(vertex_count), -1);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (int v : parts[p]) index[static_cast<std::size_t>(v)] = static_cast<int>(p);
  }
  return index;
}

void PartiteView::validate(int vertex_count) const {
  std::size_t expected = 0;
  switch (mode) {
    case PartiteMode::kWhole:
      expected = 1;
      break;
    case PartiteMode::kBipartite:
      expected = 2;
      break;
    case PartiteMode::kTripartite:
      expected = 3;
      break;
    case PartiteMode::kNinePartite:
      expected = 9;
      break;
  }
  if (parts.size() != expected) {
    throw PreconditionError(to_string(mode) + " view needs " + std::to_string(expected) +
                            " parts, got " + std::to_string(parts.size()));
  }
  std::vector<char> seen(static_cast<std::size_t>(vertex_count), 0);
  for (const auto& part : parts) {
    for (int v : part) {
      if (v < 0 || v >= vertex_count) throw PreconditionError("view vertex out of range");
      if (seen[static_cast<std::size_t>(v)]++) throw PreconditionError("view parts overlap");
    }
  }
}

long long view_edge_count(const Graph& g, const PartiteView& view) {
  if (view.mode == PartiteMode::kWhole) {
    const auto& part = view.parts.at(0);
    auto mask = make_mask(g.vertex_count(), part);
    long long twice = 0;
    for (int v : part) twice += g.count_neighbors_in(v, mask);
    return twice / 2;
  }
  std::vector<std::vector<std::uint64_t>> masks;
  for (const auto& part : view.parts) masks.push_back(make_mask(g.vertex_count(), part));
  long long total = 0;
  for (std::size_t p = 0; p < view.parts.size(); ++p) {
    for (std::size_t q = p + 1; q < view.parts.size(); ++q) {
      for (int v : view.parts[p]) total += g.count_neighbors_in(v, masks[q]);
    }
  }
  return total;
}

namespace {

int degree_into(const Graph& g, int v, const std::vector<int>& part) {
  int count = 0;
  for (int u : part) count += g.has_edge(v, u) ? 1 : 0;
  return count;
}

int part_of(const PartiteView& view, int v) {
  for (std::size_t p = 0; p < view.parts.size(); ++p) {
    if (std::find(view.parts[p].begin(), view.parts[p].end(), v) != view.parts[p].end()) {
      return static_cast<int>(p);
    }
  }
  throw PreconditionError("vertex " + std::to_string(v) + " not in view");
}

}  // namespace

int deg_plus(const Graph& g, const PartiteView& view, int v) {
  if (view.mode != PartiteMode::kTripartite) throw PreconditionError("deg_plus needs tripartite view");
  int p = part_of(view, v);
  return degree_into(g, v, view.parts[static_cast<std::size_t>((p + 1) % 3)]);
}

int deg_minus(const Graph& g, const PartiteView& view, int v) {
  if (view.mode != PartiteMode::kTripartite) throw PreconditionError("deg_minus needs tripartite view");
  int p = part_of(view, v);
  return degree_into(g, v, view.parts[static_cast<std::size_t>((p + 2) % 3)]);
}

DensityMetrics metrics(const Graph& g, const PartiteView& view) {
  view.validate(g.vertex_count());
  for (const auto& part : view.parts) {
    if (part.empty()) throw PreconditionError("metrics undefined on an empty part");
  }
  DensityMetrics m;
  if (view.mode == PartiteMode::kWhole) {
    const auto& part = view.parts[0];
    const long long k = static_cast<long long>(part.size());
    auto mask = make_mask(g.vertex_count(), part);
    int delta = std::numeric_limits<int>::max();
    long long twice = 0;
    for (int v : part) {
      int d = g.count_neighbors_in(v, mask);
      delta = std::min(delta, d);
      twice += d;
    }
    m.part_size = static_cast<int>(k);
    m.min_degree = delta;
    m.missing = k * (k - 1) / 2 - twice / 2;
    m.xi = Rational(m.missing, k * k);
    m.epsilon = Rational(k - delta, k);
    return m;
  }
  const long long k = static_cast<long long>(view.parts[0].size());
  for (const auto& part : view.parts) {
    if (static_cast<long long>(part.size()) != k) {
      throw PreconditionError("partite metrics need equal part sizes");
    }
  }
  const long long parts = static_cast<long long>(view.parts.size());
  std::vector<std::vector<std::uint64_t>> masks;
  for (const auto& part : view.parts) masks.push_back(make_mask(g.vertex_count(), part));
  int delta = std::numeric_limits<int>::max();
  long long twice = 0;
  for (std::size_t p = 0; p < view.parts.size(); ++p) {
    for (int v : view.parts[p]) {
      for (std::size_t q = 0; q < view.parts.size(); ++q) {
        if (q == p) continue;
        int d = g.count_neighbors_in(v, masks[q]);
        delta = std::min(delta, d);
        twice += d;
      }
    }
  }
  m.part_size = static_cast<int>(k);
  m.min_degree = delta;
  m.missing = parts * (parts - 1) / 2 * k * k - twice / 2;
  m.xi = Rational(m.missing, k * k);
  m.epsilon = Rational(k - delta, k);
  return m;
}

DensityMetrics complement_metrics(const Graph& g, const PartiteView& view) {
  Graph complement(g.vertex_count());
  if (view.mode == PartiteMode::kWhole) {
    const auto& part = view.parts.at(0);
    for (std::size_t i = 0; i < part.size(); ++i) {
      for (std::size_t j = i + 1; j < part.size(); ++j) {
        if (!g.has_edge(part[i], part[j])) complement.add_edge(part[i], part[j]);
      }
    }
  } else {
    for (std::size_t p = 0; p < view.parts.size(); ++p) {
      for (std::size_t q = p + 1; q < view.parts.size(); ++q) {
        for (int u : view.parts[p]) {
          for (int v : view.parts[q]) {
            if (!g.has_edge(u, v)) complement.add_edge(u, v);
          }
        }
      }
    }
  }
  return metrics(complement, view);
}

int leftover_degree(const Graph& g) { return g.max_degree(); }

}  // namespace tridecomp
