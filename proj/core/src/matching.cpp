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

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string>

#include "tridecomp/errors.hpp"

namespace tridecomp {

namespace {

class Kuhn {
 public:
  Kuhn(const Graph& g, std::span<const int> left, std::span<const int> right, const PairCost* cost = nullptr)
      : left_(left.begin(), left.end()), right_(right.begin(), right.end()) {
    adj_.resize(left_.size());
    for (std::size_t i = 0; i < left_.size(); ++i) {
      for (std::size_t j = 0; j < right_.size(); ++j) {
        if (g.has_edge(left_[i], right_[j])) adj_[i].push_back(static_cast<int>(j));
      }
      if (cost) {
        // Cheap partners first, in both the greedy pass and the augmenting search.
        std::vector<int> c(right_.size());
        for (int j : adj_[i]) c[static_cast<std::size_t>(j)] = (*cost)(left_[i], right_[static_cast<std::size_t>(j)]);
        std::stable_sort(adj_[i].begin(), adj_[i].end(),
                         [&](int a, int b) { return c[static_cast<std::size_t>(a)] < c[static_cast<std::size_t>(b)]; });
      }
    }
    match_left_.assign(left_.size(), -1);
    match_right_.assign(right_.size(), -1);
  }

  // Returns the index of a left vertex that could not be matched, or -1.
  int run() {
    // Greedy pass first; on dense inputs it leaves few augmentations.
    for (std::size_t i = 0; i < left_.size(); ++i) {
      for (int j : adj_[i]) {
        if (match_right_[static_cast<std::size_t>(j)] < 0) {
          match_left_[i] = j;
          match_right_[static_cast<std::size_t>(j)] = static_cast<int>(i);
          break;
        }
      }
    }
    for (std::size_t i = 0; i < left_.size(); ++i) {
      if (match_left_[i] >= 0) continue;
      seen_.assign(right_.size(), 0);
      if (!augment(static_cast<int>(i))) return static_cast<int>(i);
    }
    return -1;
  }

  // Alternating-path closure from an unmatched left vertex: a Hall witness.
  HallViolation witness(int start) const {
    std::vector<char> left_in(left_.size(), 0), right_in(right_.size(), 0);
    std::deque<int> queue{start};
    left_in[static_cast<std::size_t>(start)] = 1;
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      for (int j : adj_[static_cast<std::size_t>(i)]) {
        if (right_in[static_cast<std::size_t>(j)]) continue;
        right_in[static_cast<std::size_t>(j)] = 1;
        int k = match_right_[static_cast<std::size_t>(j)];
        if (k >= 0 && !left_in[static_cast<std::size_t>(k)]) {
          left_in[static_cast<std::size_t>(k)] = 1;
          queue.push_back(k);
        }
      }
    }
    std::vector<int> s, ns;
    for (std::size_t i = 0; i < left_.size(); ++i) {
      if (left_in[i]) s.push_back(left_[i]);
    }
    for (std::size_t j = 0; j < right_.size(); ++j) {
      if (right_in[j]) ns.push_back(right_[j]);
    }
    return HallViolation(std::move(s), std::move(ns));
  }

  Matching result() const {
    Matching m;
    for (std::size_t i = 0; i < left_.size(); ++i) {
      int j = match_left_[i];
      m.pairs.emplace_back(left_[i], right_[static_cast<std::size_t>(j)]);
      m.edges.emplace_back(left_[i], right_[static_cast<std::size_t>(j)]);
    }
    return m;
  }

 private:
  bool augment(int i) {
    for (int j : adj_[static_cast<std::size_t>(i)]) {
      if (seen_[static_cast<std::size_t>(j)]) continue;
      seen_[static_cast<std::size_t>(j)] = 1;
      int k = match_right_[static_cast<std::size_t>(j)];
      if (k < 0 || augment(k)) {
        match_left_[static_cast<std::size_t>(i)] = j;
        match_right_[static_cast<std::size_t>(j)] = i;
        return true;
      }
    }
    return false;
  }

  std::vector<int> left_, right_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_left_, match_right_;
  std::vector<char> seen_;
};

}  // namespace

Matching perfect_matching(const Graph& g, std::span<const int> left, std::span<const int> right) {
  return perfect_matching(g, left, right, PairCost{});
}

Matching perfect_matching(const Graph& g, std::span<const int> left, std::span<const int> right,
                          const PairCost& cost) {
  if (left.size() != right.size()) {
    throw PreconditionError("perfect_matching: sides have sizes " + std::to_string(left.size()) +
                            " and " + std::to_string(right.size()));
  }
  Kuhn kuhn(g, left, right, cost ? &cost : nullptr);
  int stuck = kuhn.run();
  if (stuck >= 0) throw kuhn.witness(stuck);
  return kuhn.result();
}

RainbowState rainbow_matching(const Graph& g, const KirkmanColoring& coloring, int v) {
  auto nbrs = g.neighbors(v);
  return rainbow_matching_on(g, coloring, nbrs);
}

RainbowState rainbow_matching_on(const Graph& g, const KirkmanColoring& coloring,
                                 std::span<const int> vertices) {
  const int n = g.vertex_count();
  if (coloring.order() != n) throw PreconditionError("colouring order differs from graph order");
  std::vector<int> verts(vertices.begin(), vertices.end());
  std::sort(verts.begin(), verts.end());

  std::vector<char> in_u(static_cast<std::size_t>(n), 0);
  for (int x : verts) in_u[static_cast<std::size_t>(x)] = 1;
  std::vector<char> color_used(static_cast<std::size_t>(n), 0);
  RainbowState st;
  auto add = [&](int x, int y) {
    st.matching.edges.emplace_back(x, y);
    color_used[static_cast<std::size_t>(coloring.color(x, y))] = 1;
    in_u[static_cast<std::size_t>(x)] = 0;
    in_u[static_cast<std::size_t>(y)] = 0;
  };

  // Phase (1). One lexicographic pass suffices: adding edges only removes
  // options.
  for (std::size_t i = 0; i < verts.size(); ++i) {
    int x = verts[i];
    for (std::size_t j = i + 1; j < verts.size() && in_u[static_cast<std::size_t>(x)]; ++j) {
      int y = verts[j];
      if (!in_u[static_cast<std::size_t>(y)] || !g.has_edge(x, y)) continue;
      if (color_used[static_cast<std::size_t>(coloring.color(x, y))]) continue;
      add(x, y);
    }
  }
  st.greedy_size = static_cast<int>(st.matching.edges.size());

  // Phase (2).
  auto free_color = [&](int a, int b) {
    return g.has_edge(a, b) && !color_used[static_cast<std::size_t>(coloring.color(a, b))];
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t k = 0; k < st.matching.edges.size() && !progress; ++k) {
      const Edge e = st.matching.edges[k];
      for (int flip = 0; flip < 2 && !progress; ++flip) {
        int x = flip ? e.v : e.u;
        int y = flip ? e.u : e.v;
        for (int u : verts) {
          if (!in_u[static_cast<std::size_t>(u)] || !free_color(u, x)) continue;
          int cu = coloring.color(u, x);
          for (int w : verts) {
            if (w == u || !in_u[static_cast<std::size_t>(w)] || !free_color(y, w)) continue;
            if (coloring.color(y, w) == cu) continue;
            color_used[static_cast<std::size_t>(coloring.color(x, y))] = 0;
            st.matching.edges.erase(st.matching.edges.begin() + static_cast<std::ptrdiff_t>(k));
            add(u, x);
            add(y, w);
            ++st.exchanges;
            progress = true;
            break;
          }
          if (progress) break;
        }
      }
    }
  }

  for (const Edge& e : st.matching.edges) st.used_colors.push_back(coloring.color(e.u, e.v));
  for (int x : verts) {
    if (in_u[static_cast<std::size_t>(x)]) st.unmatched.push_back(x);
  }
  return st;
}

bool rainbow_bound_holds(const RainbowState& state, const Graph& h) {
  const int n = h.vertex_count();
  const int eps_n = n - h.min_degree();
  return static_cast<int>(state.unmatched.size()) <= std::max(4, eps_n);
}

RemainderResult eliminate_remainder(const Graph& g, const VertexPartition& partition,
                                    const RemainderOptions& options) {
  const int total = g.vertex_count();
  RemainderResult out;
  out.before = metrics(g, PartiteView::whole_graph(g));
  if (options.enforce_density_bound && partition.remainder_size() > 0) {
    // eps_G <= 1/6 - 70/|V|
    Rational limit = Rational(1, 6) - Rational(70, total);
    if (out.before.epsilon > limit) {
      throw PreconditionError("remainder elimination needs eps_G <= 1/6 - 70/|V| = " + to_string(limit) +
                              ", got " + to_string(out.before.epsilon));
    }
  }
  if (!is_tridivisible(g)) throw PreconditionError("remainder elimination needs a tridivisible graph");

  Graph work = g;
  // Orientation surplus deg+ - deg- of each core vertex in the piece an edge
  // belongs to: T between groups, T_i between blocks of one group.
  std::vector<int> surplus_t(static_cast<std::size_t>(total), 0), surplus_i(static_cast<std::size_t>(total), 0);
  auto piece = [&](int a, int b) -> std::pair<std::vector<int>*, int> {
    // Returns the surplus table and +1 when a -> b is the positive direction.
    const int ga = partition.group_of(a), gb = partition.group_of(b);
    if (ga != gb) return {&surplus_t, gb == (ga + 1) % 3 ? 1 : -1};
    const int ba = partition.block_of(a), bb = partition.block_of(b);
    if (ba != bb) return {&surplus_i, bb == (ba + 1) % 3 ? 1 : -1};
    return {nullptr, 0};
  };
  if (options.orientation_aware) {
    for (const Edge& e : work.edges()) {
      if (partition.in_remainder(e.u) || partition.in_remainder(e.v)) continue;
      auto [table, dir] = piece(e.u, e.v);
      if (!table) continue;
      (*table)[static_cast<std::size_t>(e.u)] += dir;
      (*table)[static_cast<std::size_t>(e.v)] -= dir;
    }
  }
  const PairCost cost = [&](int a, int b) {
    if (partition.in_remainder(a) || partition.in_remainder(b)) return 0;
    auto [table, dir] = piece(a, b);
    if (!table) return 8;  // inside a block: spoils an otherwise exact STS template
    const int x = dir > 0 ? a : b, y = dir > 0 ? b : a;
    const int sx = (*table)[static_cast<std::size_t>(x)], sy = (*table)[static_cast<std::size_t>(y)];
    // T_i is nine times smaller than T, so the same damage weighs more there.
    const int small = table == &surplus_i ? 3 : 0;
    return 2 + small + std::abs(sx - 1) - std::abs(sx) + std::abs(sy + 1) - std::abs(sy);
  };
  for (int v : partition.remainder()) {
    std::vector<int> nbrs = work.neighbors(v);
    const std::size_t half = nbrs.size() / 2;
    std::vector<int> n1, n2, rest;
    // Remainder neighbours go to the first half so each is paired with a core
    // vertex: their edges have to disappear anyway, core-core edges do not.
    for (int u : nbrs) {
      if (partition.in_remainder(u) && n1.size() < half) {
        n1.push_back(u);
      } else {
        rest.push_back(u);
      }
    }
    std::stable_sort(rest.begin(), rest.end(),
                     [&](int a, int b) { return work.degree(a) > work.degree(b); });
    bool to_second = true;
    for (int u : rest) {
      bool second = (to_second && n2.size() < half) || n1.size() >= half;
      (second ? n2 : n1).push_back(u);
      to_second = !to_second;
    }
    Matching m;
    try {
      m = options.orientation_aware ? perfect_matching(work, n1, n2, cost) : perfect_matching(work, n1, n2);
    } catch (const HallViolation& hv) {
      throw ContractViolation("remainder vertex " + std::to_string(v) + ": " + hv.what());
    }
    for (auto [a, b] : m.pairs) {
      if (options.orientation_aware && !partition.in_remainder(a) && !partition.in_remainder(b)) {
        auto [table, dir] = piece(a, b);
        if (table) {
          (*table)[static_cast<std::size_t>(a)] -= dir;
          (*table)[static_cast<std::size_t>(b)] += dir;
        }
      }
      Triangle t(v, a, b);
      work.remove_triangle(t);
      out.triangles.push_back(t);
    }
    if (work.degree(v) != 0) throw ContractViolation("remainder vertex left with edges");
  }
  out.after = metrics(work, partition.core_view());
  out.graph = std::move(work);
  return out;
}

}  // namespace tridecomp
