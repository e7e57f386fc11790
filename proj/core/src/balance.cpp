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

#include "tridecomp/balance.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "tridecomp/errors.hpp"

namespace tridecomp {

namespace {

struct Orientation {
  std::vector<int> part;   // -1 outside the view
  std::vector<int> plus;   // deg+ per vertex
  std::vector<int> minus;  // deg- per vertex
  std::vector<std::vector<std::uint64_t>> masks;

  Orientation(const Graph& g, const PartiteView& view) {
    if (view.mode != PartiteMode::kTripartite) throw PreconditionError("balancing needs a tripartite view");
    view.validate(g.vertex_count());
    part = view.part_index(g.vertex_count());
    for (const auto& p : view.parts) masks.push_back(make_mask(g.vertex_count(), p));
    plus.assign(part.size(), 0);
    minus.assign(part.size(), 0);
    for (std::size_t v = 0; v < part.size(); ++v) {
      if (part[v] < 0) continue;
      plus[v] = g.count_neighbors_in(static_cast<int>(v), masks[static_cast<std::size_t>((part[v] + 1) % 3)]);
      minus[v] = g.count_neighbors_in(static_cast<int>(v), masks[static_cast<std::size_t>((part[v] + 2) % 3)]);
    }
  }

  int of(int v) const { return part[static_cast<std::size_t>(v)]; }
  int gap(int v) const { return plus[static_cast<std::size_t>(v)] - minus[static_cast<std::size_t>(v)]; }

  // Remove the positively oriented edge a -> b (part(b) = part(a) + 1).
  void drop(Graph& g, int a, int b) {
    g.remove_edge(a, b);
    --plus[static_cast<std::size_t>(a)];
    --minus[static_cast<std::size_t>(b)];
  }
};

}  // namespace

bool is_balanced(const Graph& g, const PartiteView& view) {
  Orientation o(g, view);
  for (std::size_t v = 0; v < o.part.size(); ++v) {
    if (o.part[v] >= 0 && o.plus[v] != o.minus[v]) return false;
  }
  return true;
}

BalanceResult balance_tripartite(Graph& g, const PartiteView& view, const BalanceOptions& options) {
  Orientation o(g, view);
  BalanceResult out;
  out.before = metrics(g, view);
  const bool balanced = is_balanced(g, view);
  if (options.enforce_preconditions && !balanced) {
    if (!(out.before.epsilon < Rational(1, 12))) {
      throw PreconditionError("balance: eps_T = " + to_string(out.before.epsilon) + " is not < 1/12");
    }
    if (!(out.before.xi < out.before.epsilon / 6)) {
      throw PreconditionError("balance: xi_T = " + to_string(out.before.xi) + " is not < eps_T/6 = " +
                              to_string(out.before.epsilon / 6));
    }
  }

  std::vector<int> members;
  for (const auto& p : view.parts) members.insert(members.end(), p.begin(), p.end());
  std::sort(members.begin(), members.end());
  std::vector<int> loss(static_cast<std::size_t>(g.vertex_count()), 0);

  auto score = [&](int v) {
    return std::min(o.plus[static_cast<std::size_t>(v)], o.minus[static_cast<std::size_t>(v)]);
  };

  // Depth-first search for a positively oriented x -> y path of the given
  // length; intermediates are tried by decreasing min(deg+, deg-).
  std::vector<int> path;
  auto find_path = [&](int x, int y, int length) -> bool {
    path.assign(1, x);
    std::function<bool(int)> step = [&](int remaining) -> bool {
      int cur = path.back();
      if (remaining == 1) {
        if (g.has_edge(cur, y) && o.of(y) == (o.of(cur) + 1) % 3) {
          path.push_back(y);
          return true;
        }
        return false;
      }
      const int want = (o.of(cur) + 1) % 3;
      std::vector<int> cands;
      for (int w : view.parts[static_cast<std::size_t>(want)]) {
        if (w == y || !g.has_edge(cur, w)) continue;
        if (std::find(path.begin(), path.end(), w) != path.end()) continue;
        if (remaining == 2 && !g.has_edge(w, y)) continue;
        cands.push_back(w);
      }
      std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
        if (score(a) != score(b)) return score(a) > score(b);
        return a < b;
      });
      for (int w : cands) {
        path.push_back(w);
        if (step(remaining - 1)) return true;
        path.pop_back();
      }
      return false;
    };
    return step(length);
  };

  while (true) {
    std::vector<int> surplus, deficit;
    for (int v : members) {
      if (o.gap(v) > 0) surplus.push_back(v);
      if (o.gap(v) < 0) deficit.push_back(v);
    }
    if (surplus.empty()) break;
    std::stable_sort(surplus.begin(), surplus.end(), [&](int a, int b) { return o.gap(a) > o.gap(b); });
    std::stable_sort(deficit.begin(), deficit.end(), [&](int a, int b) { return o.gap(a) < o.gap(b); });

    bool done = false;
    for (int x : surplus) {
      for (int y : deficit) {
        const int diff = ((o.of(y) - o.of(x)) % 3 + 3) % 3;
        std::vector<int> lengths;
        if (diff == 1) lengths = {1, 4};
        if (diff == 2) lengths = {2};
        if (diff == 0) lengths = {3};
        for (int len : lengths) {
          if (len == 1 ? !g.has_edge(x, y) : !find_path(x, y, len)) continue;
          if (len == 1) path = {x, y};
          for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            o.drop(g, path[k], path[k + 1]);
            out.deleted.emplace_back(path[k], path[k + 1]);
            ++loss[static_cast<std::size_t>(path[k])];
            ++loss[static_cast<std::size_t>(path[k + 1])];
          }
          ++out.paths_by_length[static_cast<std::size_t>(len)];
          done = true;
          break;
        }
        if (done) break;
      }
      if (done) break;
    }
    if (!done) throw ContractViolation("balance: no positively oriented path from any surplus vertex");
  }
  out.max_vertex_loss = *std::max_element(loss.begin(), loss.end());
  out.after = metrics(g, view);
  return out;
}

namespace {

// Walk-until-repeat with splice-out. `next(v)` returns an unused out-step from
// v or -1, and removes it.
std::vector<Cycle> splice_walks(int vertex_count, const std::function<int(int)>& next,
                                const std::function<bool(int)>& has_step) {
  std::vector<Cycle> cycles;
  std::vector<int> pos(static_cast<std::size_t>(vertex_count), -1);
  for (int s = 0; s < vertex_count; ++s) {
    while (has_step(s)) {
      std::vector<int> walk{s};
      pos[static_cast<std::size_t>(s)] = 0;
      while (!walk.empty()) {
        int cur = walk.back();
        int u = next(cur);
        if (u < 0) throw ContractViolation("cycle walk stuck at vertex " + std::to_string(cur));
        int at = pos[static_cast<std::size_t>(u)];
        if (at < 0) {
          pos[static_cast<std::size_t>(u)] = static_cast<int>(walk.size());
          walk.push_back(u);
          continue;
        }
        Cycle c(walk.begin() + at, walk.end());
        for (std::size_t k = 1; k < c.size(); ++k) pos[static_cast<std::size_t>(c[k])] = -1;
        walk.resize(static_cast<std::size_t>(at) + 1);
        cycles.push_back(std::move(c));
        if (walk.size() == 1 && !has_step(walk[0])) {
          pos[static_cast<std::size_t>(walk[0])] = -1;
          walk.clear();
        }
      }
    }
  }
  return cycles;
}

}  // namespace

std::vector<Cycle> cycle_decompose(const Graph& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % 2) throw PreconditionError("cycle_decompose: vertex " + std::to_string(v) + " has odd degree");
  }
  Graph work = g;
  auto next = [&](int v) {
    auto nb = work.neighbors(v);
    if (nb.empty()) return -1;
    work.remove_edge(v, nb.front());
    return nb.front();
  };
  auto has_step = [&](int v) { return work.degree(v) > 0; };
  return splice_walks(g.vertex_count(), next, has_step);
}

std::vector<Cycle> oriented_cycle_decompose(const Graph& g, const PartiteView& view) {
  Orientation o(g, view);
  for (std::size_t v = 0; v < o.part.size(); ++v) {
    if (o.part[v] >= 0 && o.plus[v] != o.minus[v]) {
      throw PreconditionError("oriented_cycle_decompose: deg+ != deg- at vertex " + std::to_string(v));
    }
  }
  Graph work = g;
  auto next = [&](int v) {
    if (o.of(v) < 0) return -1;
    const auto& target = view.parts[static_cast<std::size_t>((o.of(v) + 1) % 3)];
    for (int u : target) {
      if (work.has_edge(v, u)) {
        o.drop(work, v, u);
        return u;
      }
    }
    return -1;
  };
  auto has_step = [&](int v) { return o.of(v) >= 0 && o.plus[static_cast<std::size_t>(v)] > 0; };
  return splice_walks(g.vertex_count(), next, has_step);
}

}  // namespace tridecomp
