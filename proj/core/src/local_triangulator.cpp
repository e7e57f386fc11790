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

#include "tridecomp/local_triangulator.hpp"

#include <algorithm>

#include "tridecomp/errors.hpp"
#include "tridecomp/matching.hpp"
#include "tridecomp/steiner.hpp"

namespace tridecomp {

namespace {

// R as a live triangle family with an edge -> triangle index.
class TriangleFamily {
 public:
  explicit TriangleFamily(int n)
      : n_(n), owner_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1),
        degree_(static_cast<std::size_t>(n), 0) {}

  void add(const Triangle& t) {
    int id = static_cast<int>(tris_.size());
    tris_.push_back(t);
    alive_.push_back(1);
    for (const Edge& e : t.edges()) at(e) = id;
    for (int v : {t.a, t.b, t.c}) degree_[static_cast<std::size_t>(v)] += 2;
    edges_ += 3;
  }

  void remove(int id) {
    if (!alive_[static_cast<std::size_t>(id)]) return;
    alive_[static_cast<std::size_t>(id)] = 0;
    const Triangle& t = tris_[static_cast<std::size_t>(id)];
    for (const Edge& e : t.edges()) at(e) = -1;
    for (int v : {t.a, t.b, t.c}) degree_[static_cast<std::size_t>(v)] -= 2;
    edges_ -= 3;
  }

  int owner(int u, int v) const { return owner_[index(Edge(u, v))]; }
  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }
  long long edges() const { return edges_; }

  TriangleSet live() const {
    TriangleSet out;
    for (std::size_t i = 0; i < tris_.size(); ++i) {
      if (alive_[i]) out.push_back(tris_[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t index(const Edge& e) const {
    return static_cast<std::size_t>(e.u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(e.v);
  }
  int& at(const Edge& e) { return owner_[index(e)]; }

  int n_;
  std::vector<Triangle> tris_;
  std::vector<char> alive_;
  std::vector<int> owner_;
  std::vector<int> degree_;
  long long edges_ = 0;
};

}  // namespace

int planned_repair_runs(long long missing) {
  if (missing <= 0) return 0;
  long long k = 0;
  while (3 * k * k < missing) ++k;
  return static_cast<int>(k - 1);
}

SurdSum NearTriangulation::epsilon_bound() const {
  SurdSum b(h_metrics.epsilon);
  b.add_sqrt(Rational(4), 3 * h_metrics.xi);
  return b;
}

SurdSum NearTriangulation::leftover_bound() const {
  const Rational n2 = Rational(h_metrics.part_size) * h_metrics.part_size;
  SurdSum b(2 * h_metrics.xi * n2);
  b.add_sqrt(n2, 3 * h_metrics.xi);
  return b;
}

NearTriangulation near_triangulate(const Graph& h) {
  const int n = h.vertex_count();
  SteinerSystem sts = build_sts(n);  // throws on a bad residue
  KirkmanColoring coloring(sts);

  NearTriangulation out;
  out.h_metrics = metrics(h, PartiteView::whole_graph(h));

  TriangleFamily r(n);
  for (const Triangle& t : sts.triples) {
    if (h.has_triangle(t)) {
      r.add(t);
    } else {
      ++out.discarded_triples;
    }
  }

  out.planned_runs = planned_repair_runs(out.h_metrics.missing);
  std::vector<char> repaired(static_cast<std::size_t>(n), 0);
  for (int run = 0; run < out.planned_runs; ++run) {
    int v = -1;
    int best = 0;
    for (int u = 0; u < n; ++u) {
      if (repaired[static_cast<std::size_t>(u)]) continue;
      int gap = h.degree(u) - r.degree(u);
      if (gap > best) {
        best = gap;
        v = u;
      }
    }
    if (v < 0) break;  // every remaining gap is zero
    repaired[static_cast<std::size_t>(v)] = 1;

    RepairRun rec;
    rec.vertex = v;
    rec.gap_before = best;
    std::vector<int> deg_before(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) deg_before[static_cast<std::size_t>(u)] = r.degree(u);
    const long long edges_before = r.edges();

    RainbowState st = rainbow_matching(h, coloring, v);
    for (const Edge& e : st.matching.edges) {
      int id = r.owner(e.u, e.v);
      if (id >= 0) r.remove(id);
    }
    for (int u : h.neighbors(v)) {
      int id = r.owner(v, u);
      if (id >= 0) r.remove(id);
    }
    for (const Edge& e : st.matching.edges) r.add(Triangle(v, e.u, e.v));

    rec.gap_after = h.degree(v) - r.degree(v);
    rec.matched = static_cast<int>(st.matching.size());
    rec.unmatched = static_cast<int>(st.unmatched.size());
    for (int u = 0; u < n; ++u) {
      if (u != v) rec.max_other_drop = std::max(rec.max_other_drop, deg_before[static_cast<std::size_t>(u)] - r.degree(u));
    }
    rec.edge_loss = edges_before - r.edges();
    out.runs.push_back(rec);
  }

  out.triangles = r.live();
  out.leftover = h;
  Graph rg(n);
  for (const Triangle& t : out.triangles) {
    out.leftover.remove_triangle(t);
    rg.add_triangle(t);
  }
  out.r_metrics = metrics(rg, PartiteView::whole_graph(rg));
  return out;
}

}  // namespace tridecomp
