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


#include "tridecomp/verify.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "tridecomp/errors.hpp"

namespace tridecomp {

std::string DecompositionReport::to_string() const {
  std::ostringstream out;
  out << (ok ? "ok" : "fail") << " edges " << graph_edges << " covered " << covered_edges << " violations "
      << violations.size() << '\n';
  for (const auto& v : violations) out << v << '\n';
  return out.str();
}

namespace {

std::string triple(const char* tag, const Triangle& t) {
  return std::string(tag) + " " + std::to_string(t.a) + " " + std::to_string(t.b) + " " + std::to_string(t.c);
}

// Per-triangle membership check; empty string when the triangle is fine.
std::string screen(const Graph& g, const Triangle& t) {
  const int n = g.vertex_count();
  if (t.a < 0 || t.c >= n || t.a == t.b || t.b == t.c) return triple("bad", t);
  if (!g.has_triangle(t)) return triple("foreign", t);
  return {};
}

}  // namespace

DecompositionReport check_decomposition(const Graph& g, const TriangleSet& triangles, int threads) {
  DecompositionReport report;
  report.graph_edges = g.edge_count();

  std::vector<std::string> screened(triangles.size());
  const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || triangles.size() < 4096) {
    for (std::size_t i = 0; i < triangles.size(); ++i) screened[i] = screen(g, triangles[i]);
  } else {
    // Each worker owns a contiguous slice of `screened`, so the merge below
    // is in input order whatever the scheduling.
    std::vector<std::thread> pool;
    const std::size_t chunk = (triangles.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(triangles.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) screened[i] = screen(g, triangles[i]);
      });
    }
    for (auto& th : pool) th.join();
  }

  Graph used(g.vertex_count());
  std::vector<Edge> reused;
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    if (!screened[i].empty()) {
      report.violations.push_back(std::move(screened[i]));
      continue;
    }
    for (const Edge& e : triangles[i].edges()) {
      if (!used.add_edge(e)) reused.push_back(e);
    }
  }
  std::sort(reused.begin(), reused.end());
  reused.erase(std::unique(reused.begin(), reused.end()), reused.end());
  for (const Edge& e : reused) report.violations.push_back("reused " + std::to_string(e.u) + " " + std::to_string(e.v));
  report.covered_edges = used.edge_count();
  for (const Edge& e : g.edges()) {
    if (!used.has_edge(e)) report.violations.push_back("missing " + std::to_string(e.u) + " " + std::to_string(e.v));
  }
  report.ok = report.violations.empty();
  return report;
}

namespace {

class BruteForce {
 public:
  explicit BruteForce(const Graph& g) : left_(g) {}

  bool run(BruteForceResult& out) {
    ++out.nodes;
    const auto edges = left_.edges();
    if (edges.empty()) return true;
    const Edge e = edges.front();
    bool any = false;
    for (int w = 0; w < left_.vertex_count(); ++w) {
      if (w == e.u || w == e.v || !left_.has_edge(e.u, w) || !left_.has_edge(e.v, w)) continue;
      any = true;
      const Triangle t(e.u, e.v, w);
      left_.remove_triangle(t);
      chosen_.push_back(t);
      if (run(out)) return true;
      chosen_.pop_back();
      left_.add_triangle(t);
    }
    if (!any && out.nodes == 1) {
      root_dead_edge_ = "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " lies in no triangle";
    }
    return false;
  }

  const TriangleSet& chosen() const { return chosen_; }
  const std::string& root_dead_edge() const { return root_dead_edge_; }

 private:
  Graph left_;
  TriangleSet chosen_;
  std::string root_dead_edge_;
};

}  // namespace

BruteForceResult brute_force_decompose(const Graph& g, int edge_cap) {
  if (g.edge_count() > edge_cap) {
    throw PreconditionError("brute_force_decompose: " + std::to_string(g.edge_count()) + " edges exceed the cap of " +
                            std::to_string(edge_cap));
  }
  BruteForceResult out;
  BruteForce search(g);
  out.found = search.run(out);
  if (out.found) {
    out.triangles = search.chosen();
    std::sort(out.triangles.begin(), out.triangles.end());
    return out;
  }
  if (!search.root_dead_edge().empty()) {
    out.certificate = search.root_dead_edge();
  } else {
    out.certificate = "exhausted " + std::to_string(out.nodes) + " search nodes branching on the smallest uncovered edge";
  }
  return out;
}

C4BoxCertificate analyze_c4_box_kn(int n) {
  if (n < 2) throw PreconditionError("analyze_c4_box_kn needs n >= 2");
  C4BoxCertificate cert;
  cert.n = n;
  cert.graph = Graph(4 * n);
  for (int corner = 0; corner < 4; ++corner) {
    const int next = (corner + 1) % 4;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a < b) {
          cert.graph.add_edge(c4_box_vertex(n, corner, a), c4_box_vertex(n, corner, b));
          ++cert.corner_edges;
        }
        cert.graph.add_edge(c4_box_vertex(n, corner, a), c4_box_vertex(n, next, b));
        ++cert.side_edges;
      }
    }
  }
  cert.corner_edges_needed = cert.side_edges / 2;
  cert.tridivisible = is_tridivisible(cert.graph);
  cert.infeasible = cert.corner_edges_needed > cert.corner_edges;

  std::ostringstream text;
  text << "C4 x K" << n << ": " << cert.graph.vertex_count() << " vertices, " << cert.graph.edge_count() << " edges ("
       << (cert.tridivisible ? "tridivisible" : "not tridivisible") << ")\n"
       << "side edges 4n^2 = " << cert.side_edges << ", corner edges 4C(n,2) = 2n^2-2n = " << cert.corner_edges
       << "\n"
       << "a triangle through a side edge uses exactly two side edges and one corner edge\n"
       << "covering the side edges needs " << cert.corner_edges_needed << " corner edges, "
       << (cert.infeasible ? "more than exist: infeasible" : "which exist: the count is inconclusive") << '\n';
  cert.text = text.str();
  return cert;
}

}  // namespace tridecomp
