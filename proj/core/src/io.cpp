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


#include "tridecomp/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "tridecomp/errors.hpp"
#include "tridecomp/rng.hpp"

namespace tridecomp {

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "p tri " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  return out.str();
}

namespace {

// Splits on single spaces and rejects anything that is not a plain
// non-negative decimal, so "e 1  2" or "e +1 2" fail loudly.
bool read_ints(std::istringstream& in, std::initializer_list<long long*> outs) {
  for (long long* x : outs) {
    std::string tok;
    if (!(in >> tok) || tok.empty() || tok.size() > 18) return false;
    if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) return false;
    *x = std::stoll(tok);
  }
  std::string extra;
  return !(in >> extra);
}

}  // namespace

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  long long vertices = -1, expected = -1;
  Graph g;
  Edge last(-1, -1);
  bool have_last = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') throw ParseError(line_no, "CR line ending");
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) throw ParseError(line_no, "empty line");
    if (vertices < 0) {
      std::string kind;
      if (tag != "p" || !(fields >> kind) || kind != "tri" || !read_ints(fields, {&vertices, &expected}) ||
          vertices > (1 << 20)) {
        throw ParseError(line_no, "expected 'p tri <V> <E>'");
      }
      g = Graph(static_cast<int>(vertices));
      continue;
    }
    long long u = 0, v = 0;
    if (tag != "e" || !read_ints(fields, {&u, &v})) throw ParseError(line_no, "expected 'e <u> <v>'");
    if (u >= v) throw ParseError(line_no, "edge must satisfy u < v");
    if (v >= vertices) throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range");
    Edge e(static_cast<int>(u), static_cast<int>(v));
    if (have_last && !(last < e)) throw ParseError(line_no, "edges out of order or repeated");
    last = e;
    have_last = true;
    g.add_edge(e);
  }
  if (vertices < 0) throw ParseError(line_no + 1, "missing 'p tri' header");
  if (g.edge_count() != expected) {
    throw ParseError(line_no + 1, "header promises " + std::to_string(expected) + " edges, found " +
                                      std::to_string(g.edge_count()));
  }
  return g;
}

std::string format_triangles(const TriangleSet& triangles) {
  TriangleSet sorted = triangles;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  for (const Triangle& t : sorted) out << "t " << t.a << ' ' << t.b << ' ' << t.c << '\n';
  return out.str();
}

TriangleSet parse_triangles(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  TriangleSet out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') throw ParseError(line_no, "CR line ending");
    std::istringstream fields(line);
    std::string tag;
    long long a = 0, b = 0, c = 0;
    if (!(fields >> tag) || tag != "t" || !read_ints(fields, {&a, &b, &c})) {
      throw ParseError(line_no, "expected 't <a> <b> <c>'");
    }
    if (!(a < b && b < c) || c > (1 << 20)) throw ParseError(line_no, "triangle must satisfy a < b < c");
    Triangle t(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c));
    if (!out.empty() && !(out.back() < t)) throw ParseError(line_no, "triangles out of order or repeated");
    out.push_back(t);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write failed for " + path);
}

namespace {

class Remover {
 public:
  // Keeps the removal stream apart from the partition shuffle, which is
  // seeded the same way; equal seeds would otherwise put every matching
  // edge inside one block.
  static constexpr std::uint64_t kSalt = 0x6a09e667f3bcc908ULL;

  Remover(int n, long long per_vertex, long long total, std::uint64_t seed)
      : g_(Graph::complete(n)), missing_(static_cast<std::size_t>(n), 0), per_vertex_(per_vertex), total_(total),
        rng_(seed ^ kSalt) {}

  Graph& graph() { return g_; }
  long long removed() const { return removed_; }

  bool fits(int v, int load) const { return missing_[static_cast<std::size_t>(v)] + load <= per_vertex_; }

  void remove_matching() {
    const int n = g_.vertex_count();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng_.shuffle(order);
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) take(order[i], order[i + 1]);
  }

  // A random cycle of length `len` through vertices with spare budget.
  bool remove_cycle(int len, int tries) {
    if (removed_ + len > total_) return false;
    std::vector<int> pool;
    for (int v = 0; v < g_.vertex_count(); ++v) {
      if (fits(v, 2)) pool.push_back(v);
    }
    if (static_cast<int>(pool.size()) < len) return false;
    for (int t = 0; t < tries; ++t) {
      std::vector<int> cyc;
      for (int k = 0; k < len; ++k) {
        int v = pool[static_cast<std::size_t>(rng_.below(pool.size()))];
        if (std::find(cyc.begin(), cyc.end(), v) != cyc.end()) break;
        if (!cyc.empty() && !g_.has_edge(cyc.back(), v)) break;
        cyc.push_back(v);
      }
      if (static_cast<int>(cyc.size()) != len || !g_.has_edge(cyc.back(), cyc.front())) continue;
      for (int k = 0; k < len; ++k) take(cyc[static_cast<std::size_t>(k)], cyc[static_cast<std::size_t>((k + 1) % len)]);
      return true;
    }
    return false;
  }

 private:
  void take(int u, int v) {
    g_.remove_edge(u, v);
    ++missing_[static_cast<std::size_t>(u)];
    ++missing_[static_cast<std::size_t>(v)];
    ++removed_;
  }

  Graph g_;
  std::vector<long long> missing_;
  long long per_vertex_;
  long long total_;
  long long removed_ = 0;
  Rng rng_;
};

}  // namespace

Graph generate_instance(const InstanceSpec& spec) {
  const int n = spec.vertex_count;
  if (n < 0) throw PreconditionError("generate: negative vertex count");
  if (spec.target_epsilon < 0 || spec.target_xi < 0) throw PreconditionError("generate: negative target");
  const Rational per_vertex_r = spec.target_epsilon * n;
  const BigInt per_vertex_big = numerator(per_vertex_r) / denominator(per_vertex_r);
  const Rational total_r = spec.target_xi * n * n;
  const BigInt total_big = numerator(total_r) / denominator(total_r);
  const long long per_vertex = static_cast<long long>(std::min<BigInt>(per_vertex_big, n));
  const long long total = static_cast<long long>(std::min<BigInt>(total_big, static_cast<long long>(n) * n));

  Remover rm(n, per_vertex, total, spec.seed);
  auto infeasible = [&](const std::string& why) {
    return PreconditionError("generate: infeasible spec for V = " + std::to_string(n) + " (per-vertex budget " +
                             std::to_string(per_vertex) + ", total budget " + std::to_string(total) + "): " + why);
  };

  // Odd degrees: every vertex must lose an odd number of edges.
  if (n % 2 == 0 && n > 0) {
    if (per_vertex < 1 || total < n / 2) throw infeasible("even V needs a removed perfect matching");
    rm.remove_matching();
  }
  // |E| mod 3 by one C4 (drops 4 = 1 mod 3) or one C5 (drops 2 mod 3).
  const long long residue = rm.graph().edge_count() % 3;
  if (residue != 0) {
    const int len = residue == 1 ? 4 : 5;
    if (!rm.remove_cycle(len, 20000)) throw infeasible("no room for the cycle fixing |E| mod 3");
  }
  // Background noise: triangles and hexagons keep both parities.
  int misses = 0;
  Rng shape(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  while (misses < 64) {
    const int len = shape.below(2) == 0 ? 3 : 6;
    if (rm.remove_cycle(len, 200)) {
      misses = 0;
    } else {
      ++misses;
    }
  }

  Graph& g = rm.graph();
  if (!is_tridivisible(g) || g.edge_count() + rm.removed() != static_cast<long long>(n) * (n - 1) / 2) {
    throw ContractViolation("generate: produced a graph that is not tridivisible");
  }
  return g;
}

}  // namespace tridecomp
