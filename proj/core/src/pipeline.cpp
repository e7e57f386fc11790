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


#include "tridecomp/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <thread>
#include <utility>

#include "tridecomp/balance.hpp"
#include "tridecomp/latin.hpp"
#include "tridecomp/local_triangulator.hpp"
#include "tridecomp/matching.hpp"
#include "tridecomp/metrics.hpp"
#include "tridecomp/partition.hpp"
#include "tridecomp/steiner.hpp"
#include "tridecomp/verify.hpp"

namespace tridecomp {

std::string to_string(LedgerEntry::Kind kind) {
  switch (kind) {
    case LedgerEntry::Kind::kPrecondition:
      return "precondition";
    case LedgerEntry::Kind::kRegion:
      return "region";
    case LedgerEntry::Kind::kGuarantee:
      return "guarantee";
    case LedgerEntry::Kind::kMeasurement:
      return "measurement";
  }
  return "?";
}

const LedgerEntry& DensityLedger::check(std::string stage, std::string quantity, LedgerEntry::Kind kind,
                                        Rational value, std::string relation, SurdSum bound) {
  LedgerEntry e;
  e.stage = std::move(stage);
  e.quantity = std::move(quantity);
  e.kind = kind;
  e.value = std::move(value);
  e.bound = std::move(bound);
  if (relation == "<=") {
    e.holds = certainly_le(e.value, e.bound);
  } else if (relation == "<") {
    e.holds = certainly_lt(e.value, e.bound);
  } else if (relation == ">=") {
    e.holds = !certainly_lt(e.value, e.bound);
  } else if (relation == ">") {
    e.holds = !certainly_le(e.value, e.bound);
  } else {
    throw PreconditionError("ledger: unknown relation " + relation);
  }
  e.relation = std::move(relation);
  entries_.push_back(std::move(e));
  return entries_.back();
}

void DensityLedger::measure(std::string stage, std::string quantity, Rational value) {
  LedgerEntry e;
  e.stage = std::move(stage);
  e.quantity = std::move(quantity);
  e.kind = LedgerEntry::Kind::kMeasurement;
  e.bound = SurdSum(value);
  e.value = std::move(value);
  e.relation = "=";
  entries_.push_back(std::move(e));
}

std::vector<const LedgerEntry*> DensityLedger::violations(LedgerEntry::Kind kind) const {
  std::vector<const LedgerEntry*> out;
  for (const auto& e : entries_) {
    if (e.kind == kind && !e.holds) out.push_back(&e);
  }
  return out;
}

std::string DensityLedger::report() const {
  std::ostringstream out;
  for (const auto& e : entries_) {
    out << e.stage << ' ' << e.quantity << ' ' << to_string(e.kind) << ' ' << to_string(e.value);
    if (e.kind != LedgerEntry::Kind::kMeasurement) {
      out << ' ' << e.relation << ' ' << e.bound.to_string() << ' ' << (e.holds ? "ok" : "VIOLATED");
    }
    out << '\n';
  }
  return out.str();
}

PipelineError::PipelineError(std::string stage, std::string inequality, DensityLedger ledger)
    : Error("stage " + stage + " failed: " + inequality),
      stage_(std::move(stage)),
      inequality_(std::move(inequality)),
      ledger_(std::move(ledger)) {}

namespace {

using Kind = LedgerEntry::Kind;

SurdSum surd(const Rational& constant) { return SurdSum(constant); }

Rational q(long long num, long long den = 1) { return make_rational(num, den); }

std::string describe(const LedgerEntry& e) {
  return e.quantity + " = " + to_string(e.value) + " " + e.relation + " " + e.bound.to_string() + " does not hold";
}

class Run {
 public:
  Run(const Graph& g, std::uint64_t seed, const PipelineOptions& options)
      : g_(g), seed_(seed), options_(options), work_(g), leftover_(g.vertex_count()) {}

  PipelineResult go() {
    stage_ = "input";
    input_checks();
    const int n = g_.vertex_count();
    const long long complete_edges = static_cast<long long>(n) * (n - 1) / 2;
    if (g_.edge_count() == 0) return finish();
    if (g_.edge_count() == complete_edges && !options_.force_full_pipeline) {
      // Complete and tridivisible: n = 1, 3 (mod 6) and a Steiner triple
      // system is the whole answer.
      stage_ = "sts";
      result_.degenerate = true;
      emit_all(build_sts(n).triples);
      return finish();
    }
    stage_ = "partition";
    if (n < 63) fail("|V| >= 63 for the nine-block partition (|V| = " + std::to_string(n) + ")");
    partition_ = partition_vertices(g_, seed_);
    remainder();
    near_triangulate_blocks();
    balance();
    absorb();
    for (int v = 0; v < 4; ++v) complement_and_complete(v);
    return finish();
  }

 private:
  // --- bookkeeping -------------------------------------------------------

  [[noreturn]] void fail(const std::string& inequality) {
    throw PipelineError(stage_, inequality, result_.ledger);
  }

  void check(const std::string& quantity, Kind kind, const Rational& value, const std::string& relation,
             const SurdSum& bound) {
    const LedgerEntry& e = result_.ledger.check(stage_, quantity, kind, value, relation, bound);
    if (e.holds) return;
    if (kind == Kind::kPrecondition || options_.strict) fail(describe(e));
  }

  void measure(const std::string& name, const DensityMetrics& m) {
    result_.ledger.measure(stage_, "eps(" + name + ")", m.epsilon);
    result_.ledger.measure(stage_, "xi(" + name + ")", m.xi);
  }

  void emit(const Triangle& t) {
    if (!work_.has_triangle(t)) {
      fail("emitted triangle {" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) +
           "} is not in the remaining graph");
    }
    work_.remove_triangle(t);
    result_.triangles.push_back(t);
  }
  void emit_all(const TriangleSet& ts) {
    for (const Triangle& t : ts) emit(t);
  }

  // Greedily emits triangles whose three edges are all leftovers. Removing a
  // triangle keeps L tridivisible and only shrinks what absorption must trade.
  long long pack_leftover() {
    long long packed = 0;
    const int n = leftover_.vertex_count();
    for (int u = 0; u < n; ++u) {
      for (int v : leftover_.neighbors(u)) {
        if (v < u || !leftover_.has_edge(u, v)) continue;
        auto ru = leftover_.row(u);
        auto rv = leftover_.row(v);
        for (std::size_t w = 0; w < ru.size(); ++w) {
          const std::uint64_t common = ru[w] & rv[w];
          if (!common) continue;
          const Triangle t(u, v, static_cast<int>(w * 64) + std::countr_zero(common));
          leftover_.remove_triangle(t);
          emit(t);
          ++packed;
          break;
        }
      }
    }
    return packed;
  }

  // Emitted edges plus edges still to place equal |E(G)|.
  void conservation() {
    const long long placed = 3 * static_cast<long long>(result_.triangles.size());
    check("conservation", Kind::kPrecondition, q(placed + work_.edge_count()), "<=", surd(q(g_.edge_count())));
    check("conservation", Kind::kPrecondition, q(placed + work_.edge_count()), ">=", surd(q(g_.edge_count())));
  }

  PipelineResult finish() {
    stage_ = "verify";
    std::sort(result_.triangles.begin(), result_.triangles.end());
    DecompositionReport rep = check_decomposition(g_, result_.triangles, options_.threads);
    check("uncovered or reused edges", Kind::kPrecondition, q(static_cast<long long>(rep.violations.size())), "<=",
          surd(q(0)));
    result_.seed_used = seed_;
    return std::move(result_);
  }

  // --- stages --------------------------------------------------------------

  void input_checks() {
    check("tridivisible(G)", Kind::kPrecondition, q(is_tridivisible(g_) ? 1 : 0), ">=", surd(q(1)));
    if (g_.vertex_count() == 0) return;
    const DensityMetrics m = metrics(g_, PartiteView::whole_graph(g_));
    measure("G", m);
    eps_g_ = m.epsilon;
    xi_g_ = m.xi;
    check("eps(G)", Kind::kRegion, m.epsilon, "<", surd(options_.max_epsilon));
    check("xi(G)", Kind::kRegion, m.xi, "<", surd(options_.max_xi));
  }

  void remainder() {
    stage_ = "remainder";
    const int n = g_.vertex_count();
    check("eps(G)", Kind::kRegion, eps_g_, "<=", surd(q(1, 6) - q(70, n)));
    RemainderResult r;
    try {
      r = eliminate_remainder(work_, partition_, {.enforce_density_bound = false, .orientation_aware = options_.orientation_aware_remainder});
    } catch (const Error& e) {
      fail(std::string("remainder elimination: ") + e.what());
    }
    emit_all(r.triangles);
    result_.totals.remainder_triangles = static_cast<long long>(r.triangles.size());
    measure("G'", r.after);
    eps_gp_ = r.after.epsilon;
    xi_gp_ = r.after.xi;
    check("eps(G')", Kind::kGuarantee, eps_gp_, "<=", surd(eps_g_ + q(70, n)));
    check("xi(G')", Kind::kGuarantee, xi_gp_, "<=", surd(xi_g_ + q(105, 2LL * n)));

    const DensityMetrics t = metrics(work_, partition_.big_tripartite());
    measure("T'", t);
    check("eps(T')", Kind::kGuarantee, t.epsilon, "<=", surd(3 * eps_gp_));
    check("xi(T')", Kind::kGuarantee, t.xi, "<=", surd(9 * xi_gp_));
    t_prime_ = t;
    for (int i = 0; i < 3; ++i) {
      const DensityMetrics ti = metrics(work_, partition_.small_tripartite(i));
      const std::string name = "T_" + std::to_string(i + 1) + "'";
      measure(name, ti);
      check("eps(" + name + ")", Kind::kGuarantee, ti.epsilon, "<=", surd(9 * eps_gp_));
      check("xi(" + name + ")", Kind::kGuarantee, ti.xi, "<=", surd(81 * xi_gp_));
      ti_prime_[static_cast<std::size_t>(i)] = ti;
    }
    conservation();
  }

  void near_triangulate_blocks() {
    stage_ = "near_triangulate";
    std::array<NearTriangulation, 9> out;
    std::array<std::string, 9> errors;
    auto job = [&](int b) {
      try {
        out[static_cast<std::size_t>(b)] = near_triangulate(work_.induced(partition_.block(b / 3, b % 3)));
      } catch (const Error& e) {
        errors[static_cast<std::size_t>(b)] = e.what();
      }
    };
    const int workers = std::clamp(options_.threads, 1, 9);
    if (workers == 1) {
      for (int b = 0; b < 9; ++b) job(b);
    } else {
      // Blocks are vertex-disjoint and read the graph only; results are
      // merged in block order below, so the thread count never shows.
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (int b = w; b < 9; b += workers) job(b);
        });
      }
      for (auto& th : pool) th.join();
    }

    const int n = partition_.block_size();
    const long long big_n = 9LL * n;
    for (int b = 0; b < 9; ++b) {
      const auto& nt = out[static_cast<std::size_t>(b)];
      if (!errors[static_cast<std::size_t>(b)].empty()) fail("block " + std::to_string(b) + ": " + errors[static_cast<std::size_t>(b)]);
      const auto& verts = partition_.block(b / 3, b % 3);
      const std::string name = "G_" + std::to_string(b / 3 + 1) + std::to_string(b % 3 + 1);
      measure(name, nt.h_metrics);
      check("eps(R in " + name + ")", Kind::kGuarantee, nt.r_metrics.epsilon, "<=", nt.epsilon_bound());
      check("|E(" + name + " - R)|", Kind::kGuarantee, q(nt.leftover.edge_count()), "<=", nt.leftover_bound());
      for (const Triangle& t : nt.triangles) {
        emit(Triangle(verts[static_cast<std::size_t>(t.a)], verts[static_cast<std::size_t>(t.b)],
                      verts[static_cast<std::size_t>(t.c)]));
      }
      for (const Edge& e : nt.leftover.edges()) {
        leftover_.add_edge(verts[static_cast<std::size_t>(e.u)], verts[static_cast<std::size_t>(e.v)]);
      }
      result_.totals.near_triangles += static_cast<long long>(nt.triangles.size());
    }
    if (options_.pack_leftover) result_.totals.packed_triangles += pack_leftover();
    // delta(L2) < (eps_G' + 4 sqrt(3 xi_G')) N,  |E(L2)| < (2 xi_G' + sqrt(xi_G'/3)) N^2
    SurdSum delta_bound(eps_gp_ * big_n);
    delta_bound.add_sqrt(4 * q(big_n), 3 * xi_gp_);
    check("delta(L2)", Kind::kGuarantee, q(leftover_degree(leftover_)), "<=", delta_bound);
    SurdSum edge_bound(2 * xi_gp_ * big_n * big_n);
    edge_bound.add_sqrt(q(big_n * big_n), xi_gp_ / 3);
    check("|E(L2)|", Kind::kGuarantee, q(leftover_.edge_count()), "<=", edge_bound);
    conservation();
  }

  std::array<PartiteView, 4> views() const {
    return {partition_.big_tripartite(), partition_.small_tripartite(0), partition_.small_tripartite(1),
            partition_.small_tripartite(2)};
  }
  static std::string view_name(int v, const std::string& suffix) {
    return v == 0 ? "T" + suffix : "T_" + std::to_string(v) + suffix;
  }

  // Host H: the remaining edges that are not leftovers.
  Graph host() const {
    Graph h = work_;
    for (const Edge& e : leftover_.edges()) h.remove_edge(e);
    return h;
  }

  void balance() {
    stage_ = "balance";
    const int n = partition_.block_size();
    const long long big_n = 9LL * n;
    auto vs = views();
    for (int v = 0; v < 4; ++v) {
      const std::string name = view_name(v, "2");
      const DensityMetrics before = metrics(work_, vs[static_cast<std::size_t>(v)]);
      const long long k = before.part_size;
      if (!is_balanced(work_, vs[static_cast<std::size_t>(v)])) {
        check("eps(" + name + " before)", Kind::kRegion, before.epsilon, "<", surd(q(1, 12)));
        check("xi(" + name + " before)", Kind::kRegion, before.xi, "<", surd(before.epsilon / 6));
      }
      BalanceResult r;
      try {
        r = balance_tripartite(work_, vs[static_cast<std::size_t>(v)], {.enforce_preconditions = false});
      } catch (const Error& e) {
        fail(std::string("balancing ") + name + ": " + e.what());
      }
      result_.totals.balance_deleted += static_cast<long long>(r.deleted.size());
      check("deleted(" + name + ")", Kind::kGuarantee, q(static_cast<long long>(r.deleted.size())), "<=",
            surd(6 * before.xi * k * k));
      check("max vertex loss(" + name + ")", Kind::kGuarantee, q(r.max_vertex_loss), "<=", surd(3 * before.xi * k));
      check("eps(" + name + ")", Kind::kGuarantee, r.after.epsilon, "<=", surd(before.epsilon));
      const DensityMetrics& prime = v == 0 ? t_prime_ : ti_prime_[static_cast<std::size_t>(v - 1)];
      check("eps(" + name + ") vs prime", Kind::kGuarantee, r.after.epsilon, "<=", surd(prime.epsilon));
      check("xi(" + name + ") vs prime", Kind::kGuarantee, r.after.xi, "<=", surd(7 * prime.xi));
      check("balanced(" + name + ")", Kind::kPrecondition,
            q(is_balanced(work_, vs[static_cast<std::size_t>(v)]) ? 1 : 0), ">=", surd(q(1)));
      measure(name, r.after);
      after2_[static_cast<std::size_t>(v)] = r.after;
      // The deleted edges are still unplaced, now as leftovers.
      for (const Edge& e : r.deleted) {
        leftover_.add_edge(e);
        work_.add_edge(e);
      }
    }
    if (options_.pack_leftover) result_.totals.packed_triangles += pack_leftover();
    // delta(L3) <= (eps_G' + 4 sqrt(3 xi_G') + 27 xi_G') N,  |E(L3)| < (8 xi_G' + sqrt(xi_G'/3)) N^2
    SurdSum delta_bound((eps_gp_ + 27 * xi_gp_) * big_n);
    delta_bound.add_sqrt(4 * q(big_n), 3 * xi_gp_);
    check("delta(L3)", Kind::kGuarantee, q(leftover_degree(leftover_)), "<=", delta_bound);
    SurdSum edge_bound(8 * xi_gp_ * big_n * big_n);
    edge_bound.add_sqrt(q(big_n * big_n), xi_gp_ / 3);
    check("|E(L3)|", Kind::kGuarantee, q(leftover_.edge_count()), "<=", edge_bound);
    check("L3 tridivisible", Kind::kPrecondition, q(is_tridivisible(leftover_) ? 1 : 0), ">=", surd(q(1)));
    conservation();
  }

  void absorb() {
    stage_ = "absorb";
    Graph h = host();
    TradeOptions opts;
    opts.ordering = options_.ordering;
    AbsorbResult r;
    result_.totals.leftover_edges = leftover_.edge_count();
    const long long before_host = h.edge_count();
    try {
      r = absorb_leftovers(leftover_, h, partition_, opts);
    } catch (const Error& e) {
      fail(std::string("leftover absorption: ") + e.what());
    }
    check("n - 4 max(eps_Ti, eps_T + delta(L)/(2n)) n - 4 delta(L)", Kind::kRegion, r.precondition_slack, ">=",
          surd(q(3)));
    check("eps(T3)", Kind::kGuarantee, r.t_after.epsilon, "<=", surd(r.epsilon_t_limit()));
    check("xi(T3)", Kind::kGuarantee, r.t_after.xi, "<=", surd(r.xi_t_limit()));
    for (int i = 0; i < 3; ++i) {
      const std::string name = view_name(i + 1, "3");
      check("eps(" + name + ")", Kind::kGuarantee, r.ti_after[static_cast<std::size_t>(i)].epsilon, "<=",
            surd(r.epsilon_ti_limit(i)));
      check("xi(" + name + ")", Kind::kGuarantee, r.ti_after[static_cast<std::size_t>(i)].xi, "<=",
            surd(r.xi_ti_limit(i)));
    }
    // R left the host copy only; the decomposition of L + R is emitted
    // against the working graph, which still holds both.
    if (h.edge_count() + 3 * static_cast<long long>(r.consumed.size()) != before_host) {
      fail("absorption consumed edges outside its triangles");
    }
    emit_all(r.emitted);
    leftover_ = Graph(g_.vertex_count());
    result_.totals.absorb_triangles = static_cast<long long>(r.emitted.size());
    result_.totals.absorb_consumed = static_cast<long long>(r.consumed.size());
    result_.totals.absorb_trades = r.ledger;
    measure("T3", r.t_after);
    for (int i = 0; i < 3; ++i) measure(view_name(i + 1, "3"), r.ti_after[static_cast<std::size_t>(i)]);
    after3_[0] = r.t_after;
    for (int i = 0; i < 3; ++i) after3_[static_cast<std::size_t>(i + 1)] = r.ti_after[static_cast<std::size_t>(i)];
    chains3();
    if (work_.edge_count() != host().edge_count()) fail("leftovers remain after absorption");
    conservation();
  }

  // Section-level chains after absorption, in terms of G'.
  void chains3() {
    SurdSum et(q(15, 2) * eps_gp_ + q(243, 2) * xi_gp_);
    et.add_sqrt(q(18), 3 * xi_gp_);
    check("eps(T3) chain", Kind::kGuarantee, after3_[0].epsilon, "<=", et);
    SurdSum eti(18 * eps_gp_ + 243 * xi_gp_);
    eti.add_sqrt(q(36), 3 * xi_gp_);
    SurdSum xt(1278 * xi_gp_);
    xt.add_sqrt(q(93), xi_g_);
    check("xi(T3) chain", Kind::kGuarantee, after3_[0].xi, "<=", xt);
    SurdSum xti(2916 * xi_gp_);
    xti.add_sqrt(q(632), xi_g_);
    for (int i = 1; i < 4; ++i) {
      check("eps(" + view_name(i, "3") + ") chain", Kind::kGuarantee, after3_[static_cast<std::size_t>(i)].epsilon,
            "<=", eti);
      check("xi(" + view_name(i, "3") + ") chain", Kind::kGuarantee, after3_[static_cast<std::size_t>(i)].xi, "<=", xti);
    }
  }

  void complement_and_complete(int v) {
    stage_ = "complement";
    const PartiteView view = views()[static_cast<std::size_t>(v)];
    const std::string name3 = view_name(v, "3");
    const std::string name4 = view_name(v, "4");
    const DensityMetrics before = metrics(work_, view);
    const long long k = before.part_size;
    check("n - 8 eps(" + name3 + ") n", Kind::kRegion, Rational(k) - 8 * before.epsilon * k, ">", surd(q(3)));

    ComplementOptions copts;
    copts.enforce_preconditions = false;
    copts.trades.ordering = options_.ordering;
    ComplementResult r;
    try {
      r = prepare_complement(work_, view, copts);
    } catch (const Error& e) {
      fail(std::string("complement preparation of ") + name3 + ": " + e.what());
    }
    // prepare_complement removed R from work_; R itself is output.
    for (const Triangle& t : r.consumed) work_.add_triangle(t);
    emit_all(r.consumed);
    result_.totals.complement_consumed += static_cast<long long>(r.consumed.size());
    result_.totals.complement_trades.push_back(r.ledger);
    check("eps(" + name4 + ")", Kind::kGuarantee, r.after.epsilon, "<=", surd(2 * before.epsilon));
    check("xi(" + name4 + ")", Kind::kGuarantee, r.after.xi, "<=", surd(8 * before.xi));
    measure(name4, r.after);
    if (v == 0) {
      SurdSum e(15 * eps_gp_ + 243 * xi_gp_);
      e.add_sqrt(q(36), 3 * xi_gp_);
      check("eps(T4) chain", Kind::kGuarantee, r.after.epsilon, "<=", e);
      SurdSum x(10224 * xi_gp_);
      x.add_sqrt(q(744), xi_gp_);
      check("xi(T4) chain", Kind::kGuarantee, r.after.xi, "<=", x);
    } else {
      SurdSum e(36 * eps_gp_ + 486 * xi_gp_);
      e.add_sqrt(q(72), 3 * xi_gp_);
      check("eps(" + name4 + ") chain", Kind::kGuarantee, r.after.epsilon, "<=", e);
      SurdSum x(23328 * xi_gp_);
      x.add_sqrt(q(5056), xi_gp_);
      check("xi(" + name4 + ") chain", Kind::kGuarantee, r.after.xi, "<=", x);
    }
    check("eps(" + name4 + ")", Kind::kRegion, r.after.epsilon, "<", surd(q(1, 12)));

    stage_ = "latin";
    PartialLatinSquare p;
    try {
      p = pls_from_tripartite(view, r.cells);
    } catch (const Error& e) {
      fail(std::string("complement cells of ") + name4 + " do not form a partial Latin square: " + e.what());
    }
    const SparsityProfile prof = sparsity_profile(p);
    const int order = p.order();
    const Rational eps1(std::max({prof.max_row_fill, prof.max_col_fill, prof.max_symbol_use}), std::max(order, 1));
    const Rational eps2(prof.total_fill, std::max(1LL, static_cast<long long>(order) * order));
    check("sparsity(" + name4 + ")", Kind::kRegion, eps1, "<", surd(q(1, 12)));
    check("fill(" + name4 + ")", Kind::kRegion, eps2, "<", surd(CompletionRegion::eps2_limit(eps1)));
    PartialLatinSquare full;
    CompletionOptions lopts;
    lopts.seed = seed_ + static_cast<std::uint64_t>(v);
    try {
      full = complete_pls(p, lopts);
    } catch (const Error& e) {
      fail(std::string("Latin completion for ") + name4 + ": " + e.what());
    }
    // The new cells are exactly the triangles of T4.
    PartialLatinSquare fresh(order);
    for (int a = 0; a < order; ++a) {
      for (int b = 0; b < order; ++b) {
        if (!p.filled(a, b)) fresh.set(a, b, full.at(a, b));
      }
    }
    const TriangleSet ts = tripartite_from_pls(fresh, view);
    emit_all(ts);
    result_.totals.latin_triangles += static_cast<long long>(ts.size());
    check("edges left in " + name4, Kind::kPrecondition, q(view_edge_count(work_, view)), "<=", surd(q(0)));
    conservation();
  }

  const Graph& g_;
  std::uint64_t seed_;
  const PipelineOptions& options_;
  Graph work_;      // edges not yet in an emitted triangle
  Graph leftover_;  // L, a subgraph of work_
  VertexPartition partition_;
  PipelineResult result_;
  std::string stage_;
  Rational eps_g_, xi_g_, eps_gp_, xi_gp_;
  DensityMetrics t_prime_;
  std::array<DensityMetrics, 3> ti_prime_;
  std::array<DensityMetrics, 4> after2_, after3_;
};

}  // namespace

PipelineResult decompose(const Graph& g, std::uint64_t seed, const PipelineOptions& options) {
  const int attempts = 1 + std::max(0, options.retry_attempts);
  for (int a = 0;; ++a) {
    // Retries derive their seed from the caller's so reruns stay reproducible.
    const std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(a);
    try {
      PipelineResult r = Run(g, s, options).go();
      r.attempts = a + 1;
      return r;
    } catch (const PipelineError&) {
      if (a + 1 >= attempts) throw;
    }
  }
}

}  // namespace tridecomp
