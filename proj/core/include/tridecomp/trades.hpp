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

#ifndef TRIDECOMP_TRADES_HPP_
#define TRIDECOMP_TRADES_HPP_

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tridecomp/balance.hpp"
#include "tridecomp/graph.hpp"
#include "tridecomp/metrics.hpp"
#include "tridecomp/partition.hpp"
#include "tridecomp/rational.hpp"
#include "tridecomp/templates.hpp"

namespace tridecomp {

// Cycles handled by the engine are closed trails: consecutive vertices (and
// back() -> front()) are joined by distinct edges, vertices may repeat.
// A merge produces such a trail, so plain cycles are not enough.

struct TradeLedger {
  int shrink_trades = 0;        // template applications, hexagon closures included
  int hexagon_trades = 0;       // shrinks that closed a whole six-trail
  int merge_trades = 0;         // three-triangle gadgets joining two trails
  int splice_merges = 0;        // trails joined at a shared vertex, no triangles used
  int splits = 0;               // trails cut at a repeated vertex
  int direct_triangles = 0;     // three-trails emitted as they are
  int refined_templates = 0;    // shrinks that needed a block-refined search
  int block_rule_relaxed = 0;   // internal vertices placed in a crowded block
  long long consumed_cross = 0;                 // in-triangles with three labels
  std::array<long long, 3> consumed_within{};   // in-triangles inside one label
  int max_cross_per_trade = 0;
  int max_within_per_trade = 0;  // worst single label in a single trade
  std::vector<int> boundary_uses;  // per vertex, appearances on a trade boundary

  long long consumed_total() const {
    return consumed_cross + consumed_within[0] + consumed_within[1] + consumed_within[2];
  }
};

struct TradeOptions {
  enum class Ordering { kMod3, kMod4 };

  TradeTemplate::Family family = TradeTemplate::Family::kAny;
  // Which trails are pre-shrunk last before merging: residue 1 mod 3, or
  // length 1 mod 4 read literally.
  Ordering ordering = Ordering::kMod3;
  // Join trails sharing a vertex directly instead of with a gadget.
  bool allow_splice = true;
  // When false, an internal vertex may land in a block that already holds
  // three configuration vertices (counted in the ledger).
  bool strict_block_rule = false;
  long long instantiate_budget = 20000;  // DFS nodes per template instantiation
};

std::string to_string(TradeOptions::Ordering ordering);

// One shrink, merge or closure. `consumed` came out of the host, `emitted`
// covers the removed trail edges plus the consumed edges.
struct TradeStep {
  std::vector<Cycle> trails;  // what is left of the input trail(s)
  TriangleSet consumed;
  TriangleSet emitted;
  int p3_position = -1;       // first vertex of the new P3 in trails[0], or -1
};

// Applies trades against a mutable host graph H. Vertices carry a label
// (the part of the tripartite family, -1 when unusable) and optionally a
// block (0..2 within the label, -1 when unknown). In-triangles with three
// distinct labels come from the cross family, single-label ones from the
// family inside that label; the host must have no edge inside a block.
class TradeEngine {
 public:
  TradeEngine(Graph& host, std::vector<int> labels, std::vector<int> blocks, TradeOptions options = {},
              const TradeCatalog& catalog = TradeCatalog::builtin());
  ~TradeEngine();
  TradeEngine(const TradeEngine&) = delete;
  TradeEngine& operator=(const TradeEngine&) = delete;

  // Trail of length >= 7: one P6 window is replaced by a P3, length drops by
  // three. Length 6 with distinct vertices: a hexagon trade, no trail left.
  // `anchor` is the first vertex of the previous P3 (position in `trail`);
  // the window then contains that P3 without sharing an endpoint with it.
  // Throws CandidateExhausted when no window instantiates.
  TradeStep shrink_cycle(const Cycle& trail, int anchor = -1);

  // Gadget of three cross triangles (or a splice at a shared vertex) that
  // joins the trails into one of length a + b + 9 (a + b for a splice).
  TradeStep merge_cycles(const Cycle& a, const Cycle& b);

  // Runs the whole schedule on edge-disjoint trails of total length
  // divisible by three. Results accumulate in consumed() and emitted().
  void absorb(std::vector<Cycle> trails);

  const TriangleSet& consumed() const { return consumed_; }
  const TriangleSet& emitted() const { return emitted_; }
  const TradeLedger& ledger() const { return ledger_; }

 private:
  TriangleSet consumed_;
  TriangleSet emitted_;
  TradeLedger ledger_;
  struct Impl;
  std::unique_ptr<Impl> impl_;  // last: its constructor touches the ledger
};

// Leftover absorption on the partition: H is the union of T and the T_i
// (all core edges between different blocks), L is disjoint from H.
struct AbsorbResult {
  TriangleSet emitted;   // decomposes L together with `consumed`
  TriangleSet consumed;  // R, removed from the host
  TradeLedger ledger;
  DensityMetrics t_before, t_after;
  std::array<DensityMetrics, 3> ti_before, ti_after;
  int leftover_degree = 0;   // delta(L)
  long long leftover_edges = 0;
  // n - 4 max(eps_Ti, eps_T + delta(L)/(2n)) n - 4 delta(L); the lemma wants >= 3.
  Rational precondition_slack;

  // Exact checks of the four density bounds.
  bool epsilon_t_bound() const;
  bool epsilon_ti_bound(int i) const;
  bool xi_t_bound() const;
  bool xi_ti_bound(int i) const;
  Rational epsilon_t_limit() const;
  Rational epsilon_ti_limit(int i) const;
  Rational xi_t_limit() const;
  Rational xi_ti_limit(int i) const;
};

AbsorbResult absorb_leftovers(const Graph& leftover, Graph& host, const VertexPartition& partition,
                              const TradeOptions& options = {});

// Complement preparation on one tripartite view of the host: the complement
// of the view's edges is split into positively oriented trails and shrunk
// with cross-only hexagon trades.
struct ComplementOptions {
  bool enforce_preconditions = true;  // n - 8 eps n > 3
  TradeOptions trades = {TradeTemplate::Family::kTOnly};
};

struct ComplementResult {
  TriangleSet consumed;  // R, real triangles taken out of the host
  TriangleSet cells;     // decomposition of complement + R
  TradeLedger ledger;
  DensityMetrics before, after;
  long long complement_edges = 0;

  bool epsilon_bound() const { return after.epsilon <= 2 * before.epsilon; }
  bool xi_bound() const { return after.xi <= 8 * before.xi; }
};

ComplementResult prepare_complement(Graph& host, const PartiteView& view, const ComplementOptions& options = {});

}  // namespace tridecomp

#endif  // TRIDECOMP_TRADES_HPP_
