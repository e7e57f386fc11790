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


#ifndef TRIDECOMP_PIPELINE_HPP_
#define TRIDECOMP_PIPELINE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tridecomp/errors.hpp"
#include "tridecomp/graph.hpp"
#include "tridecomp/rational.hpp"
#include "tridecomp/trades.hpp"

namespace tridecomp {

// One checked quantity. Kinds:
//   kPrecondition  needed for the next step to be defined; failure aborts
//   kRegion        a hypothesis of the construction that desk-scale inputs
//                  may miss; recorded, aborts only in strict mode
//   kGuarantee     a bound the construction promises; recorded, aborts only in
//                  strict mode
//   kMeasurement   a metric snapshot, no bound attached
struct LedgerEntry {
  enum class Kind { kPrecondition, kRegion, kGuarantee, kMeasurement };

  std::string stage;
  std::string quantity;
  Kind kind = Kind::kMeasurement;
  Rational value;
  std::string relation;  // "<=", "<", ">=", ">" or "=" for measurements
  SurdSum bound;
  bool holds = true;
};

std::string to_string(LedgerEntry::Kind kind);

class DensityLedger {
 public:
  // Value against bound, decided exactly.
  const LedgerEntry& check(std::string stage, std::string quantity, LedgerEntry::Kind kind, Rational value,
                           std::string relation, SurdSum bound);
  void measure(std::string stage, std::string quantity, Rational value);

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  std::vector<const LedgerEntry*> violations(LedgerEntry::Kind kind) const;
  bool all_hold(LedgerEntry::Kind kind) const { return violations(kind).empty(); }

  // One line per entry: stage, quantity, kind, value, relation, bound, ok|VIOLATED.
  // Values are exact "p/q" strings.
  std::string report() const;

 private:
  std::vector<LedgerEntry> entries_;
};

struct PipelineOptions {
  // Thresholds on the input, checked as region entries. The asymptotic bound is
  // eps < 1/432 with an unspecified xi; xi = 1/2000 is an empirical choice.
  Rational max_epsilon = Rational(1, 432) - Rational(1, 100000);
  Rational max_xi = Rational(1, 2000);
  // Abort on violated region or guarantee entries, not just preconditions.
  bool strict = false;
  // Run every stage even on complete graphs (which otherwise go straight to
  // a Steiner triple system).
  bool force_full_pipeline = false;
  // Extra attempts with a derived seed after a stage failure.
  int retry_attempts = 0;
  TradeOptions::Ordering ordering = TradeOptions::Ordering::kMod3;
  int threads = 1;  // near-triangulation of the nine blocks
  // Emit triangles lying wholly inside the leftover graph before absorption.
  bool pack_leftover = true;
  // Steer remainder triangles toward edges that keep T and the T_i balanced.
  bool orientation_aware_remainder = true;
};

struct StageTotals {
  long long remainder_triangles = 0;
  long long near_triangles = 0;
  long long balance_deleted = 0;
  long long packed_triangles = 0;  // found inside L itself
  long long leftover_edges = 0;    // |E(L)| entering absorption
  long long absorb_triangles = 0;  // decomposition of L + R
  long long absorb_consumed = 0;   // |R| taken from T and the T_i
  long long complement_consumed = 0;
  long long latin_triangles = 0;
  TradeLedger absorb_trades;
  std::vector<TradeLedger> complement_trades;
};

struct PipelineResult {
  TriangleSet triangles;  // sorted
  DensityLedger ledger;
  StageTotals totals;
  bool degenerate = false;  // answered by a Steiner triple system
  int attempts = 1;
  std::uint64_t seed_used = 0;
};

// A stage could not run or (in strict mode) a bound failed. When a checked
// bound is the cause, the ledger ends with that entry.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, std::string inequality, DensityLedger ledger);
  const std::string& stage() const { return stage_; }
  const std::string& inequality() const { return inequality_; }
  const DensityLedger& ledger() const { return ledger_; }

 private:
  std::string stage_;
  std::string inequality_;
  DensityLedger ledger_;
};

// Full decomposition: remainder elimination, near-triangulation of the nine
// blocks, balancing of T and the T_i, leftover absorption, complement
// preparation and Latin square completion of each tripartite piece. The
// result is checked edge by edge before it is returned.
PipelineResult decompose(const Graph& g, std::uint64_t seed, const PipelineOptions& options = {});

}  // namespace tridecomp

#endif  // TRIDECOMP_PIPELINE_HPP_
