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


#ifndef TRIDECOMP_LATIN_HPP_
#define TRIDECOMP_LATIN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tridecomp/graph.hpp"
#include "tridecomp/metrics.hpp"
#include "tridecomp/rational.hpp"

namespace tridecomp {

// Order-n array over symbols 0..n-1 with some cells empty (-1). Rows,
// columns and symbols are 0-indexed.
class PartialLatinSquare {
 public:
  PartialLatinSquare() = default;
  explicit PartialLatinSquare(int order);

  int order() const { return n_; }
  int at(int row, int col) const { return cells_[index(row, col)]; }
  bool filled(int row, int col) const { return at(row, col) >= 0; }
  long long filled_count() const { return filled_; }

  // Throws PreconditionError when the cell is taken or the symbol already
  // sits in the row or the column.
  void set(int row, int col, int symbol);
  void clear(int row, int col);

  bool row_has(int row, int symbol) const { return row_sym_[index(row, symbol)] != 0; }
  bool col_has(int col, int symbol) const { return col_sym_[index(col, symbol)] != 0; }

  bool complete() const { return filled_ == static_cast<long long>(n_) * n_; }
  // Every filled cell of `other` holds the same symbol here.
  bool extends(const PartialLatinSquare& other) const;

  bool operator==(const PartialLatinSquare& other) const { return n_ == other.n_ && cells_ == other.cells_; }

 private:
  std::size_t index(int a, int b) const { return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + b; }

  int n_ = 0;
  long long filled_ = 0;
  std::vector<int> cells_;
  std::vector<char> row_sym_;
  std::vector<char> col_sym_;
};

// Independent check of the Latin property: no repeat in any row or column,
// and when `require_complete`, every row and column is a permutation.
bool is_latin(const PartialLatinSquare& p, bool require_complete);

// Cyclic table (r + c) mod n.
PartialLatinSquare cyclic_latin_square(int order);

struct SparsityProfile {
  int max_row_fill = 0;
  int max_col_fill = 0;
  int max_symbol_use = 0;
  long long total_fill = 0;
};

SparsityProfile sparsity_profile(const PartialLatinSquare& p);

// Guaranteed completion region: every row, column and symbol used at most
// eps1 n times, at most eps2 n^2 cells in total, with eps1 < 1/12 and
// eps2 < (1 - 12 eps1)^2 / 10409.
struct CompletionRegion {
  Rational eps1;
  Rational eps2;

  bool admissible() const;  // the two constant constraints
  bool contains(const SparsityProfile& profile, int order) const;
  // Largest admissible eps2 for this eps1, exclusive.
  static Rational eps2_limit(const Rational& eps1);
};

// Triangles of a tripartite view with parts (rows, columns, symbols) of equal
// size n: a triangle (R[r], C[c], S[s]) becomes cell (r, c) = s. Throws
// PreconditionError on triangles that are not transversal or not edge-disjoint.
PartialLatinSquare pls_from_tripartite(const PartiteView& view, const TriangleSet& triangles);

// Inverse map, triangles sorted. Without a view, rows are vertices 0..n-1,
// columns n..2n-1 and symbols 2n..3n-1.
TriangleSet tripartite_from_pls(const PartialLatinSquare& p, const PartiteView& view);
TriangleSet tripartite_from_pls(const PartialLatinSquare& p);

struct CompletionStats {
  long long operations = 0;     // augmenting-path steps plus backtracking nodes
  int row_matchings = 0;
  int reorders = 0;             // restarts with a different row order
  long long backtrack_nodes = 0;
  bool in_region = false;       // profile checked against the default region
};

struct CompletionOptions {
  CompletionRegion region{make_rational(1, 50), make_rational(1, 20000)};
  int reorder_attempts = 8;
  long long backtrack_budget = 2'000'000;
  // Cap on the backtracking work (cells times mask words scanned), so a
  // hopeless dense instance fails in seconds rather than hours.
  long long backtrack_work_budget = 400'000'000;
  std::uint64_t seed = 0;
};

// Total Latin square agreeing with p on its filled cells. Rows are filled by
// perfect matchings between their empty cells and missing symbols, rows with
// prescribed cells first; once only empty rows remain, Hall's theorem makes
// every further row succeed. Failed attempts reorder rows, then a bounded
// backtracking search runs. Throws ContractViolation (with the stuck state in
// the message) when all of that fails.
PartialLatinSquare complete_pls(const PartialLatinSquare& p, const CompletionOptions& options = {},
                                CompletionStats* stats = nullptr);

// Random partial Latin square with `total` filled cells and no row, column
// or symbol used more than `max_per_line` times. Throws PreconditionError if
// sampling stalls (the request is too dense).
PartialLatinSquare random_sparse_pls(int order, int max_per_line, long long total, std::uint64_t seed);

// "pls n" then "c r c s" lines for filled cells, sorted.
std::string format_pls(const PartialLatinSquare& p);
// Throws ParseError with a line number.
PartialLatinSquare parse_pls(const std::string& text);

}  // namespace tridecomp

#endif  // TRIDECOMP_LATIN_HPP_
