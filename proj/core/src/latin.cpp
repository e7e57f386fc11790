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


#include "tridecomp/latin.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <sstream>
#include <string>

#include "tridecomp/errors.hpp"
#include "tridecomp/matching.hpp"
#include "tridecomp/rng.hpp"

namespace tridecomp {

PartialLatinSquare::PartialLatinSquare(int order) : n_(order) {
  if (order < 0) throw PreconditionError("latin square order must be non-negative");
  const auto cells = static_cast<std::size_t>(order) * static_cast<std::size_t>(order);
  cells_.assign(cells, -1);
  row_sym_.assign(cells, 0);
  col_sym_.assign(cells, 0);
}

void PartialLatinSquare::set(int row, int col, int symbol) {
  if (row < 0 || row >= n_ || col < 0 || col >= n_ || symbol < 0 || symbol >= n_) {
    throw PreconditionError("cell (" + std::to_string(row) + "," + std::to_string(col) + ")=" +
                            std::to_string(symbol) + " out of range for order " + std::to_string(n_));
  }
  if (filled(row, col)) {
    throw PreconditionError("cell (" + std::to_string(row) + "," + std::to_string(col) + ") already filled");
  }
  if (row_has(row, symbol)) {
    throw PreconditionError("symbol " + std::to_string(symbol) + " repeated in row " + std::to_string(row));
  }
  if (col_has(col, symbol)) {
    throw PreconditionError("symbol " + std::to_string(symbol) + " repeated in column " + std::to_string(col));
  }
  cells_[index(row, col)] = symbol;
  row_sym_[index(row, symbol)] = 1;
  col_sym_[index(col, symbol)] = 1;
  ++filled_;
}

void PartialLatinSquare::clear(int row, int col) {
  const int s = at(row, col);
  if (s < 0) return;
  cells_[index(row, col)] = -1;
  row_sym_[index(row, s)] = 0;
  col_sym_[index(col, s)] = 0;
  --filled_;
}

bool PartialLatinSquare::extends(const PartialLatinSquare& other) const {
  if (other.n_ != n_) return false;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (other.cells_[i] >= 0 && other.cells_[i] != cells_[i]) return false;
  }
  return true;
}

bool is_latin(const PartialLatinSquare& p, bool require_complete) {
  // Recounted from the cells alone, not from the square's own bookkeeping.
  const int n = p.order();
  for (int line = 0; line < n; ++line) {
    std::vector<int> in_row(static_cast<std::size_t>(n), 0);
    std::vector<int> in_col(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) {
      const int a = p.at(line, k);
      const int b = p.at(k, line);
      if (a >= 0 && ++in_row[static_cast<std::size_t>(a)] > 1) return false;
      if (b >= 0 && ++in_col[static_cast<std::size_t>(b)] > 1) return false;
      if (require_complete && (a < 0 || b < 0)) return false;
    }
  }
  return true;
}

PartialLatinSquare cyclic_latin_square(int order) {
  PartialLatinSquare p(order);
  for (int r = 0; r < order; ++r) {
    for (int c = 0; c < order; ++c) p.set(r, c, (r + c) % order);
  }
  return p;
}

SparsityProfile sparsity_profile(const PartialLatinSquare& p) {
  const int n = p.order();
  SparsityProfile prof;
  std::vector<int> rows(static_cast<std::size_t>(n)), cols(static_cast<std::size_t>(n)),
      syms(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int s = p.at(r, c);
      if (s < 0) continue;
      ++rows[static_cast<std::size_t>(r)];
      ++cols[static_cast<std::size_t>(c)];
      ++syms[static_cast<std::size_t>(s)];
      ++prof.total_fill;
    }
  }
  if (n > 0) {
    prof.max_row_fill = *std::max_element(rows.begin(), rows.end());
    prof.max_col_fill = *std::max_element(cols.begin(), cols.end());
    prof.max_symbol_use = *std::max_element(syms.begin(), syms.end());
  }
  return prof;
}

Rational CompletionRegion::eps2_limit(const Rational& eps1) {
  const Rational slack = 1 - 12 * eps1;
  return slack * slack / 10409;
}

bool CompletionRegion::admissible() const {
  return eps1 >= 0 && eps1 < Rational(1, 12) && eps2 >= 0 && eps2 < eps2_limit(eps1);
}

bool CompletionRegion::contains(const SparsityProfile& profile, int order) const {
  const Rational per_line = eps1 * order;
  const Rational total = eps2 * order * order;
  return Rational(profile.max_row_fill) <= per_line && Rational(profile.max_col_fill) <= per_line &&
         Rational(profile.max_symbol_use) <= per_line && Rational(profile.total_fill) <= total;
}

namespace {

void require_square_view(const PartiteView& view) {
  if (view.mode != PartiteMode::kTripartite || view.parts.size() != 3) {
    throw PreconditionError("latin correspondence needs a tripartite view");
  }
  const std::size_t n = view.parts[0].size();
  if (view.parts[1].size() != n || view.parts[2].size() != n) {
    throw PreconditionError("latin correspondence needs three parts of equal size");
  }
}

PartiteView default_view(int n) {
  std::vector<std::vector<int>> parts(3);
  for (int k = 0; k < 3; ++k) {
    parts[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(n));
    std::iota(parts[static_cast<std::size_t>(k)].begin(), parts[static_cast<std::size_t>(k)].end(), k * n);
  }
  return PartiteView::tripartite(std::move(parts[0]), std::move(parts[1]), std::move(parts[2]));
}

}  // namespace

PartialLatinSquare pls_from_tripartite(const PartiteView& view, const TriangleSet& triangles) {
  require_square_view(view);
  const int n = static_cast<int>(view.parts[0].size());
  int top = 0;
  for (const auto& part : view.parts) {
    for (int v : part) top = std::max(top, v + 1);
  }
  for (const Triangle& t : triangles) top = std::max(top, t.c + 1);
  view.validate(top);
  const std::vector<int> part = view.part_index(top);
  std::vector<int> pos(static_cast<std::size_t>(top), -1);
  for (const auto& p : view.parts) {
    for (std::size_t k = 0; k < p.size(); ++k) pos[static_cast<std::size_t>(p[k])] = static_cast<int>(k);
  }

  PartialLatinSquare out(n);
  for (const Triangle& t : triangles) {
    std::array<int, 3> slot{-1, -1, -1};
    for (int v : {t.a, t.b, t.c}) {
      const int k = v >= 0 ? part[static_cast<std::size_t>(v)] : -1;
      if (k < 0 || slot[static_cast<std::size_t>(k)] >= 0) {
        throw PreconditionError("triangle {" + std::to_string(t.a) + "," + std::to_string(t.b) + "," +
                                std::to_string(t.c) + "} is not transversal to the view");
      }
      slot[static_cast<std::size_t>(k)] = pos[static_cast<std::size_t>(v)];
    }
    // Two triangles sharing an edge collide in a cell, a row symbol or a
    // column symbol; set() rejects all three.
    try {
      out.set(slot[0], slot[1], slot[2]);
    } catch (const PreconditionError& e) {
      throw PreconditionError(std::string("triangles are not edge-disjoint: ") + e.what());
    }
  }
  return out;
}

TriangleSet tripartite_from_pls(const PartialLatinSquare& p, const PartiteView& view) {
  require_square_view(view);
  if (static_cast<int>(view.parts[0].size()) != p.order()) {
    throw PreconditionError("view part size differs from the square's order");
  }
  TriangleSet out;
  out.reserve(static_cast<std::size_t>(p.filled_count()));
  for (int r = 0; r < p.order(); ++r) {
    for (int c = 0; c < p.order(); ++c) {
      const int s = p.at(r, c);
      if (s < 0) continue;
      out.emplace_back(view.parts[0][static_cast<std::size_t>(r)], view.parts[1][static_cast<std::size_t>(c)],
                       view.parts[2][static_cast<std::size_t>(s)]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

TriangleSet tripartite_from_pls(const PartialLatinSquare& p) { return tripartite_from_pls(p, default_view(p.order())); }

namespace {

class Completer {
 public:
  Completer(const PartialLatinSquare& given, const CompletionOptions& options, CompletionStats& stats)
      : given_(given), options_(options), stats_(stats), n_(given.order()) {}

  PartialLatinSquare run() {
    std::vector<int> prescribed;
    std::vector<int> fill(static_cast<std::size_t>(n_), 0);
    for (int r = 0; r < n_; ++r) {
      for (int c = 0; c < n_; ++c) fill[static_cast<std::size_t>(r)] += given_.filled(r, c) ? 1 : 0;
      if (fill[static_cast<std::size_t>(r)] > 0) prescribed.push_back(r);
    }
    // Fullest rows first: they have the fewest free choices.
    std::stable_sort(prescribed.begin(), prescribed.end(), [&](int a, int b) {
      return fill[static_cast<std::size_t>(a)] > fill[static_cast<std::size_t>(b)];
    });

    Rng rng(options_.seed);
    PartialLatinSquare work = given_;
    bool done = false;
    int stuck_row = -1;
    for (int attempt = 0; attempt <= options_.reorder_attempts && !done; ++attempt) {
      if (attempt > 0) {
        ++stats_.reorders;
        rng.shuffle(prescribed);
      }
      work = given_;
      done = true;
      for (int r : prescribed) {
        if (!fill_row(work, r, attempt > 0 ? &rng : nullptr)) {
          done = false;
          stuck_row = r;
          break;
        }
      }
    }
    if (!done) {
      work = given_;
      if (!backtrack(work, prescribed)) {
        std::ostringstream msg;
        msg << "latin completion stuck: order " << n_ << ", " << given_.filled_count() << " prescribed cells in "
            << prescribed.size() << " rows, row " << stuck_row << " had no perfect matching after "
            << stats_.reorders << " reorders and " << stats_.backtrack_nodes << " backtracking nodes";
        throw ContractViolation(msg.str());
      }
    }
    // Every prescribed row is now complete, the rest are empty: the columns
    // form a Latin rectangle and each further row exists by Hall's theorem.
    for (int r = 0; r < n_; ++r) {
      if (fill[static_cast<std::size_t>(r)] > 0) continue;
      if (!fill_row(work, r, nullptr)) {
        throw ContractViolation("latin completion: empty row " + std::to_string(r) +
                                " failed to extend a Latin rectangle");
      }
    }
    return work;
  }

 private:
  // Perfect matching between the empty cells of row r and its missing
  // symbols. A symbol may go in column c if column c does not hold it yet,
  // prescribed cells in later rows included.
  bool fill_row(PartialLatinSquare& work, int r, Rng* rng) {
    std::vector<int> cols, syms;
    for (int c = 0; c < n_; ++c) {
      if (!work.filled(r, c)) cols.push_back(c);
    }
    for (int s = 0; s < n_; ++s) {
      if (!work.row_has(r, s)) syms.push_back(s);
    }
    if (rng != nullptr) {
      rng->shuffle(cols);
      rng->shuffle(syms);
    }
    const int k = static_cast<int>(cols.size());
    Graph bip(2 * k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (!work.col_has(cols[static_cast<std::size_t>(i)], syms[static_cast<std::size_t>(j)])) bip.add_edge(i, k + j);
      }
    }
    stats_.operations += static_cast<long long>(k) * k;
    ++stats_.row_matchings;
    std::vector<int> left(static_cast<std::size_t>(k)), right(static_cast<std::size_t>(k));
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), k);
    Matching m;
    try {
      m = perfect_matching(bip, left, right);
    } catch (const HallViolation&) {
      return false;
    }
    for (auto [i, j] : m.pairs) {
      work.set(r, cols[static_cast<std::size_t>(i)], syms[static_cast<std::size_t>(j - k)]);
    }
    return true;
  }

  // Cell-by-cell search over the prescribed rows, most constrained cell
  // first. Symbol sets are kept as bit masks.
  bool backtrack(PartialLatinSquare& work, const std::vector<int>& rows) {
    words_ = (static_cast<std::size_t>(n_) + 63) / 64;
    row_used_.assign(static_cast<std::size_t>(n_) * words_, 0);
    col_used_.assign(static_cast<std::size_t>(n_) * words_, 0);
    for (int r = 0; r < n_; ++r) {
      for (int c = 0; c < n_; ++c) {
        if (work.filled(r, c)) mark(r, c, work.at(r, c), true);
      }
    }
    work_spent_ = 0;
    return search(work, rows);
  }

  void mark(int r, int c, int s, bool on) {
    const std::uint64_t bit = std::uint64_t{1} << (s % 64);
    const std::size_t w = static_cast<std::size_t>(s / 64);
    auto& rw = row_used_[static_cast<std::size_t>(r) * words_ + w];
    auto& cw = col_used_[static_cast<std::size_t>(c) * words_ + w];
    if (on) {
      rw |= bit;
      cw |= bit;
    } else {
      rw &= ~bit;
      cw &= ~bit;
    }
  }

  int options_at(int r, int c) const {
    int count = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t used = row_used_[static_cast<std::size_t>(r) * words_ + w] |
                           col_used_[static_cast<std::size_t>(c) * words_ + w];
      std::uint64_t valid = ~std::uint64_t{0};
      const int tail = n_ - static_cast<int>(w) * 64;
      if (tail < 64) valid = (std::uint64_t{1} << tail) - 1;
      count += std::popcount(~used & valid);
    }
    return count;
  }

  bool search(PartialLatinSquare& work, const std::vector<int>& rows) {
    if (stats_.backtrack_nodes >= options_.backtrack_budget) return false;
    if (work_spent_ >= options_.backtrack_work_budget) return false;
    ++stats_.backtrack_nodes;
    ++stats_.operations;
    int best_r = -1, best_c = -1, best_count = n_ + 1;
    for (int r : rows) {
      for (int c = 0; c < n_ && best_count > 1; ++c) {
        if (work.filled(r, c)) continue;
        const int count = options_at(r, c);
        if (count < best_count) {
          best_count = count;
          best_r = r;
          best_c = c;
        }
      }
      work_spent_ += static_cast<long long>(n_) * static_cast<long long>(words_);
    }
    if (best_r < 0) return true;
    if (best_count == 0) return false;
    for (int s = 0; s < n_; ++s) {
      if (work.row_has(best_r, s) || work.col_has(best_c, s)) continue;
      work.set(best_r, best_c, s);
      mark(best_r, best_c, s, true);
      if (search(work, rows)) return true;
      mark(best_r, best_c, s, false);
      work.clear(best_r, best_c);
    }
    return false;
  }

  std::size_t words_ = 0;
  std::vector<std::uint64_t> row_used_, col_used_;
  long long work_spent_ = 0;
  const PartialLatinSquare& given_;
  const CompletionOptions& options_;
  CompletionStats& stats_;
  int n_;
};

}  // namespace

PartialLatinSquare complete_pls(const PartialLatinSquare& p, const CompletionOptions& options,
                                CompletionStats* stats) {
  if (!is_latin(p, false)) throw PreconditionError("complete_pls: input is not a partial Latin square");
  CompletionStats local;
  CompletionStats& st = stats != nullptr ? *stats : local;
  st = CompletionStats{};
  st.in_region = options.region.contains(sparsity_profile(p), p.order());
  PartialLatinSquare out = Completer(p, options, st).run();
  if (!out.complete() || !out.extends(p) || !is_latin(out, true)) {
    throw ContractViolation("complete_pls produced an invalid square");
  }
  return out;
}

PartialLatinSquare random_sparse_pls(int order, int max_per_line, long long total, std::uint64_t seed) {
  PartialLatinSquare p(order);
  if (total == 0) return p;
  if (order <= 0 || max_per_line <= 0) throw PreconditionError("random_sparse_pls: nothing can be filled");
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(order);
  std::vector<int> rows(n, 0), cols(n, 0), syms(n, 0);
  long long misses = 0;
  while (p.filled_count() < total) {
    const int r = static_cast<int>(rng.below(n));
    const int c = static_cast<int>(rng.below(n));
    const int s = static_cast<int>(rng.below(n));
    const bool ok = !p.filled(r, c) && !p.row_has(r, s) && !p.col_has(c, s) &&
                    rows[static_cast<std::size_t>(r)] < max_per_line && cols[static_cast<std::size_t>(c)] < max_per_line &&
                    syms[static_cast<std::size_t>(s)] < max_per_line;
    if (!ok) {
      if (++misses > 1000 * (total + 1)) throw PreconditionError("random_sparse_pls: request too dense");
      continue;
    }
    p.set(r, c, s);
    ++rows[static_cast<std::size_t>(r)];
    ++cols[static_cast<std::size_t>(c)];
    ++syms[static_cast<std::size_t>(s)];
  }
  return p;
}

std::string format_pls(const PartialLatinSquare& p) {
  std::ostringstream out;
  out << "pls " << p.order() << '\n';
  for (int r = 0; r < p.order(); ++r) {
    for (int c = 0; c < p.order(); ++c) {
      if (p.filled(r, c)) out << "c " << r << ' ' << c << ' ' << p.at(r, c) << '\n';
    }
  }
  return out.str();
}

PartialLatinSquare parse_pls(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  PartialLatinSquare out;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (!have_header) {
      int n = -1;
      if (tag != "pls" || !(fields >> n) || n < 0) throw ParseError(line_no, "expected 'pls <order>'");
      std::string extra;
      if (fields >> extra) throw ParseError(line_no, "trailing text after header");
      out = PartialLatinSquare(n);
      have_header = true;
      continue;
    }
    int r = 0, c = 0, s = 0;
    if (tag != "c" || !(fields >> r >> c >> s)) throw ParseError(line_no, "expected 'c <row> <col> <symbol>'");
    std::string extra;
    if (fields >> extra) throw ParseError(line_no, "trailing text after cell");
    try {
      out.set(r, c, s);
    } catch (const PreconditionError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_header) throw ParseError(line_no + 1, "missing 'pls <order>' header");
  return out;
}

}  // namespace tridecomp
