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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "tridecomp/errors.hpp"

namespace tridecomp {
namespace {

// Rows, columns and symbols each a permutation, from the raw cells.
bool independent_latin_check(const PartialLatinSquare& p) {
  const int n = p.order();
  for (int i = 0; i < n; ++i) {
    std::set<int> row, col;
    for (int k = 0; k < n; ++k) {
      if (p.at(i, k) < 0 || p.at(k, i) < 0) return false;
      row.insert(p.at(i, k));
      col.insert(p.at(k, i));
    }
    if (static_cast<int>(row.size()) != n || static_cast<int>(col.size()) != n) return false;
  }
  return true;
}

TEST(Latin, EmptyTriangleSetGivesEmptySquare) {
  PartialLatinSquare p = pls_from_tripartite(PartiteView::tripartite({0, 1}, {2, 3}, {4, 5}), {});
  EXPECT_EQ(p.order(), 2);
  EXPECT_EQ(p.filled_count(), 0);
  EXPECT_TRUE(tripartite_from_pls(p).empty());
}

TEST(Latin, OneTriangleOneCell) {
  auto view = PartiteView::tripartite({10, 11, 12}, {0, 1, 2}, {20, 21, 22});
  PartialLatinSquare p = pls_from_tripartite(view, {Triangle(11, 2, 20)});
  EXPECT_EQ(p.filled_count(), 1);
  EXPECT_EQ(p.at(1, 2), 0);
  EXPECT_EQ(tripartite_from_pls(p, view), (TriangleSet{Triangle(2, 11, 20)}));
}

TEST(Latin, CompleteTripartiteTriangulationIsLatin) {
  const int n = 7;
  TriangleSet full;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) full.emplace_back(r, n + c, 2 * n + (3 * r + c) % n);
  }
  std::sort(full.begin(), full.end());
  PartialLatinSquare p = pls_from_tripartite(PartiteView::tripartite({0, 1, 2, 3, 4, 5, 6},
                                                                     {7, 8, 9, 10, 11, 12, 13},
                                                                     {14, 15, 16, 17, 18, 19, 20}),
                                             full);
  EXPECT_TRUE(independent_latin_check(p));
  EXPECT_EQ(tripartite_from_pls(p), full);
}

TEST(Latin, RejectsSharedEdgeAndNonTransversal) {
  auto view = PartiteView::tripartite({0, 1}, {2, 3}, {4, 5});
  // Both contain edge {0,2}.
  EXPECT_THROW(pls_from_tripartite(view, {Triangle(0, 2, 4), Triangle(0, 2, 5)}), PreconditionError);
  // Both contain edge {0,4}: same row, same symbol.
  EXPECT_THROW(pls_from_tripartite(view, {Triangle(0, 2, 4), Triangle(0, 3, 4)}), PreconditionError);
  EXPECT_THROW(pls_from_tripartite(view, {Triangle(0, 1, 4)}), PreconditionError);
  EXPECT_THROW(pls_from_tripartite(PartiteView::tripartite({0, 1}, {2}, {4, 5}), {}), PreconditionError);
}

TEST(Latin, SetGuardsTheLatinProperty) {
  PartialLatinSquare p(3);
  p.set(0, 0, 1);
  EXPECT_THROW(p.set(0, 0, 2), PreconditionError);
  EXPECT_THROW(p.set(0, 2, 1), PreconditionError);
  EXPECT_THROW(p.set(2, 0, 1), PreconditionError);
  EXPECT_THROW(p.set(3, 0, 0), PreconditionError);
  p.clear(0, 0);
  EXPECT_NO_THROW(p.set(0, 2, 1));
}

TEST(LatinCompletion, CompleteSquareIsItsOwnCompletion) {
  PartialLatinSquare p = cyclic_latin_square(9);
  EXPECT_EQ(complete_pls(p), p);
}

TEST(LatinCompletion, EmptySquareCompletes) {
  for (int n : {0, 1, 2, 5, 16}) {
    PartialLatinSquare out = complete_pls(PartialLatinSquare(n));
    EXPECT_TRUE(independent_latin_check(out)) << n;
  }
}

TEST(LatinCompletion, SparseOrder200) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    PartialLatinSquare p = random_sparse_pls(200, 4, 16, seed);
    SparsityProfile prof = sparsity_profile(p);
    EXPECT_EQ(prof.total_fill, 16);
    EXPECT_LE(prof.max_row_fill, 4);
    CompletionStats stats;
    PartialLatinSquare out = complete_pls(p, {}, &stats);
    EXPECT_TRUE(independent_latin_check(out));
    EXPECT_TRUE(out.extends(p));
    EXPECT_EQ(stats.row_matchings, 200);
  }
}

TEST(LatinCompletion, DenserPrescribedRows) {
  // Every row prescribed: the matching phase covers the whole square.
  PartialLatinSquare p(30);
  for (int r = 0; r < 30; ++r) p.set(r, r, (2 * r) % 30);
  PartialLatinSquare out = complete_pls(p);
  EXPECT_TRUE(independent_latin_check(out));
  EXPECT_TRUE(out.extends(p));
}

TEST(LatinCompletion, ImpossibleInputReportsStuckState) {
  PartialLatinSquare p(2);
  p.set(0, 0, 0);
  p.set(1, 1, 1);
  try {
    complete_pls(p);
    FAIL() << "completed an impossible square";
  } catch (const ContractViolation& e) {
    EXPECT_NE(std::string(e.what()).find("stuck"), std::string::npos);
  }
}

TEST(LatinCompletion, RegionArithmetic) {
  EXPECT_EQ(CompletionRegion::eps2_limit(Rational(1, 50)), Rational(361, 625) / 10409);
  EXPECT_TRUE((CompletionRegion{Rational(1, 50), Rational(1, 20000)}.admissible()));
  EXPECT_FALSE((CompletionRegion{Rational(1, 50), Rational(1, 2500)}.admissible()));
  EXPECT_FALSE((CompletionRegion{Rational(1, 12), Rational(0)}.admissible()));

  SparsityProfile prof{4, 4, 4, 16};
  EXPECT_TRUE((CompletionRegion{Rational(1, 50), Rational(1, 2500)}.contains(prof, 200)));
  EXPECT_FALSE((CompletionRegion{Rational(1, 50), Rational(1, 20000)}.contains(prof, 200)));
}

TEST(LatinFormat, RoundTripAndErrors) {
  PartialLatinSquare p = random_sparse_pls(12, 2, 9, 5);
  std::string text = format_pls(p);
  EXPECT_EQ(text.rfind("pls 12\n", 0), 0u);
  EXPECT_EQ(parse_pls(text), p);

  auto line_of = [](const std::string& bad) {
    try {
      parse_pls(bad);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("pls 3\nc 0 0 1\nc 0 1 1\n"), 3);
  EXPECT_EQ(line_of("pls 3\nc 0 0 .\n"), 2);
  EXPECT_EQ(line_of("latin 3\n"), 1);
  EXPECT_EQ(line_of(""), 1);
  EXPECT_EQ(line_of("pls 2\nc 0 0 5\n"), 2);
}

}  // namespace
}  // namespace tridecomp
