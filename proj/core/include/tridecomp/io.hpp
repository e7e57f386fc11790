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


#ifndef TRIDECOMP_IO_HPP_
#define TRIDECOMP_IO_HPP_

#include <cstdint>
#include <string>

#include "tridecomp/graph.hpp"
#include "tridecomp/rational.hpp"

namespace tridecomp {

// Graph file: "p tri <V> <E>" then E lines "e <u> <v>", u < v, ascending.
std::string format_graph(const Graph& g);
// Throws ParseError with a line number. Edges must be in canonical order and
// their count must match the header.
Graph parse_graph(const std::string& text);

// Triangle file: one "t <a> <b> <c>" line per triangle, a < b < c, sorted.
std::string format_triangles(const TriangleSet& triangles);
TriangleSet parse_triangles(const std::string& text);

// Whole-file helpers; throw Error when the file cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Generated instance targets. Local: every vertex misses at most
// epsilon * V of its V - 1 possible edges. Global: at most xi * V^2 edges
// missing overall.
struct InstanceSpec {
  int vertex_count = 0;
  Rational target_epsilon{0};
  Rational target_xi{0};
  std::uint64_t seed = 0;
};

// Complete graph minus a seed-deterministic edge set: a perfect matching
// when V is even (odd degrees), random short cycles while the budgets
// allow, and a final cycle that fixes |E| mod 3. Throws PreconditionError
// when the budgets cannot pay for the parity repair.
Graph generate_instance(const InstanceSpec& spec);

}  // namespace tridecomp

#endif  // TRIDECOMP_IO_HPP_
