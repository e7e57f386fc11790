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


#include <benchmark/benchmark.h>

#include "tridecomp/io.hpp"
#include "tridecomp/latin.hpp"
#include "tridecomp/local_triangulator.hpp"
#include "tridecomp/pipeline.hpp"
#include "tridecomp/steiner.hpp"
#include "tridecomp/verify.hpp"

namespace tridecomp {
namespace {

void BM_BuildSts(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_sts(n));
  state.counters["triples"] = static_cast<double>(n) * (n - 1) / 6;
}
BENCHMARK(BM_BuildSts)->Arg(63)->Arg(243)->Arg(999);

void BM_NearTriangulate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Graph h = Graph::complete(n);
  // A few holes so the repair runs have work to do.
  for (int i = 0; i + 1 < n; i += 7) h.remove_edge(i, i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(near_triangulate(h));
}
BENCHMARK(BM_NearTriangulate)->Arg(27)->Arg(55)->Arg(99);

void BM_CompletePls(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto fill = static_cast<long long>(0.0004 * n * n);
  const PartialLatinSquare p = random_sparse_pls(n, std::max(1, n / 50), fill, 17);
  for (auto _ : state) benchmark::DoNotOptimize(complete_pls(p));
}
BENCHMARK(BM_CompletePls)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_CheckDecomposition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = Graph::complete(n);
  const SteinerSystem s = build_sts(n);
  for (auto _ : state) benchmark::DoNotOptimize(check_decomposition(g, s.triples));
}
BENCHMARK(BM_CheckDecomposition)->Arg(99)->Arg(243)->Arg(507);

// Full pipeline on generated instances whose order leaves no remainder.
void BM_Decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = generate_instance({n, Rational(1, 50), Rational(1, 2000), 1});
  for (auto _ : state) benchmark::DoNotOptimize(decompose(g, 1));
  state.counters["edges"] = static_cast<double>(g.edge_count());
}
BENCHMARK(BM_Decompose)->Arg(135)->Arg(189)->Arg(243)->Arg(351)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tridecomp

BENCHMARK_MAIN();
