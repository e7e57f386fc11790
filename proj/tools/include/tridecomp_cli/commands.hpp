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


#ifndef TRIDECOMP_CLI_COMMANDS_HPP_
#define TRIDECOMP_CLI_COMMANDS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tridecomp/pipeline.hpp"
#include "tridecomp/rational.hpp"

namespace tridecomp::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitPipelineFailed = 2;
inline constexpr int kExitUsage = 3;

struct BenchOptions {
  std::vector<int> ladder{63, 126, 252, 504};
  // Even orders need xi >= 1/(2V) for the removed perfect matching, hence
  // the looser default.
  Rational epsilon{1, 50};
  Rational xi{1, 250};
  std::uint64_t seed = 1;
  int repeats = 1;
  PipelineOptions pipeline;
};

struct BenchPoint {
  int vertices = 0;
  long long edges = 0;
  double seconds = 0;  // best of the repeats
  bool ok = false;
  std::string error;   // generator or pipeline message when !ok
};

struct BenchReport {
  std::vector<BenchPoint> points;
  bool fitted = false;  // needs two successful points
  double slope = 0;     // least squares of log(seconds) on log(V)
  double intercept = 0;
  int successes() const;
};

// Least-squares slope and intercept of log y against log x. Needs two
// points with distinct x; throws PreconditionError otherwise.
std::pair<double, double> fit_loglog(const std::vector<std::pair<double, double>>& xy);

BenchReport run_bench(const BenchOptions& options);
std::string format_bench(const BenchReport& report);

// The whole command line; returns the process exit code.
int run(int argc, char** argv);

}  // namespace tridecomp::cli

#endif  // TRIDECOMP_CLI_COMMANDS_HPP_
