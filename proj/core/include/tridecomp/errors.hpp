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

#ifndef TRIDECOMP_ERRORS_HPP_
#define TRIDECOMP_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace tridecomp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-checkable precondition does not hold (bad residue, graph too
// small, density bound violated, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Something the algorithm guarantees under its preconditions did not happen.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Greedy vertex selection inside a trade or path construction ran out of
// admissible candidates.
class CandidateExhausted : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Bipartite graph without a perfect matching. `witness` is a subset S of the
// left side whose neighbourhood is smaller than S.
class HallViolation : public Error {
 public:
  HallViolation(std::vector<int> witness, std::vector<int> neighbourhood)
      : Error("Hall condition fails: |S| = " + std::to_string(witness.size()) +
              ", |N(S)| = " + std::to_string(neighbourhood.size())),
        witness_(std::move(witness)),
        neighbourhood_(std::move(neighbourhood)) {}
  const std::vector<int>& witness() const { return witness_; }
  const std::vector<int>& neighbourhood() const { return neighbourhood_; }

 private:
  std::vector<int> witness_;
  std::vector<int> neighbourhood_;
};

}  // namespace tridecomp

#endif  // TRIDECOMP_ERRORS_HPP_
