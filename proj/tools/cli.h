// Copyright 2026 The StableCluster Authors.
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

#ifndef STABLECLUSTER_TOOLS_CLI_H_
#define STABLECLUSTER_TOOLS_CLI_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stablecluster/objectives.h"

namespace stablecluster::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kIoError = 2;
inline constexpr int kPreconditionError = 3;
inline constexpr int kBudgetExceeded = 4;

// Runs one command. `args` excludes the program name. Results go to `out`
// unless --out names a file; diagnostics go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

struct BenchRow {
  std::size_t n = 0;
  std::size_t k = 0;
  double seconds = 0.0;  // best of the repetitions
};

struct BenchResult {
  std::vector<BenchRow> rows;
  // Least-squares slope of log(seconds) against log(n); absent with fewer
  // than two distinct sizes.
  bool has_exponent = false;
  double exponent = 0.0;
};

// Times Solve() on uniform random points in the unit square, one instance
// per (n, k). Matrix construction is excluded from the timing.
BenchResult RunScalingBench(const std::vector<std::size_t>& sizes,
                            const std::vector<std::size_t>& ks,
                            ObjectiveKind kind, std::size_t repetitions,
                            std::uint64_t seed);

double FitLogLogSlope(const std::vector<double>& x,
                      const std::vector<double>& y);

}  // namespace stablecluster::cli

#endif  // STABLECLUSTER_TOOLS_CLI_H_
