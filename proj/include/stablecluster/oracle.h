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

#ifndef STABLECLUSTER_ORACLE_H_
#define STABLECLUSTER_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stablecluster/metric.h"
#include "stablecluster/objectives.h"
#include "stablecluster/pruning.h"

namespace stablecluster {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// Stirling number of the second kind S(n, k), saturating at UINT64_MAX.
std::uint64_t StirlingSecond(std::size_t n, std::size_t k);

// Binomial coefficient C(n, k), saturating at UINT64_MAX.
std::uint64_t Binomial(std::size_t n, std::size_t k);

// Enumerates set partitions of [0, n) into exactly k nonempty blocks as
// restricted-growth strings (a[0] = 0, a[i] <= 1 + max(a[0..i-1])) in
// lexicographic order.
//
//   PartitionIterator it(4, 2);
//   do { Use(it.labels()); } while (it.Next());
class PartitionIterator {
 public:
  // Requires 1 <= k <= n.
  PartitionIterator(std::size_t n, std::size_t k);

  const std::vector<std::size_t>& labels() const { return labels_; }

  // Advances to the next partition; false once all have been visited.
  bool Next();

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<std::size_t> labels_;
  // prefix_max_[i] = max(labels_[0..i]).
  std::vector<std::size_t> prefix_max_;
};

struct OracleResult {
  Clustering clustering;
  // No other partition attains the optimal cost exactly.
  bool unique = true;
  // Some other partition is within 1e-12 relative of the optimum.
  bool near_tie = false;
  std::uint64_t evaluated = 0;
  double runner_up_cost = 0.0;
};

// Exhaustive search over all S(n, k) partitions. The first partition (in
// restricted-growth order) attaining the minimum is kept. Throws
// BudgetExceededError when S(n, k) > budget.
OracleResult OptimalClusteringBruteForce(
    const Instance& instance, const Objective& objective, std::size_t k,
    std::uint64_t budget = kDefaultEnumerationBudget);

// Exhaustive search over all C(n, k) sets of k distinct data-point centers,
// assigning every point to its nearest center (lowest index on ties).
// Data-point policy only. Reaches the same optimal cost as partition
// enumeration for k-median, k-means and k-center on instances without
// zero off-diagonal distances, and scales to n in the tens where S(n, k)
// does not. Uniqueness is judged over center sets.
OracleResult OptimalClusteringByCenters(
    const Instance& instance, const Objective& objective, std::size_t k,
    std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace stablecluster

#endif  // STABLECLUSTER_ORACLE_H_
