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

#include "stablecluster/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stablecluster/errors.h"

namespace stablecluster {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr double kNearTieRelative = 1e-12;

std::uint64_t SaturatingAdd(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

void CheckK(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) {
    throw PreconditionError("k must lie in [1, n]; got k = " +
                            std::to_string(k) + ", n = " + std::to_string(n));
  }
}

// Best and runner-up costs with the near-tie rule applied at the end.
struct Tracker {
  double best = std::numeric_limits<double>::infinity();
  double runner_up = std::numeric_limits<double>::infinity();

  void Finish(OracleResult& result) const {
    result.runner_up_cost = runner_up;
    result.unique = !(runner_up == best);
    const double scale = std::max(std::abs(best), 1e-300);
    result.near_tie = runner_up - best <= kNearTieRelative * scale;
  }
};

}  // namespace

std::uint64_t StirlingSecond(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  // row[j] = S(i, j) for the current i.
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = std::min(i, k); j >= 1; --j) {
      row[j] = SaturatingAdd(SaturatingMul(j, row[j]), row[j - 1]);
    }
    row[0] = 0;
  }
  return row[k];
}

std::uint64_t Binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // C(n-k+i, i) = C(n-k+i-1, i-1) * (n-k+i) / i, exact at every step.
    result = result * (n - k + i) / i;
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

PartitionIterator::PartitionIterator(std::size_t n, std::size_t k)
    : n_(n), k_(k), labels_(n, 0), prefix_max_(n, 0) {
  CheckK(k, n);
  // Smallest string: zeros, then 1, 2, ..., k-1 in the last k-1 slots.
  for (std::size_t i = n - (k - 1); i < n; ++i) {
    labels_[i] = i - (n - k);
  }
  std::size_t running = 0;
  for (std::size_t i = 0; i < n; ++i) {
    running = std::max(running, labels_[i]);
    prefix_max_[i] = running;
  }
}

bool PartitionIterator::Next() {
  for (std::size_t i = n_; i-- > 1;) {
    const std::size_t cap = std::min(prefix_max_[i - 1] + 1, k_ - 1);
    if (labels_[i] >= cap) continue;
    const std::size_t value = labels_[i] + 1;
    const std::size_t reached = std::max(prefix_max_[i - 1], value);
    const std::size_t missing = k_ - 1 - reached;
    if (n_ - 1 - i < missing) continue;

    labels_[i] = value;
    prefix_max_[i] = reached;
    // Fill the suffix with the smallest completion that still uses all k
    // blocks.
    const std::size_t first_new = n_ - missing;
    for (std::size_t j = i + 1; j < n_; ++j) {
      labels_[j] = j < first_new ? 0 : reached + 1 + (j - first_new);
      prefix_max_[j] = std::max(prefix_max_[j - 1], labels_[j]);
    }
    return true;
  }
  return false;
}

OracleResult OptimalClusteringBruteForce(const Instance& instance,
                                         const Objective& objective,
                                         std::size_t k, std::uint64_t budget) {
  const std::size_t n = instance.size();
  CheckK(k, n);
  const std::uint64_t count = StirlingSecond(n, k);
  if (count > budget) {
    throw BudgetExceededError("S(" + std::to_string(n) + ", " +
                              std::to_string(k) +
                              ") partitions exceed the enumeration budget of " +
                              std::to_string(budget));
  }

  OracleResult result;
  Tracker tracker;
  std::vector<std::size_t> best_labels;
  std::vector<std::vector<std::size_t>> blocks(k);
  std::vector<double> values(k);

  PartitionIterator it(n, k);
  do {
    for (auto& b : blocks) b.clear();
    const auto& labels = it.labels();
    for (std::size_t p = 0; p < n; ++p) blocks[labels[p]].push_back(p);
    for (std::size_t b = 0; b < k; ++b) {
      values[b] = ComputeClusterCost(instance, blocks[b], objective.kind()).value;
    }
    const double cost = Aggregate(values, objective);
    ++result.evaluated;
    if (cost < tracker.best) {
      tracker.runner_up = tracker.best;
      tracker.best = cost;
      best_labels = labels;
    } else if (cost < tracker.runner_up) {
      tracker.runner_up = cost;
    }
  } while (it.Next());

  tracker.Finish(result);
  result.clustering = MakeClustering(instance, best_labels, objective);
  return result;
}

OracleResult OptimalClusteringByCenters(const Instance& instance,
                                        const Objective& objective,
                                        std::size_t k, std::uint64_t budget) {
  const std::size_t n = instance.size();
  CheckK(k, n);
  if (instance.center_policy() != CenterPolicy::kDataPoints) {
    throw PreconditionError("center-set enumeration needs data-point centers");
  }
  const std::uint64_t count = Binomial(n, k);
  if (count > budget) {
    throw BudgetExceededError("C(" + std::to_string(n) + ", " +
                              std::to_string(k) +
                              ") center sets exceed the enumeration budget of " +
                              std::to_string(budget));
  }
  const ObjectiveKind kind = objective.kind();
  if (!objective.uniform_weight()) {
    throw PreconditionError("center-set enumeration needs uniform weights");
  }
  const double weight = *objective.uniform_weight();

  OracleResult result;
  Tracker tracker;
  std::vector<std::size_t> best_labels;
  std::vector<std::size_t> centers(k);
  for (std::size_t i = 0; i < k; ++i) centers[i] = i;
  std::vector<std::size_t> labels(n);

  while (true) {
    double cost = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double v = PointCost(instance, p, centers[c], kind);
        if (v < nearest) {
          nearest = v;
          labels[p] = c;
        }
      }
      cost = kind == ObjectiveKind::kCenter ? std::max(cost, nearest)
                                            : cost + weight * nearest;
    }
    ++result.evaluated;

    const auto canonical = CanonicalLabels(labels);
    if (cost < tracker.best) {
      if (canonical != best_labels) tracker.runner_up = tracker.best;
      tracker.best = cost;
      best_labels = canonical;
    } else if (cost < tracker.runner_up && canonical != best_labels) {
      tracker.runner_up = cost;
    }

    std::size_t i = k;
    while (i-- > 0 && centers[i] == n - k + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++centers[i];
    for (std::size_t j = i + 1; j < k; ++j) centers[j] = centers[j - 1] + 1;
  }

  tracker.Finish(result);
  // Nearest-center assignment can leave a center without points only when
  // off-diagonal distances vanish; MakeClustering rejects that case.
  result.clustering = MakeClustering(instance, best_labels, objective);
  return result;
}

}  // namespace stablecluster
