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

#ifndef STABLECLUSTER_PRUNING_H_
#define STABLECLUSTER_PRUNING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stablecluster/linkage.h"
#include "stablecluster/metric.h"
#include "stablecluster/objectives.h"

namespace stablecluster {

// A k-partition with its centers and cost.
//
// Labels are canonical: cluster ids are assigned in order of each cluster's
// smallest point index, so two clusterings describe the same partition iff
// their label vectors are equal.
struct Clustering {
  std::vector<std::size_t> labels;
  std::vector<Center> centers;
  double total_cost = 0.0;
  std::size_t k = 0;
  Objective objective{ObjectiveKind::kMedian};

  // Member lists indexed by cluster id, each ascending.
  std::vector<std::vector<std::size_t>> Clusters() const;
};

// Relabels so that cluster ids appear in order of first occurrence.
std::vector<std::size_t> CanonicalLabels(std::span<const std::size_t> labels);

bool SamePartition(std::span<const std::size_t> a,
                   std::span<const std::size_t> b);

// Builds a Clustering from arbitrary labels: ids are canonicalized, each
// cluster gets its optimal center, and the cost is aggregated from scratch.
// Throws if a label in [0, max label] is unused or sizes mismatch.
Clustering MakeClustering(const Instance& instance,
                          std::span<const std::size_t> labels,
                          const Objective& objective);

// Same, from explicit member lists that partition [0, n).
Clustering MakeClusteringFromSets(
    const Instance& instance,
    const std::vector<std::vector<std::size_t>>& clusters,
    const Objective& objective);

// Cost of each tree node's member set taken as one cluster (weights
// applied). For data-point centers this keeps, per live node, the vector of
// costs against all n candidate centers and adds child vectors on merge,
// which is O(n^2) over the whole tree.
std::vector<double> NodeClusterCosts(const Dendrogram& tree,
                                     const Instance& instance,
                                     const Objective& objective);

// Best cost of splitting each node into 1..max_k clusters that are tree
// nodes, with the left-subtree share achieving it.
class PruningTable {
 public:
  static constexpr std::uint32_t kNoSplit = 0;

  PruningTable(const Dendrogram& tree, const Instance& instance,
               const Objective& objective, std::size_t max_k);

  std::size_t max_k() const { return max_k_; }
  // +inf when sub_k exceeds the node's leaf count.
  double cost(std::size_t node, std::size_t sub_k) const {
    return costs_[node * max_k_ + sub_k - 1];
  }
  std::uint32_t left_share(std::size_t node, std::size_t sub_k) const {
    return splits_[node * max_k_ + sub_k - 1];
  }

 private:
  std::size_t max_k_;
  std::vector<double> costs_;
  std::vector<std::uint32_t> splits_;
};

// Cheapest k-pruning of `tree`. Sum objectives combine children with +,
// k-center with max. Requires 1 <= k <= n and uniform weights.
Clustering BestKPruning(const Dendrogram& tree, const Instance& instance,
                        const Objective& objective, std::size_t k);

// Single-linkage tree followed by the best k-pruning.
Clustering Solve(const Instance& instance, const Objective& objective,
                 std::size_t k);

// Partition left after replaying single-linkage merges until k clusters
// remain. Comparison baseline only.
std::vector<std::size_t> NaiveSingleLinkageAtK(const Dendrogram& tree,
                                               std::size_t k);
std::vector<std::size_t> NaiveSingleLinkageAtK(const Instance& instance,
                                               std::size_t k);

}  // namespace stablecluster

#endif  // STABLECLUSTER_PRUNING_H_
