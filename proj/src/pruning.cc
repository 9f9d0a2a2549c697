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

#include "stablecluster/pruning.h"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "stablecluster/errors.h"

namespace stablecluster {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckK(std::size_t k, std::size_t n) {
  if (k < 1) throw PreconditionError("k must be at least 1");
  if (k > n) {
    throw PreconditionError("k = " + std::to_string(k) +
                            " exceeds the number of points " +
                            std::to_string(n));
  }
}

double RequireUniformWeight(const Objective& objective) {
  const auto weight = objective.uniform_weight();
  if (!weight) {
    throw PreconditionError(
        "tree pruning needs uniform cluster weights; cluster identities are "
        "unknown during the dynamic program");
  }
  return *weight;
}

// Adds (or maxes) the per-center cost of leaf p into `acc`.
void AccumulateLeaf(const Instance& instance, std::size_t p,
                    ObjectiveKind kind, std::vector<double>& acc) {
  const std::size_t n = instance.size();
  if (kind == ObjectiveKind::kCenter) {
    for (std::size_t c = 0; c < n; ++c) {
      acc[c] = std::max(acc[c], PointCost(instance, p, c, kind));
    }
  } else {
    for (std::size_t c = 0; c < n; ++c) acc[c] += PointCost(instance, p, c, kind);
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> Clustering::Clusters() const {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t p = 0; p < labels.size(); ++p) out[labels[p]].push_back(p);
  return out;
}

std::vector<std::size_t> CanonicalLabels(std::span<const std::size_t> labels) {
  std::vector<std::size_t> remap;
  std::vector<std::size_t> out(labels.size());
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::size_t next = 0;
  for (std::size_t p = 0; p < labels.size(); ++p) {
    const std::size_t l = labels[p];
    if (l >= remap.size()) remap.resize(l + 1, kUnset);
    if (remap[l] == kUnset) remap[l] = next++;
    out[p] = remap[l];
  }
  return out;
}

bool SamePartition(std::span<const std::size_t> a,
                   std::span<const std::size_t> b) {
  return a.size() == b.size() && CanonicalLabels(a) == CanonicalLabels(b);
}

Clustering MakeClustering(const Instance& instance,
                          std::span<const std::size_t> labels,
                          const Objective& objective) {
  const std::size_t n = instance.size();
  if (labels.size() != n) {
    throw PreconditionError("label count " + std::to_string(labels.size()) +
                            " does not match instance size " +
                            std::to_string(n));
  }
  if (n == 0) throw PreconditionError("empty instance");
  const std::size_t max_label = *std::max_element(labels.begin(), labels.end());
  std::vector<bool> used(max_label + 1, false);
  for (std::size_t l : labels) used[l] = true;
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw PreconditionError("cluster ids must cover [0, k) without gaps");
  }

  Clustering out;
  out.labels = CanonicalLabels(labels);
  out.k = max_label + 1;
  out.objective = objective;
  std::vector<ClusterCost> costs;
  costs.reserve(out.k);
  for (const auto& members : out.Clusters()) {
    costs.push_back(ComputeClusterCost(instance, members, objective.kind()));
  }
  out.total_cost = Aggregate(costs, objective);
  for (auto& c : costs) out.centers.push_back(std::move(c.center));
  return out;
}

Clustering MakeClusteringFromSets(
    const Instance& instance,
    const std::vector<std::vector<std::size_t>>& clusters,
    const Objective& objective) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> labels(instance.size(), kUnset);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].empty()) throw PreconditionError("empty cluster");
    for (std::size_t p : clusters[c]) {
      if (p >= labels.size() || labels[p] != kUnset) {
        throw PreconditionError("clusters do not partition the points");
      }
      labels[p] = c;
    }
  }
  if (std::find(labels.begin(), labels.end(), kUnset) != labels.end()) {
    throw PreconditionError("clusters do not cover every point");
  }
  return MakeClustering(instance, labels, objective);
}

std::vector<double> NodeClusterCosts(const Dendrogram& tree,
                                     const Instance& instance,
                                     const Objective& objective) {
  const std::size_t n = instance.size();
  const std::size_t num_nodes = tree.num_nodes();
  const ObjectiveKind kind = objective.kind();
  const double weight = RequireUniformWeight(objective);
  std::vector<double> out(num_nodes, 0.0);

  if (instance.center_policy() == CenterPolicy::kSteinerCentroid) {
    for (std::size_t v = n; v < num_nodes; ++v) {
      out[v] = weight *
               ComputeClusterCost(instance, tree.Members(v), kind).value;
    }
    return out;
  }

  // Per-center cost vectors of current roots; empty for leaves and retired
  // nodes.
  std::vector<std::vector<double>> live(num_nodes);
  for (std::size_t v = n; v < num_nodes; ++v) {
    const auto& node = tree.node(v);
    std::size_t base = node.left;
    std::size_t other = node.right;
    if (live[base].empty() && !live[other].empty()) std::swap(base, other);

    std::vector<double> acc;
    if (live[base].empty()) {
      acc.assign(n, 0.0);
      AccumulateLeaf(instance, base, kind, acc);
    } else {
      acc = std::move(live[base]);
    }
    if (live[other].empty()) {
      AccumulateLeaf(instance, other, kind, acc);
    } else {
      const auto& rhs = live[other];
      if (kind == ObjectiveKind::kCenter) {
        for (std::size_t c = 0; c < n; ++c) acc[c] = std::max(acc[c], rhs[c]);
      } else {
        for (std::size_t c = 0; c < n; ++c) acc[c] += rhs[c];
      }
      live[other] = {};
    }
    live[base] = {};
    out[v] = weight * *std::min_element(acc.begin(), acc.end());
    live[v] = std::move(acc);
  }
  return out;
}

PruningTable::PruningTable(const Dendrogram& tree, const Instance& instance,
                           const Objective& objective, std::size_t max_k)
    : max_k_(max_k) {
  const std::size_t n = instance.size();
  CheckK(max_k, n);
  if (tree.num_points() != n) {
    throw PreconditionError("dendrogram does not match the instance");
  }
  const std::size_t num_nodes = tree.num_nodes();
  costs_.assign(num_nodes * max_k_, kInf);
  splits_.assign(num_nodes * max_k_, kNoSplit);

  const std::vector<double> single = NodeClusterCosts(tree, instance, objective);
  const bool use_max = objective.aggregation() == Aggregation::kMax;

  for (std::size_t v = 0; v < num_nodes; ++v) {
    const auto& node = tree.node(v);
    costs_[v * max_k_] = single[v];
    if (node.is_leaf()) continue;
    const std::size_t left_count = tree.node(node.left).count;
    const std::size_t right_count = tree.node(node.right).count;
    const std::size_t top = std::min(max_k_, node.count);
    for (std::size_t sub_k = 2; sub_k <= top; ++sub_k) {
      const std::size_t lo = sub_k > right_count ? sub_k - right_count : 1;
      const std::size_t hi = std::min(sub_k - 1, left_count);
      double best = kInf;
      std::uint32_t best_split = kNoSplit;
      for (std::size_t kl = lo; kl <= hi; ++kl) {
        const double a = cost(node.left, kl);
        const double b = cost(node.right, sub_k - kl);
        const double value = use_max ? std::max(a, b) : a + b;
        if (value < best) {
          best = value;
          best_split = static_cast<std::uint32_t>(kl);
        }
      }
      costs_[v * max_k_ + sub_k - 1] = best;
      splits_[v * max_k_ + sub_k - 1] = best_split;
    }
  }
}

Clustering BestKPruning(const Dendrogram& tree, const Instance& instance,
                        const Objective& objective, std::size_t k) {
  CheckK(k, instance.size());
  const PruningTable table(tree, instance, objective, k);

  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::pair<std::size_t, std::size_t>> stack = {{tree.root(), k}};
  while (!stack.empty()) {
    const auto [v, sub_k] = stack.back();
    stack.pop_back();
    if (sub_k == 1) {
      clusters.push_back(tree.Members(v));
      continue;
    }
    const std::size_t kl = table.left_share(v, sub_k);
    stack.emplace_back(tree.node(v).right, sub_k - kl);
    stack.emplace_back(tree.node(v).left, kl);
  }
  return MakeClusteringFromSets(instance, clusters, objective);
}

Clustering Solve(const Instance& instance, const Objective& objective,
                 std::size_t k) {
  CheckK(k, instance.size());
  RequireUniformWeight(objective);
  return BestKPruning(SingleLinkageTree(instance), instance, objective, k);
}

std::vector<std::size_t> NaiveSingleLinkageAtK(const Dendrogram& tree,
                                               std::size_t k) {
  const std::size_t n = tree.num_points();
  CheckK(k, n);
  // Nodes created by the first n - k merges; a point's cluster is its
  // highest ancestor among them. Parents have larger ids than children.
  const std::size_t last = n + (n - k);
  std::vector<std::size_t> top(last);
  for (std::size_t v = last; v-- > 0;) {
    const std::size_t parent = tree.node(v).parent;
    top[v] = parent < last ? top[parent] : v;
  }
  std::vector<std::size_t> labels(top.begin(), top.begin() + n);
  return CanonicalLabels(labels);
}

std::vector<std::size_t> NaiveSingleLinkageAtK(const Instance& instance,
                                               std::size_t k) {
  CheckK(k, instance.size());
  return NaiveSingleLinkageAtK(SingleLinkageTree(instance), k);
}

}  // namespace stablecluster
