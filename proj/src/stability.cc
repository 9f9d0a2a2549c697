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

#include "stablecluster/stability.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "stablecluster/errors.h"
#include "stablecluster/random.h"

namespace stablecluster {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> ClusterSizes(std::span<const std::size_t> labels) {
  std::vector<std::size_t> sizes;
  for (std::size_t l : labels) {
    if (l >= sizes.size()) sizes.resize(l + 1, 0);
    ++sizes[l];
  }
  return sizes;
}

void CheckClustering(const Instance& instance, const Clustering& clustering) {
  if (clustering.labels.size() != instance.size()) {
    throw PreconditionError("clustering does not match the instance size");
  }
  if (clustering.centers.size() != clustering.k) {
    throw PreconditionError("clustering has " +
                            std::to_string(clustering.centers.size()) +
                            " centers for k = " + std::to_string(clustering.k));
  }
  for (std::size_t l : clustering.labels) {
    if (l >= clustering.k) throw PreconditionError("label out of range");
  }
}

std::vector<std::size_t> SolveLabels(const Instance& instance,
                                     const Objective& objective, std::size_t k,
                                     const ProbeOptions& options) {
  if (options.resolver == Resolver::kSolve) {
    return Solve(instance, objective, k).labels;
  }
  return OptimalClusteringBruteForce(instance, objective, k, options.budget)
      .clustering.labels;
}

}  // namespace

double DistanceToCenter(const Instance& instance, std::size_t p,
                        const Center& center) {
  if (const auto* index = std::get_if<std::size_t>(&center)) {
    return instance.metric_distance(p, *index);
  }
  const auto& coords = std::get<Coordinates>(center);
  if (!instance.has_points() || coords.size() != instance.dimension()) {
    throw PreconditionError("coordinate center needs matching point data");
  }
  const auto& point = instance.points()[p];
  double sum = 0.0;
  for (std::size_t t = 0; t < coords.size(); ++t) {
    const double diff = point[t] - coords[t];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double ProximityFactor(const Instance& instance, const Clustering& clustering) {
  CheckClustering(instance, clustering);
  if (clustering.k < 2) {
    throw PreconditionError("center proximity needs at least two centers");
  }
  double factor = kInf;
  std::vector<double> to_center(clustering.k);
  for (std::size_t p = 0; p < instance.size(); ++p) {
    for (std::size_t c = 0; c < clustering.k; ++c) {
      to_center[c] = DistanceToCenter(instance, p, clustering.centers[c]);
    }
    const std::size_t home_id = clustering.labels[p];
    const double home = to_center[home_id];
    for (std::size_t c = 0; c < clustering.k; ++c) {
      if (c == home_id) continue;
      double ratio;
      if (home == 0.0) {
        ratio = to_center[c] == 0.0 ? 1.0 : kInf;
      } else {
        ratio = to_center[c] / home;
      }
      factor = std::min(factor, ratio);
    }
  }
  return factor;
}

SeparationResult CheckCorollarySeparation(const Instance& instance,
                                          const Clustering& clustering,
                                          double alpha) {
  CheckClustering(instance, clustering);
  if (!(alpha >= 1.0)) throw PreconditionError("alpha must be at least 1");
  const std::size_t n = instance.size();
  std::vector<double> home(n);
  for (std::size_t p = 0; p < n; ++p) {
    home[p] = DistanceToCenter(instance, p,
                               clustering.centers[clustering.labels[p]]);
  }

  SeparationResult result;
  result.margin = kInf;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (clustering.labels[p] == clustering.labels[q]) continue;
      const double d = instance.metric_distance(p, q);
      if (!(d > (alpha - 1.0) * home[p])) result.holds = false;
      const double ratio = home[p] == 0.0 ? kInf : d / home[p];
      if (!result.worst_pair || ratio < result.margin) {
        result.margin = ratio;
        result.worst_pair = {p, q};
      }
    }
  }
  return result;
}

MinStabilityResult CheckMinStabilityExact(const Instance& instance,
                                          std::span<const std::size_t> labels,
                                          std::uint64_t budget) {
  const std::size_t n = instance.size();
  if (labels.size() != n) {
    throw PreconditionError("labels do not match the instance size");
  }
  const std::vector<std::size_t> sizes = ClusterSizes(labels);

  std::uint64_t total = 0;
  for (std::size_t s : sizes) {
    if (s >= 63) {
      throw BudgetExceededError("cluster of size " + std::to_string(s) +
                                " is too large for exact subset enumeration");
    }
    if (s >= 2) total += (std::uint64_t{1} << s) - 2;
  }
  if (total > budget) {
    throw BudgetExceededError(
        std::to_string(total) + " subsets exceed the exact-check budget of " +
        std::to_string(budget) + "; use the tree-based checker");
  }

  MinStabilityResult result;
  if (sizes.size() < 2) return result;
  for (std::size_t cluster = 0; cluster < sizes.size(); ++cluster) {
    const std::size_t m = sizes[cluster];
    if (m < 2) continue;
    std::vector<std::size_t> members;
    for (std::size_t p = 0; p < n; ++p) {
      if (labels[p] == cluster) members.push_back(p);
    }

    // For member a: other members by increasing distance (local indices),
    // and the nearest point outside the cluster.
    std::vector<std::vector<std::size_t>> by_distance(m);
    std::vector<double> outer(m, kInf);
    std::vector<std::size_t> outer_point(m, n);
    for (std::size_t a = 0; a < m; ++a) {
      auto& order = by_distance[a];
      for (std::size_t b = 0; b < m; ++b) {
        if (b != a) order.push_back(b);
      }
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t x, std::size_t y) {
                         return instance.distance(members[a], members[x]) <
                                instance.distance(members[a], members[y]);
                       });
      for (std::size_t q = 0; q < n; ++q) {
        if (labels[q] == cluster) continue;
        const double d = instance.distance(members[a], q);
        if (d < outer[a]) {
          outer[a] = d;
          outer_point[a] = q;
        }
      }
    }

    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    for (std::uint64_t step = 1; step <= full; ++step) {
      const std::uint64_t subset = step ^ (step >> 1);
      if (subset == full) continue;
      ++result.subsets_evaluated;

      double outside = kInf;
      std::size_t arg_outside = 0;
      for (std::size_t a = 0; a < m; ++a) {
        if ((subset >> a & 1) && outer[a] < outside) {
          outside = outer[a];
          arg_outside = a;
        }
      }
      double inside = kInf;
      for (std::size_t a = 0; a < m && !(inside < outside); ++a) {
        if (!(subset >> a & 1)) continue;
        for (std::size_t b : by_distance[a]) {
          if (subset >> b & 1) continue;
          inside = std::min(inside, instance.distance(members[a], members[b]));
          break;
        }
      }
      if (inside == outside) result.has_ties = true;
      if (inside > outside && result.stable) {
        result.stable = false;
        MinStabilityWitness w;
        w.cluster = cluster;
        for (std::size_t a = 0; a < m; ++a) {
          if (subset >> a & 1) w.subset.push_back(members[a]);
        }
        w.inside_point = members[arg_outside];
        w.outside_point = outer_point[arg_outside];
        w.other_cluster = labels[w.outside_point];
        w.inner_dmin = inside;
        w.outer_dmin = outside;
        result.witness = std::move(w);
        return result;
      }
    }
  }
  return result;
}

bool CheckMinStabilityViaTree(const Dendrogram& tree,
                              std::span<const std::size_t> labels) {
  const std::size_t n = tree.num_points();
  if (labels.size() != n) {
    throw PreconditionError("labels do not match the dendrogram size");
  }
  constexpr std::size_t kMixed = static_cast<std::size_t>(-1);
  const std::vector<std::size_t> sizes = ClusterSizes(labels);
  std::vector<bool> found(sizes.size(), false);
  std::vector<std::size_t> pure(tree.num_nodes(), kMixed);
  for (std::size_t v = 0; v < tree.num_nodes(); ++v) {
    const auto& node = tree.node(v);
    if (node.is_leaf()) {
      pure[v] = labels[v];
    } else if (pure[node.left] == pure[node.right]) {
      pure[v] = pure[node.left];
    }
    if (pure[v] != kMixed && node.count == sizes[pure[v]]) found[pure[v]] = true;
  }
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] > 0 && !found[c]) return false;
  }
  return true;
}

bool CheckMinStabilityViaTree(const Instance& instance,
                              std::span<const std::size_t> labels) {
  return CheckMinStabilityViaTree(SingleLinkageTree(instance), labels);
}

std::uint64_t ProbeTrialSeed(std::uint64_t seed, std::size_t trial) {
  return DeriveSeed(seed, trial);
}

ProbeReport ResilienceProbe(const Instance& instance,
                            const Objective& objective, std::size_t k,
                            const ProbeOptions& options) {
  if (instance.center_policy() != CenterPolicy::kDataPoints) {
    throw PreconditionError(
        "resilience probe needs data-point centers; perturbed distances "
        "carry no coordinates");
  }
  if (!(options.alpha >= 1.0)) {
    throw PreconditionError("alpha must be at least 1");
  }
  if (options.resolver == Resolver::kOracle &&
      instance.size() > options.max_oracle_points) {
    throw BudgetExceededError(
        "instance has " + std::to_string(instance.size()) +
        " points; the oracle re-solver is limited to " +
        std::to_string(options.max_oracle_points) +
        " (use the tree solver instead)");
  }

  ProbeReport report;
  report.trials = options.trials;
  report.alpha = options.alpha;
  report.baseline_labels = SolveLabels(instance, objective, k, options);

  std::vector<char> failed(options.trials, 0);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      PerturbationSpec spec;
      spec.alpha = options.alpha;
      spec.mode = PerturbationMode::kRandomUniform;
      spec.seed = ProbeTrialSeed(options.seed, t);
      const Instance perturbed = Perturb(instance, spec);
      failed[t] = SolveLabels(perturbed, objective, k, options) !=
                  report.baseline_labels;
    }
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min(options.threads, options.trials));
  if (workers == 1) {
    run_range(0, options.trials);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (options.trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(options.trials, w * chunk);
      const std::size_t end = std::min(options.trials, begin + chunk);
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t t = 0; t < options.trials; ++t) {
    if (failed[t]) {
      ++report.failures;
      report.failing_seeds.push_back(ProbeTrialSeed(options.seed, t));
    }
  }
  return report;
}

StabilityReport AnalyzeStability(const Instance& instance,
                                 const Clustering& clustering,
                                 const StabilityOptions& options) {
  CheckClustering(instance, clustering);
  StabilityReport report;
  report.proximity_factor =
      clustering.k >= 2 ? ProximityFactor(instance, clustering) : kInf;
  report.min_stability = CheckMinStabilityExact(instance, clustering.labels,
                                                options.exact_budget);
  report.tree_laminar = CheckMinStabilityViaTree(instance, clustering.labels);
  const SeparationResult base =
      CheckCorollarySeparation(instance, clustering, options.alpha.value_or(1.0));
  report.corollary_margin = base.margin;
  if (options.alpha) report.separation = base;
  if (options.probe) {
    ProbeOptions probe = *options.probe;
    probe.alpha = options.alpha.value_or(probe.alpha);
    report.probe =
        ResilienceProbe(instance, clustering.objective, clustering.k, probe);
  }
  return report;
}

}  // namespace stablecluster
