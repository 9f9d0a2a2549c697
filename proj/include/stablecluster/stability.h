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

#ifndef STABLECLUSTER_STABILITY_H_
#define STABLECLUSTER_STABILITY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "stablecluster/linkage.h"
#include "stablecluster/metric.h"
#include "stablecluster/objectives.h"
#include "stablecluster/oracle.h"
#include "stablecluster/pruning.h"

namespace stablecluster {

// Metric distance from point p to a center (data point or coordinates).
double DistanceToCenter(const Instance& instance, std::size_t p,
                        const Center& center);

// Largest alpha for which the clustering's centers satisfy center
// proximity: min over points p and foreign centers c_j of
// d(p, c_j) / d(p, c_home). A zero home distance contributes +inf, or 1 if
// the foreign distance is zero too. Requires k >= 2.
double ProximityFactor(const Instance& instance, const Clustering& clustering);

struct SeparationResult {
  bool holds = true;
  // Inter-cluster pair (p, q) minimizing d(p, q) / d(p, c_home(p)).
  std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
  // That minimum ratio; +inf when no pair has a positive home distance.
  double margin = 0.0;
};

// Checks d(p, q) > (alpha - 1) * d(p, c_home(p)) for every ordered pair of
// points in different clusters.
SeparationResult CheckCorollarySeparation(const Instance& instance,
                                          const Clustering& clustering,
                                          double alpha);

inline constexpr std::uint64_t kDefaultSubsetBudget = std::uint64_t{1} << 20;

struct MinStabilityWitness {
  std::size_t cluster = 0;
  std::vector<std::size_t> subset;  // A, a proper subset of the cluster
  std::size_t other_cluster = 0;    // C'
  // a in A and b in C' with d(a, b) = d_min(A, C') < d_min(A, C \ A).
  std::size_t inside_point = 0;
  std::size_t outside_point = 0;
  double inner_dmin = 0.0;  // d_min(A, C \ A)
  double outer_dmin = 0.0;  // d_min(A, C')
};

struct MinStabilityResult {
  bool stable = true;
  std::optional<MinStabilityWitness> witness;
  // Some subset met d_min(A, C \ A) == d_min(A, C') exactly.
  bool has_ties = false;
  std::uint64_t subsets_evaluated = 0;
};

// Enumerates every proper nonempty subset A of every cluster C (Gray-code
// order) and checks d_min(A, C \ A) <= d_min(A, C') for all other clusters
// C'. Throws BudgetExceededError when the total number of subsets exceeds
// `budget`.
MinStabilityResult CheckMinStabilityExact(
    const Instance& instance, std::span<const std::size_t> labels,
    std::uint64_t budget = kDefaultSubsetBudget);

// True iff every cluster is the member set of some single-linkage tree node.
bool CheckMinStabilityViaTree(const Dendrogram& tree,
                              std::span<const std::size_t> labels);
bool CheckMinStabilityViaTree(const Instance& instance,
                              std::span<const std::size_t> labels);

enum class Resolver { kOracle, kSolve };

struct ProbeOptions {
  double alpha = 1.0;
  std::size_t trials = 100;
  std::uint64_t seed = 0x5eed;
  // kOracle is exact; kSolve is only exact on min-stable perturbations.
  Resolver resolver = Resolver::kOracle;
  std::size_t max_oracle_points = 12;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::size_t threads = 1;
};

// Necessary-condition sampling of perturbation resilience: a passing probe
// is evidence, never proof.
struct ProbeReport {
  std::size_t trials = 0;
  double alpha = 1.0;
  std::size_t failures = 0;
  // Seeds (for Perturb with kRandomUniform) whose re-solved partition
  // differs from the unperturbed optimum.
  std::vector<std::uint64_t> failing_seeds;
  std::vector<std::size_t> baseline_labels;
};

// Seed used for trial t; independent of execution order.
std::uint64_t ProbeTrialSeed(std::uint64_t seed, std::size_t trial);

// Re-solves `trials` random alpha-perturbations and counts partitions that
// differ from the unperturbed optimum. Data-point instances only.
ProbeReport ResilienceProbe(const Instance& instance,
                            const Objective& objective, std::size_t k,
                            const ProbeOptions& options);

struct StabilityReport {
  double proximity_factor = 0.0;
  MinStabilityResult min_stability;
  bool tree_laminar = false;
  double corollary_margin = 0.0;
  std::optional<SeparationResult> separation;  // when an alpha is given
  std::optional<ProbeReport> probe;
};

struct StabilityOptions {
  std::optional<double> alpha;
  std::uint64_t exact_budget = kDefaultSubsetBudget;
  // Probe runs only when set; uses `alpha` (default 1).
  std::optional<ProbeOptions> probe;
};

StabilityReport AnalyzeStability(const Instance& instance,
                                 const Clustering& clustering,
                                 const StabilityOptions& options);

}  // namespace stablecluster

#endif  // STABLECLUSTER_STABILITY_H_
