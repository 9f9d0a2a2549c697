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

#ifndef STABLECLUSTER_GENERATORS_H_
#define STABLECLUSTER_GENERATORS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "stablecluster/metric.h"
#include "stablecluster/oracle.h"
#include "stablecluster/pruning.h"

namespace stablecluster {

// --- Tree-pruning failure instance -----------------------------------------
//
// Five points c, p, q, c', p' (indices 0..4). The unique optimal 2-median
// clustering is {c, p, q}, {c', p'} with centers c and c' and cost 4.1, and
// its proximity factor is d(p', c) / d(p', c') = 2.5 / 1.1 (about 2.27).
// Single linkage joins {c, p} and {c', p'} at 1.5 before q arrives at 2,
// so the only 2-pruning is {c, p, c', p'}, {q} with cost 5.
//
// The constants were found by a small search against these properties and
// are pinned by tests.
inline constexpr std::array<std::string_view, 5> kFig2PointNames = {
    "c", "p", "q", "c'", "p'"};

Instance GenerateFig2();

// Labels of the optimal 2-median partition of GenerateFig2().
std::vector<std::size_t> Fig2OptimalLabels();

// --- Halting single linkage at k fails ---------------------------------------
//
// Four components A, B, C, D (in index order). Points inside a component
// are eps apart. Between components:
//   d(A, C) = 20,  d(B, D) = 18,  every other pair = 30.
// Single linkage joins B and D before A and C, so stopping at three
// clusters yields {A}, {C}, {B u D}; the optimum is {A u C}, {B}, {D}.
struct Fig3Params {
  std::size_t size_big = 100;   // |A| = |B| = |D|
  std::size_t size_small = 10;  // |C|
  double eps = 0.01;
};

inline constexpr double kFig3DistAC = 20.0;
inline constexpr double kFig3DistBD = 18.0;
inline constexpr double kFig3DistOther = 30.0;

// Throws PreconditionError unless sizes >= 2, 0 < eps <= 1 and
// size_small * d(A, C) < size_big * d(B, D).
Instance GenerateFig3(const Fig3Params& params);

// Point indices of A, B, C, D.
std::array<std::vector<std::size_t>, 4> Fig3Components(const Fig3Params& params);

// Labels of {A u C}, {B}, {D}.
std::vector<std::size_t> Fig3OptimalLabels(const Fig3Params& params);

// 3-median cost of {A u C}, {B}, {D} as constant + eps_coefficient * eps.
// Every point except the three medoids pays either eps (own component) or
// d(A, C) (the C points), so the constant is |C| * d(A, C) and the eps
// coefficient is 3 * (size_big - 1): 200 + 297 eps at the default sizes.
struct Fig3Cost {
  double constant = 0.0;
  double eps_coefficient = 0.0;
  double Evaluate(double eps) const { return constant + eps_coefficient * eps; }
};
Fig3Cost Fig3AnalyticOptimum(const Fig3Params& params);

// --- Instances with a planted well-separated clustering ----------------------

struct ResilientParams {
  std::size_t n = 9;
  std::size_t k = 3;
  double target_factor = 3.0;
  CenterPolicy policy = CenterPolicy::kDataPoints;
  std::uint64_t seed = 1;
  std::size_t dimension = 2;
  // Center separation is (target_factor + 1) * radius * safety.
  double safety = 1.25;
  std::size_t max_retries = 64;
  std::uint64_t oracle_budget = 200'000;
};

struct ResilientInstance {
  Instance instance;
  // The planted clustering. Data-point policy: centers are the designated
  // group centers (data points; not necessarily medoids) and total_cost is
  // measured against them. Steiner policy: centroids.
  Clustering intended;
  // Seed of the accepted attempt.
  std::uint64_t seed_used = 0;
  // The oracle confirmed the planted partition is optimal (k-median for
  // data centers, k-means for centroids). False when over budget.
  bool oracle_verified = false;
};

// k groups of points in R^dimension, each within radius 1 of its center.
// Accepted only if the planted clustering's proximity factor is at least
// target_factor and, when within the oracle budget, it is optimal.
// Requires k >= 2, n >= 2k and target_factor > 1.
ResilientInstance GenerateResilient(const ResilientParams& params);

// --- Max-k-coverage reduction ------------------------------------------------
//
// Vertices 0..m-1 are the sets, m..m+u-1 the elements. Set-element edges
// have unit length and distances are shortest paths. Vertices in different
// connected components are placed at (largest finite distance) + 2.
Instance GenerateCoverageReduction(
    const std::vector<std::vector<std::size_t>>& sets,
    std::size_t universe_size, std::size_t k);

}  // namespace stablecluster

#endif  // STABLECLUSTER_GENERATORS_H_
