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

#include "stablecluster/generators.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stablecluster/errors.h"
#include "stablecluster/random.h"
#include "stablecluster/stability.h"

namespace stablecluster {
namespace {

enum Fig3Component { kA = 0, kB = 1, kC = 2, kD = 3 };

double Fig3Between(int a, int b) {
  if (a > b) std::swap(a, b);
  if (a == kA && b == kC) return kFig3DistAC;
  if (a == kB && b == kD) return kFig3DistBD;
  return kFig3DistOther;
}

void CheckFig3(const Fig3Params& params) {
  if (params.size_big < 2 || params.size_small < 2) {
    throw PreconditionError("fig3 component sizes must be at least 2");
  }
  if (!(params.eps > 0.0) || params.eps > 1.0) {
    throw PreconditionError("fig3 eps must lie in (0, 1]");
  }
  if (!(static_cast<double>(params.size_small) * kFig3DistAC <
        static_cast<double>(params.size_big) * kFig3DistBD)) {
    throw PreconditionError(
        "fig3 needs |C| * d(A, C) < |B| * d(B, D) for {A u C} to be optimal");
  }
}

// Point uniformly distributed in the ball of the given radius.
Coordinates SampleInBall(std::mt19937_64& rng, const Coordinates& center,
                         double radius) {
  const std::size_t dim = center.size();
  std::normal_distribution<double> gauss(0.0, 1.0);
  Coordinates dir(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : dir) {
      x = gauss(rng);
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  const double r =
      radius * std::pow(UniformUnit(rng), 1.0 / static_cast<double>(dim));
  Coordinates out(dim);
  for (std::size_t t = 0; t < dim; ++t) out[t] = center[t] + r * dir[t] / norm;
  return out;
}

double Norm(const Coordinates& a, const Coordinates& b) {
  double sum = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    sum += (a[t] - b[t]) * (a[t] - b[t]);
  }
  return std::sqrt(sum);
}

std::vector<Coordinates> PlaceCenters(std::mt19937_64& rng, std::size_t k,
                                      std::size_t dim, double separation) {
  double side = separation * (std::ceil(std::pow(k, 1.0 / dim)) + 1.0) * 1.5;
  std::vector<Coordinates> centers;
  std::size_t attempts = 0;
  while (centers.size() < k) {
    Coordinates c(dim);
    for (double& x : c) x = UniformIn(rng, 0.0, side);
    bool ok = true;
    for (const auto& other : centers) {
      if (Norm(c, other) < separation) {
        ok = false;
        break;
      }
    }
    if (ok) centers.push_back(std::move(c));
    if (++attempts % 1000 == 0) side *= 1.5;
  }
  return centers;
}

std::optional<ResilientInstance> TryResilient(const ResilientParams& params,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  constexpr double kRadius = 1.0;
  const double separation =
      (params.target_factor + 1.0) * kRadius * params.safety;
  const auto nominal =
      PlaceCenters(rng, params.k, params.dimension, separation);

  std::vector<Coordinates> points;
  std::vector<std::size_t> labels;
  std::vector<std::size_t> designated;
  const bool steiner = params.policy == CenterPolicy::kSteinerCentroid;
  for (std::size_t g = 0; g < params.k; ++g) {
    const std::size_t size =
        params.n / params.k + (g < params.n % params.k ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) {
      if (i == 0 && !steiner) {
        designated.push_back(points.size());
        points.push_back(nominal[g]);
      } else {
        points.push_back(SampleInBall(rng, nominal[g], kRadius));
      }
      labels.push_back(g);
    }
  }

  std::ostringstream name;
  name << "resilient(n=" << params.n << ",k=" << params.k
       << ",target=" << params.target_factor
       << ",centers=" << (steiner ? "steiner" : "data") << ",seed=" << seed
       << ")";
  const SourceMetric metric =
      steiner ? SourceMetric::kSquaredEuclidean : SourceMetric::kEuclidean;
  Instance instance =
      Instance::FromPoints(std::move(points), metric, params.policy, name.str());

  const Objective objective(steiner ? ObjectiveKind::kMeans
                                    : ObjectiveKind::kMedian);
  Clustering intended = MakeClustering(instance, labels, objective);
  if (!steiner) {
    // Groups are emitted in order, so canonical ids equal group ids.
    std::vector<double> values(params.k, 0.0);
    for (std::size_t p = 0; p < instance.size(); ++p) {
      const std::size_t g = intended.labels[p];
      values[g] += PointCost(instance, p, designated[g], objective.kind());
    }
    intended.centers.assign(designated.begin(), designated.end());
    intended.total_cost = Aggregate(values, objective);
  }

  if (ProximityFactor(instance, intended) < params.target_factor) {
    return std::nullopt;
  }
  ResilientInstance out{std::move(instance), std::move(intended), seed, false};
  if (StirlingSecond(params.n, params.k) <= params.oracle_budget) {
    const OracleResult best = OptimalClusteringBruteForce(
        out.instance, objective, params.k, params.oracle_budget);
    if (best.clustering.labels != out.intended.labels) return std::nullopt;
    out.oracle_verified = true;
  }
  return out;
}

}  // namespace

Instance GenerateFig2() {
  // Order: c, p, q, c', p'.
  const std::vector<std::vector<double>> d = {
      {0.0, 1.0, 2.0, 3.5, 2.5},
      {1.0, 0.0, 2.6, 2.5, 1.5},
      {2.0, 2.6, 0.0, 5.0, 4.0},
      {3.5, 2.5, 5.0, 0.0, 1.1},
      {2.5, 1.5, 4.0, 1.1, 0.0},
  };
  return Instance::FromMatrix(d, "fig2");
}

std::vector<std::size_t> Fig2OptimalLabels() { return {0, 0, 0, 1, 1}; }

std::array<std::vector<std::size_t>, 4> Fig3Components(
    const Fig3Params& params) {
  const std::array<std::size_t, 4> sizes = {params.size_big, params.size_big,
                                            params.size_small, params.size_big};
  std::array<std::vector<std::size_t>, 4> out;
  std::size_t next = 0;
  for (int c = 0; c < 4; ++c) {
    for (std::size_t i = 0; i < sizes[c]; ++i) out[c].push_back(next++);
  }
  return out;
}

Instance GenerateFig3(const Fig3Params& params) {
  CheckFig3(params);
  const auto components = Fig3Components(params);
  std::vector<int> component_of;
  for (int c = 0; c < 4; ++c) {
    component_of.insert(component_of.end(), components[c].size(), c);
  }
  const std::size_t n = component_of.size();
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d.Set(i, j,
            component_of[i] == component_of[j]
                ? params.eps
                : Fig3Between(component_of[i], component_of[j]));
    }
  }
  std::ostringstream name;
  name << "fig3(big=" << params.size_big << ",small=" << params.size_small
       << ",eps=" << params.eps << ")";
  return Instance::FromMatrix(std::move(d), name.str());
}

std::vector<std::size_t> Fig3OptimalLabels(const Fig3Params& params) {
  const auto components = Fig3Components(params);
  // Canonical order by smallest index: {A u C} = 0, B = 1, D = 2.
  const std::array<std::size_t, 4> label_of = {0, 1, 0, 2};
  std::vector<std::size_t> labels(components[3].back() + 1);
  for (int c = 0; c < 4; ++c) {
    for (std::size_t p : components[c]) labels[p] = label_of[c];
  }
  return labels;
}

Fig3Cost Fig3AnalyticOptimum(const Fig3Params& params) {
  CheckFig3(params);
  return {static_cast<double>(params.size_small) * kFig3DistAC,
          3.0 * static_cast<double>(params.size_big - 1)};
}

ResilientInstance GenerateResilient(const ResilientParams& params) {
  if (params.k < 2) {
    throw PreconditionError("center proximity needs k >= 2");
  }
  if (params.n < 2 * params.k) throw PreconditionError("need n >= 2k");
  if (!(params.target_factor > 1.0)) {
    throw PreconditionError("target factor must exceed 1");
  }
  if (params.dimension == 0) throw PreconditionError("dimension must be >= 1");
  for (std::size_t attempt = 0; attempt < params.max_retries; ++attempt) {
    const std::uint64_t seed =
        attempt == 0 ? params.seed : DeriveSeed(params.seed, attempt);
    if (auto out = TryResilient(params, seed)) return std::move(*out);
  }
  throw PreconditionError("no instance passed the post-checks in " +
                          std::to_string(params.max_retries) + " attempts");
}

Instance GenerateCoverageReduction(
    const std::vector<std::vector<std::size_t>>& sets,
    std::size_t universe_size, std::size_t k) {
  const std::size_t m = sets.size();
  if (m == 0) throw PreconditionError("set system has no sets");
  if (universe_size == 0) throw PreconditionError("empty universe");
  const std::size_t n = m + universe_size;
  std::vector<std::vector<std::size_t>> adjacency(n);
  std::vector<bool> covered(universe_size, false);
  for (std::size_t s = 0; s < m; ++s) {
    if (sets[s].empty()) {
      throw PreconditionError("set " + std::to_string(s) + " is empty");
    }
    for (std::size_t e : sets[s]) {
      if (e >= universe_size) {
        throw PreconditionError("element id " + std::to_string(e) +
                                " outside the universe");
      }
      const std::size_t v = m + e;
      if (std::find(adjacency[s].begin(), adjacency[s].end(), v) !=
          adjacency[s].end()) {
        continue;
      }
      adjacency[s].push_back(v);
      adjacency[v].push_back(s);
      covered[e] = true;
    }
  }
  for (std::size_t e = 0; e < universe_size; ++e) {
    if (!covered[e]) {
      throw PreconditionError("element " + std::to_string(e) +
                              " belongs to no set");
    }
  }

  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> hops(n,
                                             std::vector<std::size_t>(n, kUnreached));
  std::size_t diameter = 0;
  for (std::size_t src = 0; src < n; ++src) {
    auto& row = hops[src];
    row[src] = 0;
    std::deque<std::size_t> queue = {src};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : adjacency[v]) {
        if (row[w] != kUnreached) continue;
        row[w] = row[v] + 1;
        diameter = std::max(diameter, row[w]);
        queue.push_back(w);
      }
    }
  }

  DistanceMatrix d(n);
  const double disconnected = static_cast<double>(diameter + 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d.Set(i, j,
            hops[i][j] == kUnreached ? disconnected
                                     : static_cast<double>(hops[i][j]));
    }
  }
  std::ostringstream name;
  name << "coverage(sets=" << m << ",universe=" << universe_size
       << ",k=" << k << ")";
  return Instance::FromMatrix(std::move(d), name.str());
}

}  // namespace stablecluster
