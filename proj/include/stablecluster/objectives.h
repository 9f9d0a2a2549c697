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

#ifndef STABLECLUSTER_OBJECTIVES_H_
#define STABLECLUSTER_OBJECTIVES_H_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stablecluster/metric.h"

namespace stablecluster {

enum class ObjectiveKind { kMedian, kMeans, kCenter };
enum class Aggregation { kSum, kMax };

// "kmedian", "kmeans", "kcenter".
std::string_view ObjectiveName(ObjectiveKind kind);
std::optional<ObjectiveKind> ParseObjectiveKind(std::string_view name);

// A separable center-based objective: per-cluster scores combined by a
// (weighted) sum for k-median/k-means or by max for k-center.
class Objective {
 public:
  explicit Objective(ObjectiveKind kind, std::vector<double> weights = {});

  ObjectiveKind kind() const { return kind_; }
  Aggregation aggregation() const {
    return kind_ == ObjectiveKind::kCenter ? Aggregation::kMax
                                           : Aggregation::kSum;
  }
  // Empty means every cluster has weight 1.
  const std::vector<double>& weights() const { return weights_; }

  // Common weight when all weights agree (1 when none are given).
  std::optional<double> uniform_weight() const;

  std::string_view name() const { return ObjectiveName(kind_); }

 private:
  ObjectiveKind kind_;
  std::vector<double> weights_;
};

// A point index for data-point centers, coordinates for centroids.
using Center = std::variant<std::size_t, Coordinates>;

struct ClusterCost {
  double value = 0.0;
  Center center = std::size_t{0};
};

// Contribution of point p when served by data point c: d for k-median and
// k-center, d^2 for k-means (the stored entry itself for squared sources).
inline double PointCost(const Instance& instance, std::size_t p,
                        std::size_t c, ObjectiveKind kind) {
  const double stored = instance.distance(p, c);
  const bool squared =
      instance.source_metric() == SourceMetric::kSquaredEuclidean;
  if (kind == ObjectiveKind::kMeans) return squared ? stored : stored * stored;
  return squared ? std::sqrt(stored) : stored;
}

// Best single-cluster score for `members`.
//
// Data-point policy: minimizes over every point of the instance as a
// candidate center (not only members); ties go to the lowest index.
// Steiner policy (k-means only): the center is the coordinate mean and the
// value is the sum of squared distances to it.
ClusterCost ComputeClusterCost(const Instance& instance,
                               std::span<const std::size_t> members,
                               ObjectiveKind kind);

double Aggregate(std::span<const double> values, const Objective& objective);
double Aggregate(std::span<const ClusterCost> costs,
                 const Objective& objective);

Coordinates Centroid(const Instance& instance,
                     std::span<const std::size_t> members);

}  // namespace stablecluster

#endif  // STABLECLUSTER_OBJECTIVES_H_
