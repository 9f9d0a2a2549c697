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

#include "stablecluster/objectives.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "stablecluster/errors.h"

namespace stablecluster {

std::string_view ObjectiveName(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kMedian:
      return "kmedian";
    case ObjectiveKind::kMeans:
      return "kmeans";
    case ObjectiveKind::kCenter:
      return "kcenter";
  }
  return "unknown";
}

std::optional<ObjectiveKind> ParseObjectiveKind(std::string_view name) {
  if (name == "kmedian") return ObjectiveKind::kMedian;
  if (name == "kmeans") return ObjectiveKind::kMeans;
  if (name == "kcenter") return ObjectiveKind::kCenter;
  return std::nullopt;
}

Objective::Objective(ObjectiveKind kind, std::vector<double> weights)
    : kind_(kind), weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw PreconditionError("objective weights must be positive");
    }
  }
  if (!weights_.empty() && kind_ == ObjectiveKind::kCenter) {
    throw PreconditionError("k-center aggregates by max and takes no weights");
  }
}

std::optional<double> Objective::uniform_weight() const {
  if (weights_.empty()) return 1.0;
  for (double w : weights_) {
    if (w != weights_.front()) return std::nullopt;
  }
  return weights_.front();
}

Coordinates Centroid(const Instance& instance,
                     std::span<const std::size_t> members) {
  if (members.empty()) throw PreconditionError("centroid of an empty set");
  if (!instance.has_points()) {
    throw PreconditionError("centroid needs point coordinates");
  }
  const auto& pts = instance.points();
  Coordinates mean(instance.dimension(), 0.0);
  for (std::size_t p : members) {
    for (std::size_t t = 0; t < mean.size(); ++t) mean[t] += pts[p][t];
  }
  for (double& x : mean) x /= static_cast<double>(members.size());
  return mean;
}

ClusterCost ComputeClusterCost(const Instance& instance,
                               std::span<const std::size_t> members,
                               ObjectiveKind kind) {
  if (members.empty()) throw PreconditionError("cluster has no members");
  const std::size_t n = instance.size();
  for (std::size_t p : members) {
    if (p >= n) throw PreconditionError("member index out of range");
  }

  if (instance.center_policy() == CenterPolicy::kSteinerCentroid) {
    if (kind != ObjectiveKind::kMeans) {
      throw PreconditionError("steiner centers are defined for k-means only");
    }
    Coordinates mean = Centroid(instance, members);
    const auto& pts = instance.points();
    double value = 0.0;
    for (std::size_t p : members) {
      for (std::size_t t = 0; t < mean.size(); ++t) {
        const double diff = pts[p][t] - mean[t];
        value += diff * diff;
      }
    }
    return {value, std::move(mean)};
  }

  ClusterCost best{std::numeric_limits<double>::infinity(), std::size_t{0}};
  for (std::size_t c = 0; c < n; ++c) {
    double value = 0.0;
    if (kind == ObjectiveKind::kCenter) {
      for (std::size_t p : members) {
        value = std::max(value, PointCost(instance, p, c, kind));
      }
    } else {
      for (std::size_t p : members) value += PointCost(instance, p, c, kind);
    }
    if (value < best.value) best = {value, c};
  }
  return best;
}

double Aggregate(std::span<const double> values, const Objective& objective) {
  if (values.empty()) throw PreconditionError("no cluster costs to aggregate");
  const auto& weights = objective.weights();
  if (!weights.empty() && weights.size() != values.size()) {
    throw PreconditionError("weight count does not match cluster count");
  }
  if (objective.aggregation() == Aggregation::kMax) {
    return *std::max_element(values.begin(), values.end());
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += (weights.empty() ? 1.0 : weights[i]) * values[i];
  }
  return total;
}

double Aggregate(std::span<const ClusterCost> costs,
                 const Objective& objective) {
  std::vector<double> values;
  values.reserve(costs.size());
  for (const ClusterCost& c : costs) values.push_back(c.value);
  return Aggregate(values, objective);
}

}  // namespace stablecluster
