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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "stablecluster/errors.h"
#include "stablecluster/random.h"
#include "test_support.h"

namespace stablecluster {
namespace {

const ObjectiveKind kAllKinds[] = {ObjectiveKind::kMedian,
                                   ObjectiveKind::kMeans,
                                   ObjectiveKind::kCenter};

TEST(ObjectiveTest, NamesRoundTrip) {
  for (auto kind : kAllKinds) {
    EXPECT_EQ(ParseObjectiveKind(ObjectiveName(kind)), kind);
  }
  EXPECT_FALSE(ParseObjectiveKind("kmedoids").has_value());
}

TEST(ObjectiveTest, AggregationFollowsKind) {
  EXPECT_EQ(Objective(ObjectiveKind::kMedian).aggregation(), Aggregation::kSum);
  EXPECT_EQ(Objective(ObjectiveKind::kMeans).aggregation(), Aggregation::kSum);
  EXPECT_EQ(Objective(ObjectiveKind::kCenter).aggregation(), Aggregation::kMax);
}

TEST(ObjectiveTest, WeightsMustBePositive) {
  EXPECT_THROW(Objective(ObjectiveKind::kMedian, {1.0, 0.0}), PreconditionError);
  EXPECT_THROW(Objective(ObjectiveKind::kMedian, {-2.0}), PreconditionError);
  EXPECT_EQ(Objective(ObjectiveKind::kMedian, {2.0, 2.0}).uniform_weight(), 2.0);
  EXPECT_FALSE(Objective(ObjectiveKind::kMedian, {2.0, 1.0})
                   .uniform_weight()
                   .has_value());
}

TEST(ClusterCostTest, SingletonIsFree) {
  const Instance inst = Instance::FromPoints({{0.0}, {1.0}, {3.0}},
                                             SourceMetric::kEuclidean);
  for (auto kind : kAllKinds) {
    const std::vector<std::size_t> members = {2};
    const ClusterCost cost = ComputeClusterCost(inst, members, kind);
    EXPECT_EQ(cost.value, 0.0);
    EXPECT_EQ(std::get<std::size_t>(cost.center), 2u);
  }
}

TEST(ClusterCostTest, LineMedian) {
  const Instance inst = Instance::FromPoints({{0.0}, {1.0}, {3.0}},
                                             SourceMetric::kEuclidean);
  const std::vector<std::size_t> members = {0, 1, 2};
  const ClusterCost cost =
      ComputeClusterCost(inst, members, ObjectiveKind::kMedian);
  EXPECT_EQ(cost.value, 3.0);
  EXPECT_EQ(std::get<std::size_t>(cost.center), 1u);
}

TEST(ClusterCostTest, SteinerCentroid) {
  const Instance inst = Instance::FromPoints(
      {{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}}, SourceMetric::kSquaredEuclidean,
      CenterPolicy::kSteinerCentroid);
  const std::vector<std::size_t> members = {0, 1, 2};
  const ClusterCost cost =
      ComputeClusterCost(inst, members, ObjectiveKind::kMeans);
  const auto& center = std::get<Coordinates>(cost.center);
  EXPECT_NEAR(center[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(center[1], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(cost.value, 16.0 / 3.0, 1e-12);
  EXPECT_THROW(ComputeClusterCost(inst, members, ObjectiveKind::kMedian),
               PreconditionError);
}

TEST(ClusterCostTest, CentroidBeatsRandomAlternatives) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const Instance inst = testing::RandomPointInstance(
        rng, 8, 3, SourceMetric::kSquaredEuclidean,
        CenterPolicy::kSteinerCentroid);
    const std::vector<std::size_t> members = {0, 1, 2, 3, 4, 5, 6, 7};
    const double best =
        ComputeClusterCost(inst, members, ObjectiveKind::kMeans).value;
    for (int a = 0; a < 1000; ++a) {
      double value = 0.0;
      Coordinates c(3);
      for (double& x : c) x = UniformIn(rng, -0.5, 1.5);
      for (std::size_t p : members) {
        for (std::size_t d = 0; d < 3; ++d) {
          const double diff = inst.points()[p][d] - c[d];
          value += diff * diff;
        }
      }
      EXPECT_LE(best, value + 1e-12);
    }
  }
}

TEST(ClusterCostTest, MatchesBruteForceEnumeration) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const bool squared = t % 2 == 0;
    const Instance inst = testing::RandomPointInstance(
        rng, 9, 2,
        squared ? SourceMetric::kSquaredEuclidean : SourceMetric::kEuclidean);
    const auto labels = testing::RandomLabels(rng, 9, 3);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < 9; ++i) {
      if (labels[i] == 0) members.push_back(i);
    }
    for (auto kind : kAllKinds) {
      EXPECT_NEAR(ComputeClusterCost(inst, members, kind).value,
                  testing::BruteClusterCost(inst, members, kind), 1e-12);
    }
  }
}

TEST(ClusterCostTest, MonotoneUnderAddingPoints) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = testing::RandomGraphMetric(rng, 8);
    std::vector<std::size_t> members = {UniformIndex(rng, 8)};
    for (std::size_t q = 0; q < 8; ++q) {
      if (q == members.front()) continue;
      std::vector<std::size_t> bigger = members;
      bigger.push_back(q);
      for (auto kind : kAllKinds) {
        EXPECT_LE(ComputeClusterCost(inst, members, kind).value,
                  ComputeClusterCost(inst, bigger, kind).value);
      }
      members = bigger;
    }
  }
}

TEST(ClusterCostTest, ScalingBehaviour) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 30; ++t) {
    // Point-derived distances avoid exact cost ties between candidates.
    const Instance points =
        testing::RandomPointInstance(rng, 7, 2, SourceMetric::kEuclidean);
    std::vector<std::vector<double>> base(7, std::vector<double>(7));
    for (std::size_t i = 0; i < 7; ++i) {
      for (std::size_t j = 0; j < 7; ++j) base[i][j] = points.distance(i, j);
    }
    const Instance inst = Instance::FromMatrix(base);
    const double lambda = UniformIn(rng, 0.5, 4.0);
    std::vector<std::vector<double>> scaled(7, std::vector<double>(7));
    for (std::size_t i = 0; i < 7; ++i) {
      for (std::size_t j = 0; j < 7; ++j) {
        scaled[i][j] = lambda * inst.distance(i, j);
      }
    }
    const Instance big = Instance::FromMatrix(scaled);
    const std::vector<std::size_t> members = {0, 2, 3, 6};
    for (auto kind : kAllKinds) {
      const ClusterCost a = ComputeClusterCost(inst, members, kind);
      const ClusterCost b = ComputeClusterCost(big, members, kind);
      const double power = kind == ObjectiveKind::kMeans ? lambda * lambda : lambda;
      EXPECT_NEAR(b.value, power * a.value, 1e-9 * b.value);
      EXPECT_EQ(std::get<std::size_t>(a.center), std::get<std::size_t>(b.center));
    }
  }
}

TEST(AggregateTest, Examples) {
  const std::vector<double> values = {3.0, 5.0};
  EXPECT_EQ(Aggregate(values, Objective(ObjectiveKind::kMedian)), 8.0);
  EXPECT_EQ(Aggregate(values, Objective(ObjectiveKind::kCenter)), 5.0);
  EXPECT_EQ(Aggregate(values, Objective(ObjectiveKind::kMedian, {2.0, 1.0})),
            11.0);
  EXPECT_THROW(Objective(ObjectiveKind::kCenter, {1.0, 1.0}), PreconditionError);
}

}  // namespace
}  // namespace stablecluster
