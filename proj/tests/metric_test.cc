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

#include "stablecluster/metric.h"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "stablecluster/errors.h"
#include "stablecluster/generators.h"
#include "test_support.h"

namespace stablecluster {
namespace {

using Matrix = std::vector<std::vector<double>>;

TEST(FromPointsTest, LineEuclidean) {
  const Instance inst =
      Instance::FromPoints({{0.0}, {3.0}}, SourceMetric::kEuclidean);
  EXPECT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst.distance(0, 0), 0.0);
  EXPECT_EQ(inst.distance(0, 1), 3.0);
  EXPECT_EQ(inst.distance(1, 0), 3.0);
}

TEST(FromPointsTest, ThreeFourFive) {
  const Instance inst =
      Instance::FromPoints({{0.0, 0.0}, {3.0, 4.0}}, SourceMetric::kEuclidean);
  EXPECT_EQ(inst.distance(0, 1), 5.0);
}

TEST(FromPointsTest, SquaredEuclidean) {
  const Instance inst = Instance::FromPoints({{0.0}, {1.0}, {3.0}},
                                             SourceMetric::kSquaredEuclidean);
  EXPECT_EQ(inst.distance(0, 2), 9.0);
  EXPECT_EQ(inst.metric_distance(0, 2), 3.0);
}

TEST(FromPointsTest, RejectsBadInput) {
  EXPECT_THROW(Instance::FromPoints({{0.0}}, SourceMetric::kEuclidean),
               PreconditionError);
  EXPECT_THROW(
      Instance::FromPoints({{0.0}, {1.0, 2.0}}, SourceMetric::kEuclidean),
      PreconditionError);
  EXPECT_THROW(Instance::FromPoints({{0.0}, {std::nan("")}},
                                    SourceMetric::kEuclidean),
               PreconditionError);
  EXPECT_THROW(Instance::FromPoints({{0.0}, {1.0}}, SourceMetric::kEuclidean,
                                    CenterPolicy::kSteinerCentroid),
               PreconditionError);
  EXPECT_THROW(
      Instance::FromPoints({{0.0}, {1.0}}, SourceMetric::kExplicitMatrix),
      PreconditionError);
}

TEST(FromMatrixTest, RejectsMalformedMatrices) {
  EXPECT_THROW(Instance::FromMatrix(Matrix{}), PreconditionError);
  EXPECT_THROW(Instance::FromMatrix(Matrix{{0, 1}, {1}}), PreconditionError);
  EXPECT_THROW(Instance::FromMatrix(Matrix{{0, 1}, {2, 0}}), PreconditionError);
  EXPECT_THROW(Instance::FromMatrix(Matrix{{0, -1}, {-1, 0}}),
               PreconditionError);
  EXPECT_THROW(Instance::FromMatrix(Matrix{{1, 1}, {1, 0}}), PreconditionError);
}

TEST(FromMatrixTest, SinglePointIsAllowed) {
  const Instance inst = Instance::FromMatrix(Matrix{{0}});
  EXPECT_EQ(inst.size(), 1u);
}

TEST(ValidateMetricTest, TwoPointsOk) {
  EXPECT_TRUE(ValidateMetric(Instance::FromMatrix(Matrix{{0, 1}, {1, 0}})).ok());
}

TEST(ValidateMetricTest, TriangleViolation) {
  const auto report = ValidateMetric(
      Instance::FromMatrix(Matrix{{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}));
  ASSERT_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.violations) {
    if (v.kind == MetricViolation::Kind::kTriangle) {
      // 5 > 1 + 1 through the middle point.
      const bool outer = (v.i == 0 && v.k == 2) || (v.i == 2 && v.k == 0);
      if (outer && v.j == 1) {
        found = true;
        EXPECT_DOUBLE_EQ(v.excess, 3.0);
      }
    }
  }
  EXPECT_TRUE(found);
}

TEST(ValidateMetricTest, Fig3DefaultIsMetric) {
  EXPECT_TRUE(ValidateMetric(GenerateFig3({})).ok());
}

TEST(ValidateMetricTest, SquaredSourcesSkipTriangle) {
  // 0-1-2 on a line squared: 4 > 1 + 1, fine because it is not a metric.
  const Instance inst = Instance::FromPoints({{0.0}, {1.0}, {2.0}},
                                             SourceMetric::kSquaredEuclidean);
  EXPECT_TRUE(ValidateMetric(inst).ok());
}

TEST(ValidateMetricTest, PerturbedIsExempt) {
  const Instance inst = Instance::FromMatrix(
      Matrix{{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, "p", /*perturbed=*/true);
  EXPECT_TRUE(ValidateMetric(inst).ok());
}

TEST(ValidateMetricTest, RandomPointSetsAreMetrics) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    EXPECT_TRUE(ValidateMetric(testing::RandomPointInstance(
                                   rng, 12, 3, SourceMetric::kEuclidean))
                    .ok());
    EXPECT_TRUE(ValidateMetric(testing::RandomGraphMetric(rng, 9)).ok());
  }
}

TEST(PerturbTest, AlphaOneIsIdentity) {
  std::mt19937_64 rng(1);
  const Instance inst =
      testing::RandomPointInstance(rng, 15, 2, SourceMetric::kEuclidean);
  for (auto mode : {PerturbationMode::kRandomUniform,
                    PerturbationMode::kWithinClusterBlowup,
                    PerturbationMode::kCustomMask}) {
    PerturbationSpec spec;
    spec.alpha = 1.0;
    spec.mode = mode;
    spec.seed = 99;
    spec.members = {0, 1, 2, 3};
    spec.mask = {{0, 1}, {4, 5}};
    const Instance out = Perturb(inst, spec);
    EXPECT_TRUE(out.perturbed());
    EXPECT_EQ(out.distances(), inst.distances());
  }
}

TEST(PerturbTest, UniformStaysInEnvelopeAndIsSymmetric) {
  std::mt19937_64 rng(2);
  const Instance inst =
      testing::RandomPointInstance(rng, 30, 2, SourceMetric::kEuclidean);
  PerturbationSpec spec;
  spec.alpha = 3.0;
  spec.seed = 12345;
  const Instance out = Perturb(inst, spec);
  bool any_changed = false;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    for (std::size_t j = 0; j < inst.size(); ++j) {
      const double base = inst.distance(i, j);
      const double moved = out.distance(i, j);
      EXPECT_LE(base, moved);
      EXPECT_LE(moved, 3.0 * base);
      EXPECT_EQ(moved, out.distance(j, i));
      any_changed |= moved != base;
    }
  }
  EXPECT_TRUE(any_changed);
}

TEST(PerturbTest, DeterministicGivenSeed) {
  std::mt19937_64 rng(3);
  const Instance inst =
      testing::RandomPointInstance(rng, 10, 2, SourceMetric::kEuclidean);
  PerturbationSpec spec;
  spec.alpha = 2.0;
  spec.seed = 5;
  EXPECT_EQ(Perturb(inst, spec).distances(), Perturb(inst, spec).distances());
  PerturbationSpec other = spec;
  other.seed = 6;
  EXPECT_NE(Perturb(inst, spec).distances(), Perturb(inst, other).distances());
}

TEST(PerturbTest, MaskScalesExactlyOnePair) {
  std::mt19937_64 rng(4);
  const Instance inst =
      testing::RandomPointInstance(rng, 6, 2, SourceMetric::kEuclidean);
  PerturbationSpec spec;
  spec.alpha = 2.5;
  spec.mode = PerturbationMode::kCustomMask;
  spec.mask = {{3, 1}};
  const Instance out = Perturb(inst, spec);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      const bool masked = (i == 1 && j == 3) || (i == 3 && j == 1);
      EXPECT_EQ(out.distance(i, j),
                masked ? 2.5 * inst.distance(i, j) : inst.distance(i, j));
    }
  }
}

TEST(PerturbTest, RejectsAlphaBelowOne) {
  const Instance inst = Instance::FromMatrix(Matrix{{0, 1}, {1, 0}});
  PerturbationSpec spec;
  spec.alpha = 0.5;
  EXPECT_THROW(Perturb(inst, spec), PreconditionError);
}

TEST(BlowupTest, SingletonNoChange) {
  std::mt19937_64 rng(5);
  const Instance inst =
      testing::RandomPointInstance(rng, 5, 2, SourceMetric::kEuclidean);
  const std::vector<std::size_t> members = {2};
  EXPECT_EQ(BlowupWithinCluster(inst, members, 4.0).distances(),
            inst.distances());
}

TEST(BlowupTest, AllPointsDoubled) {
  std::mt19937_64 rng(6);
  const Instance inst =
      testing::RandomPointInstance(rng, 5, 2, SourceMetric::kEuclidean);
  const std::vector<std::size_t> members = {0, 1, 2, 3, 4};
  const Instance out = BlowupWithinCluster(inst, members, 2.0);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_EQ(out.distance(i, j), 2.0 * inst.distance(i, j));
    }
  }
}

TEST(BlowupTest, DisjointBlowupsCommute) {
  std::mt19937_64 rng(8);
  const Instance inst =
      testing::RandomPointInstance(rng, 8, 2, SourceMetric::kEuclidean);
  const std::vector<std::size_t> a = {0, 2, 5};
  const std::vector<std::size_t> b = {1, 3, 7};
  const Instance ab =
      BlowupWithinCluster(BlowupWithinCluster(inst, a, 2.0), b, 3.0);
  const Instance ba =
      BlowupWithinCluster(BlowupWithinCluster(inst, b, 3.0), a, 2.0);
  EXPECT_EQ(ab.distances(), ba.distances());
}

TEST(DMinTest, Examples) {
  const Instance line = Instance::FromPoints({{0.0}, {1.0}, {3.0}, {7.0}},
                                             SourceMetric::kEuclidean);
  const std::vector<std::size_t> a = {0, 1}, b = {2, 3};
  EXPECT_EQ(DMin(line, a, b), 2.0);
  const std::vector<std::size_t> i = {0}, j = {3};
  EXPECT_EQ(DMin(line, i, j), 7.0);

  const Instance m = Instance::FromMatrix(Matrix{{0, 4, 9}, {4, 0, 1}, {9, 1, 0}});
  const std::vector<std::size_t> x = {0}, y = {1, 2};
  EXPECT_EQ(DMin(m, x, y), 4.0);
}

TEST(DMinTest, SymmetricAndMonotone) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const Instance inst =
        testing::RandomPointInstance(rng, 10, 2, SourceMetric::kEuclidean);
    const auto labels = testing::RandomLabels(rng, 10, 3);
    std::vector<std::size_t> a, b, c;
    for (std::size_t i = 0; i < 10; ++i) {
      (labels[i] == 0 ? a : labels[i] == 1 ? b : c).push_back(i);
    }
    EXPECT_EQ(DMin(inst, a, b), DMin(inst, b, a));
    std::vector<std::size_t> bc = b;
    bc.insert(bc.end(), c.begin(), c.end());
    EXPECT_LE(DMin(inst, a, bc), DMin(inst, a, b));
  }
}

TEST(DMinTest, RejectsOverlapAndEmpty) {
  const Instance inst = Instance::FromMatrix(Matrix{{0, 1}, {1, 0}});
  const std::vector<std::size_t> a = {0}, empty = {}, both = {0, 1};
  EXPECT_THROW(DMin(inst, a, empty), PreconditionError);
  EXPECT_THROW(DMin(inst, a, both), PreconditionError);
}

}  // namespace
}  // namespace stablecluster
