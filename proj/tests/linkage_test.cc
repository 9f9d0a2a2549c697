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

#include "stablecluster/linkage.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <tuple>
#include <vector>

#include "stablecluster/generators.h"
#include "stablecluster/random.h"
#include "test_support.h"

namespace stablecluster {
namespace {

void ExpectMatchesReference(const Instance& inst) {
  const Dendrogram tree = SingleLinkageTree(inst);
  const auto reference = testing::ReferenceSingleLinkage(inst);
  const std::size_t n = inst.size();
  ASSERT_EQ(tree.num_nodes(), 2 * n - 1);
  ASSERT_EQ(reference.size(), n - 1);
  for (std::size_t m = 0; m + 1 < n; ++m) {
    const auto& node = tree.node(n + m);
    SCOPED_TRACE("merge " + std::to_string(m));
    EXPECT_EQ(tree.Members(node.left), reference[m].first);
    EXPECT_EQ(tree.Members(node.right), reference[m].second);
    EXPECT_EQ(node.height, reference[m].height);
  }
}

// Kruskal over the complete graph, written without union by rank.
std::vector<double> MstWeights(const Instance& inst) {
  const std::size_t n = inst.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.emplace_back(inst.distance(i, j), i, j);
    }
  }
  std::sort(edges.begin(), edges.end());
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::vector<double> out;
  for (const auto& [w, i, j] : edges) {
    const std::size_t ci = comp[i], cj = comp[j];
    if (ci == cj) continue;
    for (auto& c : comp) {
      if (c == cj) c = ci;
    }
    out.push_back(w);
  }
  return out;
}

TEST(SingleLinkageTest, LineExample) {
  const Instance line = Instance::FromPoints({{0.0}, {1.0}, {3.0}, {7.0}},
                                             SourceMetric::kEuclidean);
  const Dendrogram tree = SingleLinkageTree(line);
  ASSERT_EQ(tree.num_nodes(), 7u);
  EXPECT_EQ(tree.Members(4), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(tree.node(4).height, 1.0);
  EXPECT_EQ(tree.Members(5), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(tree.node(5).height, 2.0);
  EXPECT_EQ(tree.Members(6), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(tree.node(6).height, 4.0);
  ExpectMatchesReference(line);
}

TEST(SingleLinkageTest, SinglePoint) {
  const Dendrogram tree =
      SingleLinkageTree(Instance::FromMatrix(std::vector<std::vector<double>>{{0}}));
  EXPECT_EQ(tree.num_nodes(), 1u);
  EXPECT_EQ(tree.root(), 0u);
  EXPECT_TRUE(tree.node(0).is_leaf());
}

TEST(SingleLinkageTest, StructuralInvariants) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + UniformIndex(rng, 40);
    const Instance inst =
        testing::RandomPointInstance(rng, n, 2, SourceMetric::kEuclidean);
    const Dendrogram tree = SingleLinkageTree(inst);
    ASSERT_EQ(tree.num_nodes(), 2 * n - 1);
    for (std::size_t id = 0; id < tree.num_nodes(); ++id) {
      const auto& node = tree.node(id);
      if (id == tree.root()) {
        EXPECT_EQ(node.parent, Dendrogram::kNone);
      } else {
        ASSERT_NE(node.parent, Dendrogram::kNone);
        const auto& parent = tree.node(node.parent);
        EXPECT_TRUE(parent.left == id || parent.right == id);
        EXPECT_LE(node.height, parent.height);
      }
      if (node.is_leaf()) {
        EXPECT_LT(id, n);
        continue;
      }
      auto left = tree.Members(node.left);
      auto right = tree.Members(node.right);
      EXPECT_EQ(node.height, DMin(inst, left, right));
      left.insert(left.end(), right.begin(), right.end());
      std::sort(left.begin(), left.end());
      EXPECT_EQ(left, tree.Members(id));
      EXPECT_EQ(node.count, left.size());
    }
    EXPECT_EQ(tree.Members(tree.root()).size(), n);
  }
}

TEST(SingleLinkageTest, MatchesNaiveReferenceOnRandomInstances) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + UniformIndex(rng, 63);
    ExpectMatchesReference(
        testing::RandomPointInstance(rng, n, 2, SourceMetric::kEuclidean));
  }
  for (int t = 0; t < 30; ++t) {
    ExpectMatchesReference(testing::RandomGraphMetric(rng, 2 + UniformIndex(rng, 20)));
  }
}

TEST(SingleLinkageTest, MatchesNaiveReferenceUnderHeavyTies) {
  std::mt19937_64 rng(13);
  std::size_t tied = 0;
  for (int t = 0; t < 80; ++t) {
    const std::size_t n = 2 + UniformIndex(rng, 40);
    std::vector<Coordinates> pts(n, Coordinates(2));
    for (auto& p : pts) {
      for (double& x : p) x = static_cast<double>(UniformIndex(rng, 4));
    }
    const Instance inst = Instance::FromPoints(pts, SourceMetric::kEuclidean);
    ExpectMatchesReference(inst);
    tied += SingleLinkageTree(inst).tied_merges();
  }
  EXPECT_GT(tied, 0u);
}

TEST(SingleLinkageTest, HeightsEqualMstWeights) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 30; ++t) {
    const Instance inst = testing::RandomPointInstance(
        rng, 2 + UniformIndex(rng, 60), 3, SourceMetric::kEuclidean);
    const Dendrogram tree = SingleLinkageTree(inst);
    std::vector<double> heights;
    for (std::size_t id = inst.size(); id < tree.num_nodes(); ++id) {
      heights.push_back(tree.node(id).height);
    }
    std::sort(heights.begin(), heights.end());
    EXPECT_EQ(heights, MstWeights(inst));
  }
}

TEST(SingleLinkageTest, Deterministic) {
  std::mt19937_64 rng(15);
  const Instance inst =
      testing::RandomPointInstance(rng, 200, 2, SourceMetric::kEuclidean);
  EXPECT_TRUE(SingleLinkageTree(inst) == SingleLinkageTree(inst));
}

TEST(SingleLinkageTest, TieFreeInstanceReportsNoTies) {
  std::mt19937_64 rng(16);
  const Instance inst =
      testing::RandomPointInstance(rng, 30, 2, SourceMetric::kEuclidean);
  ASSERT_TRUE(testing::DistancesDistinct(inst));
  EXPECT_EQ(SingleLinkageTree(inst).tied_merges(), 0u);
}

TEST(SingleLinkageTest, Fig3JoinsBAndDBeforeAAndC) {
  const Fig3Params params;
  const Instance inst = GenerateFig3(params);
  const Dendrogram tree = SingleLinkageTree(inst);
  const auto comps = Fig3Components(params);
  auto sorted = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  std::vector<std::size_t> bd = comps[1];
  bd.insert(bd.end(), comps[3].begin(), comps[3].end());
  bd = sorted(bd);
  std::size_t bd_node = Dendrogram::kNone;
  std::size_t first_ac = Dendrogram::kNone;
  for (std::size_t id = inst.size(); id < tree.num_nodes(); ++id) {
    const auto members = tree.Members(id);
    if (members == bd) bd_node = id;
    const bool has_a =
        std::binary_search(members.begin(), members.end(), comps[0].front());
    const bool has_c =
        std::binary_search(members.begin(), members.end(), comps[2].front());
    if (has_a && has_c && first_ac == Dendrogram::kNone) first_ac = id;
  }
  ASSERT_NE(bd_node, Dendrogram::kNone);
  ASSERT_NE(first_ac, Dendrogram::kNone);
  EXPECT_LT(bd_node, first_ac);
  EXPECT_LT(tree.node(bd_node).height, tree.node(first_ac).height);
}

}  // namespace
}  // namespace stablecluster
