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

#ifndef STABLECLUSTER_LINKAGE_H_
#define STABLECLUSTER_LINKAGE_H_

#include <cstddef>
#include <vector>

#include "stablecluster/metric.h"

namespace stablecluster {

// Full single-linkage merge tree.
//
// Node ids 0..n-1 are the leaves (node i holds point i); ids n..2n-2 are
// internal nodes in merge order, so children always precede parents. The
// left child of a merge is the side holding the smaller point index.
class Dendrogram {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Node {
    std::size_t left = kNone;
    std::size_t right = kNone;
    std::size_t parent = kNone;
    double height = 0.0;       // 0 for leaves
    std::size_t count = 1;     // number of leaves below
    std::size_t min_leaf = 0;  // smallest point index below

    bool is_leaf() const { return left == kNone; }
  };

  Dendrogram() = default;
  // Single-leaf tree for n == 1 or the start of a merge sequence.
  explicit Dendrogram(std::size_t num_points);

  // Appends an internal node joining two current roots.
  std::size_t Merge(std::size_t a, std::size_t b, double height);

  std::size_t num_points() const { return num_points_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t root() const { return nodes_.size() - 1; }
  const Node& node(std::size_t id) const { return nodes_[id]; }
  const std::vector<Node>& nodes() const { return nodes_; }

  // Point indices under `id`, ascending.
  std::vector<std::size_t> Members(std::size_t id) const;

  // Number of merges whose height equals that of another merge. The tree
  // shape among such merges depends on the tie-breaking rule.
  std::size_t tied_merges() const { return tied_merges_; }
  void set_tied_merges(std::size_t count) { tied_merges_ = count; }

  bool operator==(const Dendrogram& other) const;

 private:
  std::size_t num_points_ = 0;
  std::vector<Node> nodes_;
  std::size_t tied_merges_ = 0;
};

// Runs single linkage until one cluster remains.
//
// Among clusters at the current minimum d_min, the pair with the smallest
// (min point index of first, min point index of second) is merged first.
// Heights are copied from matrix entries, never recomputed. O(n^2) time via
// Prim's algorithm on the dense matrix for tie-free inputs.
Dendrogram SingleLinkageTree(const Instance& instance);

}  // namespace stablecluster

#endif  // STABLECLUSTER_LINKAGE_H_
