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

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stablecluster {
namespace {

struct Edge {
  std::size_t u;
  std::size_t v;
  double weight;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::size_t Union(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return a;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

// Prim's algorithm over the dense matrix. Returns n-1 edges.
std::vector<Edge> MinimumSpanningTree(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  std::vector<Edge> edges;
  if (n < 2) return edges;
  edges.reserve(n - 1);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, kInf);
  std::vector<std::size_t> best_from(n, 0);

  std::size_t current = 0;
  in_tree[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    const auto row = d.Row(current);
    std::size_t next = n;
    double next_weight = kInf;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      if (row[v] < best[v]) {
        best[v] = row[v];
        best_from[v] = current;
      }
      if (next == n || best[v] < next_weight) {
        next = v;
        next_weight = best[v];
      }
    }
    in_tree[next] = true;
    edges.push_back({std::min(best_from[next], next),
                     std::max(best_from[next], next), next_weight});
    current = next;
  }
  return edges;
}

// State shared while replaying MST edges as merges.
struct MergeState {
  const DistanceMatrix& dist;
  Dendrogram& tree;
  DisjointSets sets;
  // Union-find root -> current dendrogram node of that cluster.
  std::vector<std::size_t> node_of;

  std::size_t MergeRoots(std::size_t ra, std::size_t rb, double height) {
    const std::size_t node = tree.Merge(node_of[ra], node_of[rb], height);
    const std::size_t root = sets.Union(ra, rb);
    node_of[root] = node;
    return root;
  }
};

// Merges a batch of MST edges that share one weight. Any two current
// clusters joined by an entry of exactly this weight are adjacent; the
// adjacent pair with the lexicographically smallest (min leaf, min leaf) is
// merged first, repeatedly, which reproduces naive single linkage exactly.
void MergeTiedGroup(MergeState& state, std::span<const Edge> group,
                    double weight) {
  const std::size_t n = state.dist.size();

  // Touched clusters, keyed by their min leaf.
  std::unordered_map<std::size_t, std::size_t> root_to_key;
  std::unordered_map<std::size_t, std::size_t> key_to_root;
  for (const Edge& e : group) {
    for (std::size_t p : {e.u, e.v}) {
      const std::size_t r = state.sets.Find(p);
      const std::size_t key = state.tree.node(state.node_of[r]).min_leaf;
      root_to_key.emplace(r, key);
      key_to_root.emplace(key, r);
    }
  }

  std::vector<std::size_t> points;
  std::vector<std::size_t> point_key;
  for (std::size_t p = 0; p < n; ++p) {
    const auto it = root_to_key.find(state.sets.Find(p));
    if (it == root_to_key.end()) continue;
    points.push_back(p);
    point_key.push_back(it->second);
  }

  std::unordered_map<std::size_t, std::set<std::size_t>> adjacency;
  std::set<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t a = 0; a < points.size(); ++a) {
    const auto row = state.dist.Row(points[a]);
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (point_key[a] == point_key[b] || row[points[b]] != weight) continue;
      const std::size_t ka = std::min(point_key[a], point_key[b]);
      const std::size_t kb = std::max(point_key[a], point_key[b]);
      adjacency[ka].insert(kb);
      adjacency[kb].insert(ka);
      candidates.emplace(ka, kb);
    }
  }

  while (!candidates.empty()) {
    const auto [keep, gone] = *candidates.begin();
    candidates.erase(candidates.begin());
    const std::size_t root =
        state.MergeRoots(key_to_root.at(keep), key_to_root.at(gone), weight);
    key_to_root[keep] = root;
    key_to_root.erase(gone);

    auto gone_adj = std::move(adjacency[gone]);
    adjacency.erase(gone);
    for (std::size_t x : gone_adj) {
      if (x == keep) continue;
      candidates.erase({std::min(gone, x), std::max(gone, x)});
      adjacency[x].erase(gone);
      adjacency[x].insert(keep);
      adjacency[keep].insert(x);
      candidates.emplace(std::min(keep, x), std::max(keep, x));
    }
    adjacency[keep].erase(gone);
  }
}

}  // namespace

Dendrogram::Dendrogram(std::size_t num_points) : num_points_(num_points) {
  nodes_.resize(num_points);
  for (std::size_t i = 0; i < num_points; ++i) nodes_[i].min_leaf = i;
}

std::size_t Dendrogram::Merge(std::size_t a, std::size_t b, double height) {
  if (nodes_[b].min_leaf < nodes_[a].min_leaf) std::swap(a, b);
  Node merged;
  merged.left = a;
  merged.right = b;
  merged.height = height;
  merged.count = nodes_[a].count + nodes_[b].count;
  merged.min_leaf = nodes_[a].min_leaf;
  const std::size_t id = nodes_.size();
  nodes_[a].parent = id;
  nodes_[b].parent = id;
  nodes_.push_back(merged);
  return id;
}

std::vector<std::size_t> Dendrogram::Members(std::size_t id) const {
  std::vector<std::size_t> out;
  out.reserve(nodes_[id].count);
  std::vector<std::size_t> stack = {id};
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    if (nodes_[cur].is_leaf()) {
      out.push_back(cur);
    } else {
      stack.push_back(nodes_[cur].left);
      stack.push_back(nodes_[cur].right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Dendrogram::operator==(const Dendrogram& other) const {
  if (num_points_ != other.num_points_ || nodes_.size() != other.nodes_.size())
    return false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& a = nodes_[i];
    const Node& b = other.nodes_[i];
    if (std::tie(a.left, a.right, a.parent, a.height, a.count, a.min_leaf) !=
        std::tie(b.left, b.right, b.parent, b.height, b.count, b.min_leaf))
      return false;
  }
  return true;
}

Dendrogram SingleLinkageTree(const Instance& instance) {
  const DistanceMatrix& dist = instance.distances();
  const std::size_t n = dist.size();
  Dendrogram tree(n);
  if (n < 2) return tree;

  std::vector<Edge> edges = MinimumSpanningTree(dist);
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.weight, a.u, a.v) < std::tie(b.weight, b.u, b.v);
  });

  MergeState state{dist, tree, DisjointSets(n), {}};
  state.node_of.resize(n);
  std::iota(state.node_of.begin(), state.node_of.end(), 0);

  std::size_t tied = 0;
  for (std::size_t begin = 0; begin < edges.size();) {
    std::size_t end = begin + 1;
    while (end < edges.size() && edges[end].weight == edges[begin].weight) {
      ++end;
    }
    if (end - begin == 1) {
      const Edge& e = edges[begin];
      state.MergeRoots(state.sets.Find(e.u), state.sets.Find(e.v), e.weight);
    } else {
      tied += end - begin;
      MergeTiedGroup(state,
                     std::span<const Edge>(edges.data() + begin, end - begin),
                     edges[begin].weight);
    }
    begin = end;
  }
  tree.set_tied_merges(tied);
  return tree;
}

}  // namespace stablecluster
