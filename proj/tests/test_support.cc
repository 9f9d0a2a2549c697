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

#include "test_support.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "stablecluster/random.h"

namespace stablecluster::testing {

Instance RandomPointInstance(std::mt19937_64& rng, std::size_t n,
                             std::size_t dim, SourceMetric metric,
                             CenterPolicy policy) {
  std::vector<Coordinates> points(n, Coordinates(dim));
  for (auto& p : points) {
    for (double& x : p) x = UniformUnit(rng);
  }
  return Instance::FromPoints(std::move(points), metric, policy);
}

Instance RandomBlobInstance(std::mt19937_64& rng, std::size_t n,
                            std::size_t groups, double spread) {
  std::vector<Coordinates> anchors(groups, Coordinates(2));
  for (auto& a : anchors) {
    for (double& x : a) x = UniformIn(rng, 0.0, 10.0);
  }
  std::vector<Coordinates> points(n, Coordinates(2));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = anchors[i % groups];
    for (std::size_t d = 0; d < 2; ++d) {
      points[i][d] = a[d] + UniformIn(rng, -spread, spread);
    }
  }
  return Instance::FromPoints(std::move(points), SourceMetric::kEuclidean);
}

Instance RandomGraphMetric(std::mt19937_64& rng, std::size_t n) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  auto connect = [&](std::size_t a, std::size_t b) {
    const double w = UniformIn(rng, 1.0, 10.0);
    d[a][b] = d[b][a] = std::min(d[a][b], w);
  };
  // A random spanning path keeps the graph connected; extra edges vary it.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 1; i < n; ++i) connect(order[i - 1], order[i]);
  const std::size_t extra = UniformIndex(rng, 2 * n + 1);
  for (std::size_t e = 0; e < extra; ++e) {
    const std::size_t a = UniformIndex(rng, n);
    const std::size_t b = UniformIndex(rng, n);
    if (a != b) connect(a, b);
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
      }
    }
  }
  return Instance::FromMatrix(d, "graph");
}

std::vector<ReferenceMerge> ReferenceSingleLinkage(const Instance& instance) {
  const std::size_t n = instance.size();
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({i});
  std::vector<ReferenceMerge> merges;
  while (clusters.size() > 1) {
    // Keep clusters ordered by min leaf so index order is tie order.
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        double link = std::numeric_limits<double>::infinity();
        for (std::size_t p : clusters[a]) {
          for (std::size_t q : clusters[b]) {
            link = std::min(link, instance.distance(p, q));
          }
        }
        if (link < best) {
          best = link;
          bi = a;
          bj = b;
        }
      }
    }
    merges.push_back({clusters[bi], clusters[bj], best});
    std::vector<std::size_t> joined = clusters[bi];
    joined.insert(joined.end(), clusters[bj].begin(), clusters[bj].end());
    std::sort(joined.begin(), joined.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    clusters[bi] = std::move(joined);
  }
  return merges;
}

double BruteClusterCost(const Instance& instance,
                        const std::vector<std::size_t>& members,
                        ObjectiveKind kind) {
  const bool squared =
      instance.source_metric() == SourceMetric::kSquaredEuclidean;
  auto base = [&](std::size_t p, std::size_t c) {
    const double d = instance.distance(p, c);
    return squared ? std::sqrt(d) : d;
  };
  if (instance.center_policy() == CenterPolicy::kSteinerCentroid) {
    const auto& pts = instance.points();
    Coordinates mean(instance.dimension(), 0.0);
    for (std::size_t p : members) {
      for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += pts[p][d];
    }
    for (double& x : mean) x /= static_cast<double>(members.size());
    double total = 0.0;
    for (std::size_t p : members) {
      for (std::size_t d = 0; d < mean.size(); ++d) {
        total += (pts[p][d] - mean[d]) * (pts[p][d] - mean[d]);
      }
    }
    return total;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < instance.size(); ++c) {
    double value = 0.0;
    for (std::size_t p : members) {
      const double d = base(p, c);
      switch (kind) {
        case ObjectiveKind::kMedian:
          value += d;
          break;
        case ObjectiveKind::kMeans:
          value += squared ? instance.distance(p, c) : d * d;
          break;
        case ObjectiveKind::kCenter:
          value = std::max(value, d);
          break;
      }
    }
    best = std::min(best, value);
  }
  return best;
}

double BrutePartitionCost(const Instance& instance,
                          const std::vector<std::size_t>& labels,
                          ObjectiveKind kind) {
  const std::size_t k = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<std::size_t>> groups(k);
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  double total = 0.0;
  for (const auto& g : groups) {
    const double c = BruteClusterCost(instance, g, kind);
    total = kind == ObjectiveKind::kCenter ? std::max(total, c) : total + c;
  }
  return total;
}

namespace {

// All multisets of node ids that prune the subtree at `id` into `k` parts.
std::vector<std::vector<std::size_t>> PruneSubtree(const Dendrogram& tree,
                                                   std::size_t id,
                                                   std::size_t k) {
  const auto& node = tree.node(id);
  if (k == 1) return {{id}};
  if (node.is_leaf() || k > node.count) return {};
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t left = 1; left < k; ++left) {
    for (const auto& a : PruneSubtree(tree, node.left, left)) {
      for (const auto& b : PruneSubtree(tree, node.right, k - left)) {
        auto joined = a;
        joined.insert(joined.end(), b.begin(), b.end());
        out.push_back(std::move(joined));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> EnumeratePrunings(const Dendrogram& tree,
                                                        std::size_t k) {
  return PruneSubtree(tree, tree.root(), k);
}

bool BruteMinStable(const Instance& instance,
                    const std::vector<std::size_t>& labels) {
  const std::size_t n = labels.size();
  const std::size_t k = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<std::size_t>> groups(k);
  for (std::size_t i = 0; i < n; ++i) groups[labels[i]].push_back(i);
  auto dmin = [&](const std::vector<std::size_t>& a,
                  const std::vector<std::size_t>& b) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p : a) {
      for (std::size_t q : b) best = std::min(best, instance.distance(p, q));
    }
    return best;
  };
  for (std::size_t c = 0; c < k; ++c) {
    const auto& cluster = groups[c];
    const std::size_t s = cluster.size();
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << s); ++mask) {
      std::vector<std::size_t> a, rest;
      for (std::size_t b = 0; b < s; ++b) {
        ((mask >> b) & 1 ? a : rest).push_back(cluster[b]);
      }
      const double inner = dmin(a, rest);
      for (std::size_t other = 0; other < k; ++other) {
        if (other != c && inner > dmin(a, groups[other])) return false;
      }
    }
  }
  return true;
}

bool DistancesDistinct(const Instance& instance) {
  std::set<double> seen;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    for (std::size_t j = i + 1; j < instance.size(); ++j) {
      if (!seen.insert(instance.distance(i, j)).second) return false;
    }
  }
  return true;
}

std::vector<std::size_t> RandomLabels(std::mt19937_64& rng, std::size_t n,
                                      std::size_t k) {
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = i < k ? i : UniformIndex(rng, k);
  }
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

}  // namespace stablecluster::testing
