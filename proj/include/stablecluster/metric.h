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

#ifndef STABLECLUSTER_METRIC_H_
#define STABLECLUSTER_METRIC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stablecluster {

using Coordinates = std::vector<double>;

// Upper bound on the number of points an Instance may hold. The dense
// matrix is n^2 doubles, so 20k points is already 3.2 GB.
inline constexpr std::size_t kMaxPoints = 20000;

enum class SourceMetric { kExplicitMatrix, kEuclidean, kSquaredEuclidean };

enum class CenterPolicy { kDataPoints, kSteinerCentroid };

// Dense symmetric n x n matrix of doubles, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  // Writes both (i, j) and (j, i).
  void Set(std::size_t i, std::size_t j, double value) {
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
  }

  std::span<const double> Row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }

  double MaxEntry() const;

  bool operator==(const DistanceMatrix& other) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// A clustering instance: n points and their pairwise distances.
//
// Instances are immutable once built. `distance(i, j)` is the value stored
// in the matrix (squared for kSquaredEuclidean sources); `metric_distance`
// always returns the underlying metric d, i.e. the square root for squared
// sources. Orderings of distances (single linkage, min-stability) agree
// under both views.
class Instance {
 public:
  // Requires >= 2 points of equal dimension with finite coordinates.
  // kSteinerCentroid requires kSquaredEuclidean.
  static Instance FromPoints(std::vector<Coordinates> points,
                             SourceMetric metric,
                             CenterPolicy policy = CenterPolicy::kDataPoints,
                             std::string name = "");

  // Requires a square, symmetric, finite, non-negative matrix with a zero
  // diagonal. Only kDataPoints is accepted (there are no coordinates).
  // `squared` marks the entries as squared Euclidean distances.
  static Instance FromMatrix(const std::vector<std::vector<double>>& matrix,
                             std::string name = "", bool perturbed = false,
                             bool squared = false);
  static Instance FromMatrix(DistanceMatrix matrix, std::string name = "",
                             bool perturbed = false, bool squared = false);

  const std::string& name() const { return name_; }
  std::size_t size() const { return dist_.size(); }
  const DistanceMatrix& distances() const { return dist_; }
  double distance(std::size_t i, std::size_t j) const { return dist_(i, j); }
  double metric_distance(std::size_t i, std::size_t j) const;

  bool has_points() const { return !points_.empty(); }
  const std::vector<Coordinates>& points() const { return points_; }
  std::size_t dimension() const {
    return points_.empty() ? 0 : points_.front().size();
  }

  SourceMetric source_metric() const { return source_metric_; }
  CenterPolicy center_policy() const { return center_policy_; }

  // Perturbed instances need not satisfy the triangle inequality and are
  // exempt from metric validation.
  bool perturbed() const { return perturbed_; }

  Instance WithName(std::string name) const;

 private:
  Instance() = default;

  std::string name_;
  DistanceMatrix dist_;
  std::vector<Coordinates> points_;
  SourceMetric source_metric_ = SourceMetric::kExplicitMatrix;
  CenterPolicy center_policy_ = CenterPolicy::kDataPoints;
  bool perturbed_ = false;
};

struct MetricViolation {
  enum class Kind {
    kNegative,
    kNonzeroDiagonal,
    kAsymmetric,
    kTriangle,
    kPointMismatch,
    kCenterPolicy,
  };
  Kind kind;
  // For kTriangle: dist[i][k] > dist[i][j] + dist[j][k] + tol.
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double excess = 0.0;
};

struct MetricReport {
  // At most kMaxRecorded violations are stored; `total` counts all of them.
  static constexpr std::size_t kMaxRecorded = 64;
  std::vector<MetricViolation> violations;
  std::size_t total = 0;

  bool ok() const { return total == 0; }
};

// Checks every Instance invariant. `tol` defaults to 1e-9 * (max entry).
// Triangle checks are skipped for squared-Euclidean sources, and the whole
// check is skipped for perturbed instances.
MetricReport ValidateMetric(const Instance& instance,
                            std::optional<double> tol = std::nullopt);

enum class PerturbationMode { kRandomUniform, kWithinClusterBlowup, kCustomMask };

struct PerturbationSpec {
  double alpha = 1.0;
  PerturbationMode mode = PerturbationMode::kRandomUniform;
  std::uint64_t seed = 0;
  // kWithinClusterBlowup: the cluster whose internal distances are scaled.
  std::vector<std::size_t> members;
  // kCustomMask: unordered pairs scaled by exactly alpha.
  std::vector<std::pair<std::size_t, std::size_t>> mask;
};

// Returns d' with d <= d' <= alpha * d entrywise and d' symmetric. The
// output carries no coordinates, is flagged perturbed, and uses data-point
// centers. kRandomUniform draws one factor u ~ U[1, alpha] per unordered
// pair (row-major order), so the output is a pure function of the seed.
Instance Perturb(const Instance& instance, const PerturbationSpec& spec);

// Scales every distance between two members by alpha; all other entries are
// untouched.
Instance BlowupWithinCluster(const Instance& instance,
                             std::span<const std::size_t> members,
                             double alpha);

// min { d(a, b) : a in a_set, b in b_set } over stored distances.
double DMin(const Instance& instance, std::span<const std::size_t> a_set,
            std::span<const std::size_t> b_set);

}  // namespace stablecluster

#endif  // STABLECLUSTER_METRIC_H_
