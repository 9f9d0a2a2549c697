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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "stablecluster/errors.h"
#include "stablecluster/random.h"

namespace stablecluster {
namespace {

double PointDistance(const Coordinates& a, const Coordinates& b,
                     SourceMetric metric) {
  double sum = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double diff = a[t] - b[t];
    sum += diff * diff;
  }
  return metric == SourceMetric::kSquaredEuclidean ? sum : std::sqrt(sum);
}

void Record(MetricReport& report, MetricViolation violation) {
  if (report.violations.size() < MetricReport::kMaxRecorded) {
    report.violations.push_back(violation);
  }
  ++report.total;
}

void CheckIndexSet(std::span<const std::size_t> set, std::size_t n,
                   const char* what) {
  if (set.empty()) {
    throw PreconditionError(std::string(what) + ": empty point set");
  }
  for (std::size_t i : set) {
    if (i >= n) {
      throw PreconditionError(std::string(what) + ": point index " +
                              std::to_string(i) + " out of range");
    }
  }
}

}  // namespace

double DistanceMatrix::MaxEntry() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, v);
  return best;
}

Instance Instance::FromPoints(std::vector<Coordinates> points,
                              SourceMetric metric, CenterPolicy policy,
                              std::string name) {
  if (points.size() < 2) {
    throw PreconditionError("at least two points are required");
  }
  if (points.size() > kMaxPoints) {
    throw PreconditionError("too many points: " +
                            std::to_string(points.size()));
  }
  if (metric == SourceMetric::kExplicitMatrix) {
    throw PreconditionError("points need a euclidean or squared metric");
  }
  if (policy == CenterPolicy::kSteinerCentroid &&
      metric != SourceMetric::kSquaredEuclidean) {
    throw PreconditionError(
        "steiner centroid centers require the squared euclidean metric");
  }
  const std::size_t dim = points.front().size();
  if (dim == 0) throw PreconditionError("points have dimension zero");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      throw PreconditionError("dimension mismatch at point " +
                              std::to_string(i));
    }
    for (double x : points[i]) {
      if (!std::isfinite(x)) {
        throw PreconditionError("non-finite coordinate at point " +
                                std::to_string(i));
      }
    }
  }

  Instance out;
  out.name_ = std::move(name);
  out.dist_ = DistanceMatrix(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      out.dist_.Set(i, j, PointDistance(points[i], points[j], metric));
    }
  }
  out.points_ = std::move(points);
  out.source_metric_ = metric;
  out.center_policy_ = policy;
  return out;
}

Instance Instance::FromMatrix(const std::vector<std::vector<double>>& matrix,
                              std::string name, bool perturbed,
                              bool squared) {
  const std::size_t n = matrix.size();
  if (n == 0) throw PreconditionError("empty distance matrix");
  DistanceMatrix dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw PreconditionError("distance matrix is not square (row " +
                              std::to_string(i) + ")");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) {
        throw PreconditionError("distance matrix is not symmetric at (" +
                                std::to_string(i) + ", " + std::to_string(j) +
                                ")");
      }
      dist.Set(i, j, matrix[i][j]);
    }
  }
  return FromMatrix(std::move(dist), std::move(name), perturbed, squared);
}

Instance Instance::FromMatrix(DistanceMatrix matrix, std::string name,
                              bool perturbed, bool squared) {
  const std::size_t n = matrix.size();
  if (n == 0) throw PreconditionError("empty distance matrix");
  if (n > kMaxPoints) {
    throw PreconditionError("too many points: " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix(i, i) != 0.0) {
      throw PreconditionError("nonzero diagonal entry at " +
                              std::to_string(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = matrix(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw PreconditionError("distance (" + std::to_string(i) + ", " +
                                std::to_string(j) +
                                ") is negative or not finite");
      }
      if (v != matrix(j, i)) {
        throw PreconditionError("distance matrix is not symmetric");
      }
    }
  }
  Instance out;
  out.name_ = std::move(name);
  out.dist_ = std::move(matrix);
  out.source_metric_ = squared ? SourceMetric::kSquaredEuclidean
                               : SourceMetric::kExplicitMatrix;
  out.perturbed_ = perturbed;
  return out;
}

double Instance::metric_distance(std::size_t i, std::size_t j) const {
  const double v = dist_(i, j);
  return source_metric_ == SourceMetric::kSquaredEuclidean ? std::sqrt(v) : v;
}

Instance Instance::WithName(std::string name) const {
  Instance out = *this;
  out.name_ = std::move(name);
  return out;
}

MetricReport ValidateMetric(const Instance& instance,
                            std::optional<double> tol) {
  MetricReport report;
  if (instance.perturbed()) return report;

  const DistanceMatrix& d = instance.distances();
  const std::size_t n = d.size();
  const double slack = tol.value_or(1e-9 * d.MaxEntry());

  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) {
      Record(report, {MetricViolation::Kind::kNonzeroDiagonal, i, i, i,
                      std::abs(d(i, i))});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) < 0.0) {
        Record(report, {MetricViolation::Kind::kNegative, i, j, j, -d(i, j)});
      }
      if (d(i, j) != d(j, i)) {
        Record(report, {MetricViolation::Kind::kAsymmetric, i, j, j,
                        std::abs(d(i, j) - d(j, i))});
      }
    }
  }

  if (instance.center_policy() == CenterPolicy::kSteinerCentroid &&
      (!instance.has_points() ||
       instance.source_metric() != SourceMetric::kSquaredEuclidean)) {
    Record(report, {MetricViolation::Kind::kCenterPolicy, 0, 0, 0, 0.0});
  }

  if (instance.has_points()) {
    const auto& pts = instance.points();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double expected =
            PointDistance(pts[i], pts[j], instance.source_metric());
        const double diff = std::abs(expected - d(i, j));
        if (diff > slack) {
          Record(report, {MetricViolation::Kind::kPointMismatch, i, j, j, diff});
        }
      }
    }
  }

  if (instance.source_metric() == SourceMetric::kSquaredEuclidean) {
    return report;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto row_i = d.Row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto row_j = d.Row(j);
      for (std::size_t k = i + 1; k < n; ++k) {
        if (k == j) continue;
        const double excess = row_i[k] - (row_i[j] + row_j[k]) - slack;
        if (excess > 0.0) {
          Record(report,
                 {MetricViolation::Kind::kTriangle, i, j, k, excess + slack});
        }
      }
    }
  }
  return report;
}

Instance Perturb(const Instance& instance, const PerturbationSpec& spec) {
  if (!(spec.alpha >= 1.0) || !std::isfinite(spec.alpha)) {
    throw PreconditionError("perturbation factor must be finite and >= 1");
  }
  const std::size_t n = instance.size();
  DistanceMatrix out = instance.distances();

  switch (spec.mode) {
    case PerturbationMode::kRandomUniform: {
      std::mt19937_64 rng(spec.seed);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          double factor = UniformIn(rng, 1.0, spec.alpha);
          factor = std::clamp(factor, 1.0, spec.alpha);
          out.Set(i, j, factor * instance.distance(i, j));
        }
      }
      break;
    }
    case PerturbationMode::kWithinClusterBlowup: {
      CheckIndexSet(spec.members, n, "within-cluster blowup");
      for (std::size_t a : spec.members) {
        for (std::size_t b : spec.members) {
          if (a < b) out.Set(a, b, spec.alpha * instance.distance(a, b));
        }
      }
      break;
    }
    case PerturbationMode::kCustomMask: {
      for (const auto& [a, b] : spec.mask) {
        if (a >= n || b >= n) {
          throw PreconditionError("perturbation mask index out of range");
        }
        if (a != b) out.Set(a, b, spec.alpha * instance.distance(a, b));
      }
      break;
    }
  }

  const bool squared =
      instance.source_metric() == SourceMetric::kSquaredEuclidean;
  return Instance::FromMatrix(std::move(out), instance.name() + "+perturbed",
                              /*perturbed=*/true, squared);
}

Instance BlowupWithinCluster(const Instance& instance,
                             std::span<const std::size_t> members,
                             double alpha) {
  PerturbationSpec spec;
  spec.alpha = alpha;
  spec.mode = PerturbationMode::kWithinClusterBlowup;
  spec.members.assign(members.begin(), members.end());
  return Perturb(instance, spec);
}

double DMin(const Instance& instance, std::span<const std::size_t> a_set,
            std::span<const std::size_t> b_set) {
  const std::size_t n = instance.size();
  CheckIndexSet(a_set, n, "d_min");
  CheckIndexSet(b_set, n, "d_min");
  std::vector<bool> in_a(n, false);
  for (std::size_t a : a_set) in_a[a] = true;
  for (std::size_t b : b_set) {
    if (in_a[b]) throw PreconditionError("d_min: point sets overlap");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a : a_set) {
    for (std::size_t b : b_set) best = std::min(best, instance.distance(a, b));
  }
  return best;
}

}  // namespace stablecluster
