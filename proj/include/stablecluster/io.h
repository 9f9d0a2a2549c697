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

#ifndef STABLECLUSTER_IO_H_
#define STABLECLUSTER_IO_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stablecluster/linkage.h"
#include "stablecluster/metric.h"
#include "stablecluster/oracle.h"
#include "stablecluster/pruning.h"
#include "stablecluster/stability.h"

namespace stablecluster {

// Instance files:
//   {"name": s, "points": [[x, ...], ...],
//    "metric": "euclidean" | "sq_euclidean", "center_policy": "data" | "steiner"}
//   {"name": s, "matrix": [[d, ...], ...], "center_policy": "data"}
// Matrix files may also carry "metric": "sq_euclidean" (entries are squared
// distances) and "perturbed": true (skips metric validation).
// Malformed documents, non-square or asymmetric matrices throw ParseError.
Instance InstanceFromJson(const nlohmann::json& doc);
nlohmann::json InstanceToJson(const Instance& instance);
Instance LoadInstance(const std::filesystem::path& path);

// {"labels": [...], "centers": [int | [x, ...], ...], "cost": f, "k": int,
//  "objective": "kmedian" | "kmeans" | "kcenter"}
nlohmann::json ClusteringToJson(const Clustering& clustering);
Clustering ClusteringFromJson(const nlohmann::json& doc);
Clustering LoadClustering(const std::filesystem::path& path);

// Clustering JSON plus "unique", "near_tie" and "evaluated".
nlohmann::json OracleResultToJson(const OracleResult& result);

// [{"id", "kind": "leaf" | "merge", "children": [l, r], "height"}, ...]
nlohmann::json DendrogramToJson(const Dendrogram& tree);

nlohmann::json StabilityReportToJson(const StabilityReport& report);

// +inf is written as the string "inf" (JSON has no infinity).
nlohmann::json NumberToJson(double value);

// Set-system text format: first line "m u", then m lines of
// whitespace-separated element ids in [0, u).
struct SetSystem {
  std::vector<std::vector<std::size_t>> sets;
  std::size_t universe_size = 0;
};
SetSystem ParseSetSystem(std::istream& in);
SetSystem LoadSetSystem(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partial file.
void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& contents);

}  // namespace stablecluster

#endif  // STABLECLUSTER_IO_H_
