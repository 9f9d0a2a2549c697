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

#include "stablecluster/io.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "stablecluster/errors.h"

namespace stablecluster {
namespace {

using nlohmann::json;

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<std::vector<double>> ReadRows(const json& rows, const char* key) {
  if (!rows.is_array() || rows.empty()) {
    throw ParseError(std::string("\"") + key + "\" must be a non-empty array");
  }
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const json& row : rows) {
    if (!row.is_array()) {
      throw ParseError(std::string("\"") + key + "\" rows must be arrays");
    }
    std::vector<double> values;
    values.reserve(row.size());
    for (const json& v : row) {
      if (!v.is_number()) {
        throw ParseError(std::string("\"") + key + "\" entries must be numbers");
      }
      values.push_back(v.get<double>());
    }
    out.push_back(std::move(values));
  }
  return out;
}

double NumberFromJson(const json& v) {
  if (v.is_string() && v.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  if (!v.is_number()) throw ParseError("expected a number");
  return v.get<double>();
}

}  // namespace

json NumberToJson(double value) {
  if (std::isinf(value) && value > 0) return "inf";
  return value;
}

Instance InstanceFromJson(const json& doc) {
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  const std::string name = doc.value("name", "");
  const std::string policy = doc.value("center_policy", "data");
  if (policy != "data" && policy != "steiner") {
    throw ParseError("center_policy must be \"data\" or \"steiner\"");
  }
  const bool has_points = doc.contains("points");
  const bool has_matrix = doc.contains("matrix");
  if (has_points == has_matrix) {
    throw ParseError("instance needs exactly one of \"points\" or \"matrix\"");
  }
  try {
    if (has_points) {
      const std::string metric = doc.value("metric", "euclidean");
      SourceMetric source;
      if (metric == "euclidean") {
        source = SourceMetric::kEuclidean;
      } else if (metric == "sq_euclidean") {
        source = SourceMetric::kSquaredEuclidean;
      } else {
        throw ParseError("metric must be \"euclidean\" or \"sq_euclidean\"");
      }
      return Instance::FromPoints(
          ReadRows(doc["points"], "points"), source,
          policy == "steiner" ? CenterPolicy::kSteinerCentroid
                              : CenterPolicy::kDataPoints,
          name);
    }
    if (policy != "data") {
      throw ParseError("matrix instances only support data-point centers");
    }
    const std::string metric = doc.value("metric", "explicit");
    if (metric != "explicit" && metric != "sq_euclidean") {
      throw ParseError("matrix metric must be \"explicit\" or \"sq_euclidean\"");
    }
    return Instance::FromMatrix(ReadRows(doc["matrix"], "matrix"), name,
                                doc.value("perturbed", false),
                                metric == "sq_euclidean");
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

json InstanceToJson(const Instance& instance) {
  json doc;
  doc["name"] = instance.name();
  if (instance.has_points()) {
    doc["points"] = instance.points();
    doc["metric"] = instance.source_metric() == SourceMetric::kSquaredEuclidean
                        ? "sq_euclidean"
                        : "euclidean";
    doc["center_policy"] =
        instance.center_policy() == CenterPolicy::kSteinerCentroid ? "steiner"
                                                                    : "data";
    return doc;
  }
  const std::size_t n = instance.size();
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = instance.distances().Row(i);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  doc["matrix"] = std::move(rows);
  doc["center_policy"] = "data";
  if (instance.source_metric() == SourceMetric::kSquaredEuclidean) {
    doc["metric"] = "sq_euclidean";
  }
  if (instance.perturbed()) doc["perturbed"] = true;
  return doc;
}

Instance LoadInstance(const std::filesystem::path& path) {
  try {
    return InstanceFromJson(ReadJsonFile(path));
  } catch (const ParseError& e) {
    const std::string what = e.what();
    if (what.rfind(path.string(), 0) == 0) throw;
    throw ParseError(path.string() + ": " + what);
  }
}

json ClusteringToJson(const Clustering& clustering) {
  json centers = json::array();
  for (const Center& c : clustering.centers) {
    if (const auto* index = std::get_if<std::size_t>(&c)) {
      centers.push_back(*index);
    } else {
      centers.push_back(std::get<Coordinates>(c));
    }
  }
  json doc;
  doc["labels"] = clustering.labels;
  doc["centers"] = std::move(centers);
  doc["cost"] = NumberToJson(clustering.total_cost);
  doc["k"] = clustering.k;
  doc["objective"] = std::string(clustering.objective.name());
  return doc;
}

Clustering ClusteringFromJson(const json& doc) {
  try {
    Clustering out;
    const auto kind = ParseObjectiveKind(doc.at("objective").get<std::string>());
    if (!kind) throw ParseError("unknown objective");
    out.objective = Objective(*kind);
    out.labels = doc.at("labels").get<std::vector<std::size_t>>();
    out.k = doc.at("k").get<std::size_t>();
    out.total_cost = NumberFromJson(doc.at("cost"));
    for (const json& c : doc.at("centers")) {
      if (c.is_array()) {
        out.centers.emplace_back(c.get<Coordinates>());
      } else {
        out.centers.emplace_back(c.get<std::size_t>());
      }
    }
    if (out.centers.size() != out.k) {
      throw ParseError("clustering needs exactly k centers");
    }
    for (std::size_t l : out.labels) {
      if (l >= out.k) throw ParseError("label out of range [0, k)");
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed clustering: ") + e.what());
  }
}

Clustering LoadClustering(const std::filesystem::path& path) {
  return ClusteringFromJson(ReadJsonFile(path));
}

json OracleResultToJson(const OracleResult& result) {
  json doc = ClusteringToJson(result.clustering);
  doc["unique"] = result.unique;
  doc["near_tie"] = result.near_tie;
  doc["evaluated"] = result.evaluated;
  return doc;
}

json DendrogramToJson(const Dendrogram& tree) {
  json out = json::array();
  for (std::size_t id = 0; id < tree.num_nodes(); ++id) {
    const auto& node = tree.node(id);
    json entry;
    entry["id"] = id;
    if (node.is_leaf()) {
      entry["kind"] = "leaf";
      entry["children"] = json::array();
      entry["point"] = id;
    } else {
      entry["kind"] = "merge";
      entry["children"] = {node.left, node.right};
    }
    entry["height"] = node.height;
    out.push_back(std::move(entry));
  }
  return out;
}

json StabilityReportToJson(const StabilityReport& report) {
  json doc;
  doc["proximity_factor"] = NumberToJson(report.proximity_factor);
  doc["min_stable"] = report.min_stability.stable;
  doc["min_stability_ties"] = report.min_stability.has_ties;
  doc["subsets_evaluated"] = report.min_stability.subsets_evaluated;
  doc["tree_laminar"] = report.tree_laminar;
  doc["corollary_margin"] = NumberToJson(report.corollary_margin);
  if (const auto& w = report.min_stability.witness) {
    doc["witness"] = {{"cluster", w->cluster},
                      {"subset", w->subset},
                      {"other_cluster", w->other_cluster},
                      {"pair", {w->inside_point, w->outside_point}},
                      {"inner_dmin", w->inner_dmin},
                      {"outer_dmin", w->outer_dmin}};
  } else {
    doc["witness"] = nullptr;
  }
  if (report.separation) {
    json sep;
    sep["holds"] = report.separation->holds;
    sep["margin"] = NumberToJson(report.separation->margin);
    if (report.separation->worst_pair) {
      sep["worst_pair"] = {report.separation->worst_pair->first,
                           report.separation->worst_pair->second};
    }
    doc["separation"] = std::move(sep);
  }
  if (report.probe) {
    doc["probe"] = {{"trials", report.probe->trials},
                    {"alpha", report.probe->alpha},
                    {"failures", report.probe->failures},
                    {"failing_seeds", report.probe->failing_seeds},
                    {"method", "necessary-condition sampling"}};
  }
  return doc;
}

SetSystem ParseSetSystem(std::istream& in) {
  SetSystem out;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("set system: missing header");
  std::istringstream header(line);
  std::size_t m = 0;
  if (!(header >> m >> out.universe_size)) {
    throw ParseError("set system: header must be \"m u\"");
  }
  for (std::size_t s = 0; s < m; ++s) {
    if (!std::getline(in, line)) {
      throw ParseError("set system: expected " + std::to_string(m) +
                       " set lines");
    }
    std::istringstream row(line);
    std::vector<std::size_t> set;
    std::string token;
    while (row >> token) {
      std::size_t pos = 0;
      std::size_t id = 0;
      try {
        id = std::stoul(token, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != token.size() || token.front() == '-') {
        throw ParseError("set system: bad element id \"" + token + "\"");
      }
      set.push_back(id);
    }
    out.sets.push_back(std::move(set));
  }
  return out;
}

SetSystem LoadSetSystem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return ParseSetSystem(in);
}

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ParseError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ParseError("cannot rename to " + path.string() + ": " + ec.message());
  }
}

}  // namespace stablecluster
