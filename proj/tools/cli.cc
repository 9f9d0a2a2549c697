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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stablecluster/errors.h"
#include "stablecluster/generators.h"
#include "stablecluster/io.h"
#include "stablecluster/linkage.h"
#include "stablecluster/metric.h"
#include "stablecluster/oracle.h"
#include "stablecluster/pruning.h"
#include "stablecluster/random.h"
#include "stablecluster/stability.h"

namespace stablecluster::cli {
namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20100706;

struct Config {
  std::string instance_path;
  std::string clustering_path;
  std::string out_path;
  std::string objective = "kmedian";
  std::string centers;
  std::size_t k = 0;
  std::optional<double> alpha;
  std::size_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> exact_budget;
  std::size_t threads = 1;
  std::string format = "json";
  std::string method = "auto";
  std::string resolver = "oracle";
  bool no_oracle = false;
  std::string dendrogram_path;
  // perturb
  std::string mode = "uniform";
  std::vector<std::size_t> members;
  std::vector<std::string> pairs;
  // generate
  std::size_t size_big = 100;
  std::size_t size_small = 10;
  double eps = 0.01;
  std::size_t n = 9;
  double target = 3.0;
  std::size_t dimension = 2;
  std::string sets_path;
  // bench
  std::vector<std::size_t> sizes = {250, 500, 1000, 2000};
  std::vector<std::size_t> k_sweep;
  std::size_t reps = 3;
};

std::uint64_t EnumerationBudget(const Config& cfg) {
  if (cfg.budget) return *cfg.budget;
  if (const char* env = std::getenv("STABLECLUSTER_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw PreconditionError("STABLECLUSTER_BUDGET must be an integer");
    }
  }
  return kDefaultEnumerationBudget;
}

std::uint64_t SubsetBudget(const Config& cfg) {
  if (cfg.exact_budget) return *cfg.exact_budget;
  if (std::getenv("STABLECLUSTER_BUDGET")) return EnumerationBudget(cfg);
  return kDefaultSubsetBudget;
}

Objective ParseObjective(const Config& cfg) {
  const auto kind = ParseObjectiveKind(cfg.objective);
  if (!kind) throw PreconditionError("unknown objective " + cfg.objective);
  return Objective(*kind);
}

void RequireK(const Config& cfg) {
  if (cfg.k == 0) throw PreconditionError("--k is required and must be >= 1");
}

// Loads the instance, applies --centers and rejects explicit matrices that
// are not metrics.
Instance LoadCheckedInstance(const Config& cfg) {
  Instance instance = LoadInstance(cfg.instance_path);
  if (cfg.centers == "steiner" &&
      instance.center_policy() != CenterPolicy::kSteinerCentroid) {
    if (!instance.has_points() ||
        instance.source_metric() != SourceMetric::kSquaredEuclidean) {
      throw PreconditionError(
          "--centers steiner needs points with the sq_euclidean metric");
    }
    instance = Instance::FromPoints(instance.points(), instance.source_metric(),
                                    CenterPolicy::kSteinerCentroid,
                                    instance.name());
  } else if (cfg.centers == "data" &&
             instance.center_policy() != CenterPolicy::kDataPoints) {
    instance = Instance::FromPoints(instance.points(), instance.source_metric(),
                                    CenterPolicy::kDataPoints, instance.name());
  } else if (!cfg.centers.empty() && cfg.centers != "data" &&
             cfg.centers != "steiner") {
    throw PreconditionError("--centers must be data or steiner");
  }
  if (!instance.has_points() && !instance.perturbed()) {
    const MetricReport report = ValidateMetric(instance);
    if (!report.ok()) {
      const auto& v = report.violations.front();
      throw ParseError(cfg.instance_path + ": not a metric (" +
                       std::to_string(report.total) +
                       " violations, first at (" + std::to_string(v.i) + ", " +
                       std::to_string(v.j) + ", " + std::to_string(v.k) + "))");
    }
  }
  return instance;
}

void Emit(const Config& cfg, const std::string& contents, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << contents;
  } else {
    WriteFileAtomic(cfg.out_path, contents);
  }
}

std::string Dump(const json& doc) { return doc.dump(2) + "\n"; }

// Partition enumeration when it fits, otherwise center-set enumeration
// (data-point centers only).
std::optional<OracleResult> RunOracle(const Instance& instance,
                                      const Objective& objective,
                                      std::size_t k, const std::string& method,
                                      std::uint64_t budget, bool required) {
  const std::size_t n = instance.size();
  if (method == "partitions") {
    return OptimalClusteringBruteForce(instance, objective, k, budget);
  }
  if (method == "centers") {
    return OptimalClusteringByCenters(instance, objective, k, budget);
  }
  if (method != "auto") {
    throw PreconditionError("--method must be auto, partitions or centers");
  }
  if (k >= 1 && k <= n && StirlingSecond(n, k) <= budget) {
    return OptimalClusteringBruteForce(instance, objective, k, budget);
  }
  if (instance.center_policy() == CenterPolicy::kDataPoints && k >= 1 &&
      k <= n && Binomial(n, k) <= budget) {
    return OptimalClusteringByCenters(instance, objective, k, budget);
  }
  if (!required) return std::nullopt;
  return OptimalClusteringBruteForce(instance, objective, k, budget);
}

int CmdSolve(const Config& cfg, std::ostream& out) {
  RequireK(cfg);
  const Objective objective = ParseObjective(cfg);
  const Instance instance = LoadCheckedInstance(cfg);
  if (cfg.k > instance.size()) {
    throw PreconditionError("k = " + std::to_string(cfg.k) + " exceeds n = " +
                            std::to_string(instance.size()));
  }
  const Dendrogram tree = SingleLinkageTree(instance);
  const Clustering clustering = BestKPruning(tree, instance, objective, cfg.k);
  if (!cfg.dendrogram_path.empty()) {
    WriteFileAtomic(cfg.dendrogram_path, Dump(DendrogramToJson(tree)));
  }
  Emit(cfg, Dump(ClusteringToJson(clustering)), out);
  return kOk;
}

int CmdOracle(const Config& cfg, std::ostream& out) {
  RequireK(cfg);
  const Objective objective = ParseObjective(cfg);
  const Instance instance = LoadCheckedInstance(cfg);
  const auto result = RunOracle(instance, objective, cfg.k, cfg.method,
                                EnumerationBudget(cfg), /*required=*/true);
  Emit(cfg, Dump(OracleResultToJson(*result)), out);
  return kOk;
}

int CmdCheck(const Config& cfg, std::ostream& out) {
  const Instance instance = LoadCheckedInstance(cfg);
  if (cfg.clustering_path.empty()) {
    throw PreconditionError("--clustering is required");
  }
  const Clustering clustering = LoadClustering(cfg.clustering_path);
  if (clustering.labels.size() != instance.size()) {
    throw PreconditionError("clustering does not match the instance");
  }
  if (cfg.alpha && !(*cfg.alpha >= 1.0)) {
    throw PreconditionError("--alpha must be at least 1");
  }
  StabilityOptions options;
  options.alpha = cfg.alpha;
  options.exact_budget = SubsetBudget(cfg);
  if (cfg.trials > 0) {
    ProbeOptions probe;
    probe.trials = cfg.trials;
    probe.seed = cfg.seed;
    probe.threads = cfg.threads;
    probe.budget = EnumerationBudget(cfg);
    if (cfg.resolver == "solve") {
      probe.resolver = Resolver::kSolve;
    } else if (cfg.resolver != "oracle") {
      throw PreconditionError("--resolver must be oracle or solve");
    }
    options.probe = probe;
  }
  const StabilityReport report = AnalyzeStability(instance, clustering, options);
  Emit(cfg, Dump(StabilityReportToJson(report)), out);
  return kOk;
}

std::pair<std::size_t, std::size_t> ParsePair(const std::string& text) {
  const auto dash = text.find('-');
  if (dash == std::string::npos) {
    throw PreconditionError("pairs are written i-j, got " + text);
  }
  try {
    return {std::stoul(text.substr(0, dash)), std::stoul(text.substr(dash + 1))};
  } catch (const std::exception&) {
    throw PreconditionError("pairs are written i-j, got " + text);
  }
}

int CmdPerturb(const Config& cfg, std::ostream& out) {
  if (!cfg.alpha) throw PreconditionError("--alpha is required");
  const Instance instance = LoadCheckedInstance(cfg);
  PerturbationSpec spec;
  spec.alpha = *cfg.alpha;
  spec.seed = cfg.seed;
  if (cfg.mode == "uniform") {
    spec.mode = PerturbationMode::kRandomUniform;
  } else if (cfg.mode == "blowup") {
    spec.mode = PerturbationMode::kWithinClusterBlowup;
    spec.members = cfg.members;
  } else if (cfg.mode == "mask") {
    spec.mode = PerturbationMode::kCustomMask;
    for (const auto& p : cfg.pairs) spec.mask.push_back(ParsePair(p));
  } else {
    throw PreconditionError("--mode must be uniform, blowup or mask");
  }
  Emit(cfg, Dump(InstanceToJson(Perturb(instance, spec))), out);
  return kOk;
}

int CmdGenerate(const std::string& kind, const Config& cfg, std::ostream& out) {
  Instance instance = [&]() {
    if (kind == "fig2") return GenerateFig2();
    if (kind == "fig3") {
      return GenerateFig3({cfg.size_big, cfg.size_small, cfg.eps});
    }
    if (kind == "resilient") {
      RequireK(cfg);
      ResilientParams params;
      params.n = cfg.n;
      params.k = cfg.k;
      params.target_factor = cfg.target;
      params.seed = cfg.seed;
      params.dimension = cfg.dimension;
      if (cfg.centers == "steiner") {
        params.policy = CenterPolicy::kSteinerCentroid;
      } else if (!cfg.centers.empty() && cfg.centers != "data") {
        throw PreconditionError("--centers must be data or steiner");
      }
      return GenerateResilient(params).instance;
    }
    if (kind == "coverage") {
      if (cfg.sets_path.empty()) throw PreconditionError("--sets is required");
      RequireK(cfg);
      const SetSystem system = LoadSetSystem(cfg.sets_path);
      return GenerateCoverageReduction(system.sets, system.universe_size,
                                       cfg.k);
    }
    throw PreconditionError("unknown generator " + kind);
  }();
  Emit(cfg, Dump(InstanceToJson(instance)), out);
  return kOk;
}

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

int CmdCompare(const Config& cfg, std::ostream& out) {
  RequireK(cfg);
  const Objective objective = ParseObjective(cfg);
  const Instance instance = LoadCheckedInstance(cfg);
  if (cfg.k > instance.size()) {
    throw PreconditionError("k exceeds the number of points");
  }
  const Dendrogram tree = SingleLinkageTree(instance);
  const Clustering tree_dp = BestKPruning(tree, instance, objective, cfg.k);
  const Clustering naive = MakeClustering(
      instance, NaiveSingleLinkageAtK(tree, cfg.k), objective);
  std::optional<OracleResult> oracle;
  if (!cfg.no_oracle) {
    oracle = RunOracle(instance, objective, cfg.k, cfg.method,
                       EnumerationBudget(cfg), /*required=*/true);
  }

  struct Row {
    std::string method;
    const Clustering* clustering;
  };
  std::vector<Row> rows = {{"tree-dp", &tree_dp},
                           {"single-linkage-at-k", &naive}};
  if (oracle) rows.push_back({"oracle", &oracle->clustering});

  if (cfg.format == "tsv") {
    std::ostringstream s;
    s << "method\tcost\tequals_oracle\n";
    for (const auto& row : rows) {
      s << row.method << '\t' << FormatNumber(row.clustering->total_cost)
        << '\t';
      if (oracle) {
        s << (row.clustering->labels == oracle->clustering.labels ? "yes"
                                                                   : "no");
      } else {
        s << "n/a";
      }
      s << '\n';
    }
    Emit(cfg, s.str(), out);
  } else if (cfg.format == "json") {
    json doc;
    doc["instance"] = instance.name();
    doc["k"] = cfg.k;
    doc["objective"] = std::string(objective.name());
    doc["rows"] = json::array();
    for (const auto& row : rows) {
      json entry;
      entry["method"] = row.method;
      entry["cost"] = NumberToJson(row.clustering->total_cost);
      entry["labels"] = row.clustering->labels;
      if (oracle) {
        entry["equals_oracle"] =
            row.clustering->labels == oracle->clustering.labels;
      } else {
        entry["equals_oracle"] = nullptr;
      }
      doc["rows"].push_back(std::move(entry));
    }
    Emit(cfg, Dump(doc), out);
  } else {
    throw PreconditionError("--format must be json or tsv");
  }
  return kOk;
}

int CmdBench(const Config& cfg, std::ostream& out) {
  const Objective objective = ParseObjective(cfg);
  if (cfg.sizes.empty()) throw PreconditionError("--sizes is empty");
  if (cfg.reps == 0) throw PreconditionError("--reps must be >= 1");
  const std::size_t k = cfg.k == 0 ? 10 : cfg.k;
  for (std::size_t n : cfg.sizes) {
    if (n < k || n > kMaxPoints) {
      throw PreconditionError("bench size " + std::to_string(n) +
                              " is out of range for k = " + std::to_string(k));
    }
  }
  const BenchResult scaling =
      RunScalingBench(cfg.sizes, {k}, objective.kind(), cfg.reps, cfg.seed);
  std::optional<BenchResult> sweep;
  if (!cfg.k_sweep.empty()) {
    sweep = RunScalingBench({cfg.sizes.back()}, cfg.k_sweep, objective.kind(),
                            cfg.reps, cfg.seed);
  }

  if (cfg.format == "tsv") {
    std::ostringstream s;
    s << "n\tk\tseconds\n";
    for (const auto& row : scaling.rows) {
      s << row.n << '\t' << row.k << '\t' << FormatNumber(row.seconds) << '\n';
    }
    if (sweep) {
      for (const auto& row : sweep->rows) {
        s << row.n << '\t' << row.k << '\t' << FormatNumber(row.seconds)
          << '\n';
      }
    }
    if (scaling.has_exponent) {
      s << "# exponent\t" << FormatNumber(scaling.exponent) << '\n';
    }
    Emit(cfg, s.str(), out);
  } else if (cfg.format == "json") {
    auto rows_json = [](const BenchResult& r) {
      json rows = json::array();
      for (const auto& row : r.rows) {
        rows.push_back({{"n", row.n}, {"k", row.k}, {"seconds", row.seconds}});
      }
      return rows;
    };
    json doc;
    doc["objective"] = std::string(objective.name());
    doc["rows"] = rows_json(scaling);
    doc["exponent"] =
        scaling.has_exponent ? json(scaling.exponent) : json(nullptr);
    if (sweep) doc["k_sweep"] = rows_json(*sweep);
    Emit(cfg, Dump(doc), out);
  } else {
    throw PreconditionError("--format must be json or tsv");
  }
  return kOk;
}

}  // namespace

double FitLogLogSlope(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const std::size_t m = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

BenchResult RunScalingBench(const std::vector<std::size_t>& sizes,
                            const std::vector<std::size_t>& ks,
                            ObjectiveKind kind, std::size_t repetitions,
                            std::uint64_t seed) {
  BenchResult result;
  const Objective objective(kind);
  for (std::size_t n : sizes) {
    std::mt19937_64 rng(DeriveSeed(seed, n));
    std::vector<Coordinates> points(n, Coordinates(2));
    for (auto& p : points) {
      for (double& x : p) x = UniformUnit(rng);
    }
    const Instance instance = Instance::FromPoints(
        std::move(points), kind == ObjectiveKind::kMeans
                               ? SourceMetric::kSquaredEuclidean
                               : SourceMetric::kEuclidean);
    for (std::size_t k : ks) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < repetitions; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const Clustering c = Solve(instance, objective, k);
        const auto stop = std::chrono::steady_clock::now();
        if (c.k != k) throw std::logic_error("solve returned the wrong k");
        best = std::min(best,
                        std::chrono::duration<double>(stop - start).count());
      }
      result.rows.push_back({n, k, best});
    }
  }
  std::vector<double> xs, ys;
  for (const auto& row : result.rows) {
    xs.push_back(static_cast<double>(row.n));
    ys.push_back(row.seconds);
  }
  const bool distinct =
      std::adjacent_find(sizes.begin(), sizes.end(),
                         std::not_equal_to<>()) != sizes.end();
  if (distinct && ks.size() == 1) {
    result.has_exponent = true;
    result.exponent = FitLogLogSlope(xs, ys);
  }
  return result;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Exact center-based clustering of perturbation-stable instances",
               "stablecluster"};
  app.require_subcommand(1);
  Config cfg;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--instance", cfg.instance_path, "Instance JSON file")
        ->required();
  };
  auto add_objective = [&](CLI::App* sub) {
    sub->add_option("--objective", cfg.objective, "kmedian | kmeans | kcenter");
    sub->add_option("--centers", cfg.centers, "data | steiner");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Output file (default: stdout)");
    sub->add_option("--budget", cfg.budget, "Enumeration budget");
    sub->add_option("--threads", cfg.threads, "Worker threads");
    sub->add_option("--seed", cfg.seed, "Random seed");
  };

  auto* solve = app.add_subcommand("solve", "Single-linkage tree + best k-pruning");
  add_instance(solve);
  add_objective(solve);
  add_common(solve);
  solve->add_option("--k", cfg.k)->required();
  solve->add_option("--dendrogram", cfg.dendrogram_path, "Dump the merge tree");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimal clustering");
  add_instance(oracle);
  add_objective(oracle);
  add_common(oracle);
  oracle->add_option("--k", cfg.k)->required();
  oracle->add_option("--method", cfg.method, "auto | partitions | centers");

  auto* check = app.add_subcommand("check", "Stability report for a clustering");
  add_instance(check);
  add_common(check);
  check->add_option("--clustering", cfg.clustering_path)->required();
  check->add_option("--alpha", cfg.alpha);
  check->add_option("--exact-budget", cfg.exact_budget);
  check->add_option("--trials", cfg.trials, "Perturbation probe trials");
  check->add_option("--resolver", cfg.resolver, "oracle | solve");

  auto* perturb = app.add_subcommand("perturb", "Write an alpha-perturbation");
  add_instance(perturb);
  add_common(perturb);
  perturb->add_option("--alpha", cfg.alpha)->required();
  perturb->add_option("--mode", cfg.mode, "uniform | blowup | mask");
  perturb->add_option("--members", cfg.members, "Blowup members")
      ->delimiter(',');
  perturb->add_option("--pairs", cfg.pairs, "Mask pairs i-j")->delimiter(',');

  auto* generate = app.add_subcommand("generate", "Write a generated instance");
  std::string generator;
  generate->add_option("kind", generator, "fig2 | fig3 | resilient | coverage")
      ->required();
  add_common(generate);
  generate->add_option("--size-big", cfg.size_big);
  generate->add_option("--size-small", cfg.size_small);
  generate->add_option("--eps", cfg.eps);
  generate->add_option("--n", cfg.n);
  generate->add_option("--k", cfg.k);
  generate->add_option("--target", cfg.target);
  generate->add_option("--centers", cfg.centers, "data | steiner");
  generate->add_option("--dimension", cfg.dimension);
  generate->add_option("--sets", cfg.sets_path, "Set-system file");

  auto* compare = app.add_subcommand(
      "compare", "Tree DP vs single linkage halted at k vs oracle");
  add_instance(compare);
  add_objective(compare);
  add_common(compare);
  compare->add_option("--k", cfg.k)->required();
  compare->add_flag("--no-oracle", cfg.no_oracle);
  compare->add_option("--method", cfg.method, "Oracle method");
  compare->add_option("--format", cfg.format, "json | tsv");

  auto* bench = app.add_subcommand("bench", "Time solve over a sweep of n");
  add_common(bench);
  bench->add_option("--objective", cfg.objective);
  bench->add_option("--k", cfg.k, "Clusters (default 10)");
  bench->add_option("--sizes", cfg.sizes)->delimiter(',');
  bench->add_option("--k-sweep", cfg.k_sweep, "k values at the largest n")
      ->delimiter(',');
  bench->add_option("--reps", cfg.reps);
  bench->add_option("--format", cfg.format, "json | tsv");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }

  try {
    if (cfg.threads == 0) throw PreconditionError("--threads must be >= 1");
    if (solve->parsed()) return CmdSolve(cfg, out);
    if (oracle->parsed()) return CmdOracle(cfg, out);
    if (check->parsed()) return CmdCheck(cfg, out);
    if (perturb->parsed()) return CmdPerturb(cfg, out);
    if (generate->parsed()) return CmdGenerate(generator, cfg, out);
    if (compare->parsed()) return CmdCompare(cfg, out);
    if (bench->parsed()) return CmdBench(cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kPreconditionError;
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  }
  return kPreconditionError;
}

}  // namespace stablecluster::cli
