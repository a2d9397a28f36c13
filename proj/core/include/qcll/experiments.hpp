// Copyright 2026 The qcll Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/**
 * @file
 * Experiment runners: synthetic regression sweeps, the two-class task,
 * benchmark files with feature pairs and training fractions, and the
 * coverage study comparing random circuits with fitted sketched models.
 *
 * Every random draw is keyed by derive_seed(master_seed, {...}) on the
 * identity of the work item, so results do not depend on the worker count
 * or on scheduling.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcll/data.hpp"
#include "qcll/learner.hpp"

namespace qcll::experiments {

/// Runs body(i) for i in [0, count) on up to `workers` threads. The first
/// exception (by index) is rethrown after all items finish.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body);

/// Metadata columns of the results table, in output order.
const std::vector<std::string>& metadata_columns();

struct MetricReport {
  std::map<std::string, std::string> metadata;  // keys from metadata_columns()
  std::string metric;
  std::vector<double> values;  // one per seed / repetition / feature pair
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation

  /// Builds a report and computes mean and stddev from `values`. NaN
  /// values are kept in `values` but excluded from the statistics.
  static MetricReport make(std::map<std::string, std::string> metadata, std::string metric,
                           std::vector<double> values);
  std::string get(const std::string& key) const;
};

/// Header plus one row per report; per-item values are ';'-joined.
void write_results_csv(const std::vector<MetricReport>& reports, std::ostream& out);
nlohmann::json reports_to_json(const std::vector<MetricReport>& reports);

/// Reports whose metadata matches every given key/value.
std::vector<MetricReport> select(const std::vector<MetricReport>& reports,
                                 const std::map<std::string, std::string>& where);

struct RegressionSuiteConfig {
  std::string name = "regression";
  std::vector<data::TargetFunction> functions = {data::TargetFunction::kSquare, data::TargetFunction::kExp,
                                                 data::TargetFunction::kSin, data::TargetFunction::kAbs};
  std::vector<ModelKind> models = {ModelKind::kQcl, ModelKind::kQcll, ModelKind::kBaseline};
  std::vector<std::size_t> sample_sizes = {100};
  std::vector<double> noise_levels = {0.0};
  std::size_t seeds = 10;
  std::size_t grid_size = 201;
  LearnerSettings learner;  // Q_d = 6, M = 6, K' = 100 by default
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;

  /// Four functions at N = 100 without noise.
  static RegressionSuiteConfig regression();
  /// f = x^2, N = 10, 20, ..., 100 without noise.
  static RegressionSuiteConfig samplesize();
  /// f = x^2, N = 100, sigma = 0.00, 0.05, ..., 0.45.
  static RegressionSuiteConfig noise();
  void validate() const;
};

/// Per (function, model, N, sigma): metrics "rmse" (against f on an equally
/// spaced grid over [-1, 1]), "train_mse", and for trained models "init_mse"
/// (training MSE at initialization, averaged over restarts).
std::vector<MetricReport> run_regression_suite(const RegressionSuiteConfig& config);

struct ClassificationSuiteConfig {
  std::vector<ModelKind> models = {ModelKind::kQcl, ModelKind::kQcll, ModelKind::kBaseline};
  std::size_t n_per_class = 100;
  std::size_t seeds = 10;
  LearnerSettings learner;  // Q_d = 3, M = 3 by default
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;

  ClassificationSuiteConfig();
  void validate() const;
};

/// Per model: "train_accuracy", "test_accuracy" (fresh sample of the same
/// size) and "train_loss".
std::vector<MetricReport> run_classification_suite(const ClassificationSuiteConfig& config);

struct BenchmarkDataset {
  std::string name;
  std::string path;
  data::ColumnRef target;
  data::TaskKind kind = data::TaskKind::kRegression;
};

struct BenchmarkSuiteConfig {
  std::vector<BenchmarkDataset> datasets;
  std::vector<ModelKind> models = {ModelKind::kQcl, ModelKind::kQcll, ModelKind::kBaseline};
  std::vector<double> r_percent = {10, 20, 30, 40, 50, 75, 100};
  double test_fraction = 0.2;
  LearnerSettings learner;  // Q_d = 3, M = 6, scaled features and targets
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;

  BenchmarkSuiteConfig();
  void validate() const;
};

/// Per (dataset, model, r): "test_rmse" (regression, target units) or
/// "test_error" (classification), one value per feature pair.
std::vector<MetricReport> run_benchmark_suite(const BenchmarkSuiteConfig& config);

struct CoverageConfig {
  std::size_t qubits = 6;
  std::vector<std::size_t> depths = {1, 2, 3, 4, 5, 6};  // parameter count = qubits * depth
  std::vector<double> thresholds = {0.90, 0.95, 0.99};
  std::size_t repetitions = 100;
  std::size_t grid_size = 100;
  LearnerSettings learner;  // settings for the sketched fit
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;

  void validate() const;
};

/// Per depth: "rho" (Pearson correlation per repetition, NaN when a fit is
/// constant) and, per threshold, "coverage" whose values are 0/1
/// indicators of rho > threshold.
std::vector<MetricReport> run_coverage(const CoverageConfig& config);

/// The circuit target of one coverage repetition on `grid`.
std::vector<double> coverage_target(const CoverageConfig& config, std::size_t depth, std::size_t repetition,
                                    const std::vector<double>& grid);

}  // namespace qcll::experiments
