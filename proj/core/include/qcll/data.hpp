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
 * Datasets: synthetic regression and classification generators, a CSV
 * loader/saver, min-max feature scaling into [-1, 1], random splits and
 * feature-pair views.
 */

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qcll/random.hpp"

namespace qcll::data {

enum class TaskKind { kRegression, kClassification };

std::string to_string(TaskKind kind);
/// "regression" or "classification"; throws std::invalid_argument otherwise.
TaskKind parse_task_kind(const std::string& name);

/// Rows of X are samples. Classification targets are 0-based class indices
/// stored as doubles, with the original label text in class_names.
struct Dataset {
  Eigen::MatrixXd X;
  std::vector<double> y;
  std::vector<std::string> feature_names;
  std::string target_name = "y";
  TaskKind kind = TaskKind::kRegression;
  std::vector<std::string> class_names;

  std::size_t size() const noexcept { return y.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(X.cols()); }
  std::size_t num_classes() const noexcept { return class_names.size(); }

  /// Throws std::invalid_argument on shape mismatches, NaN entries, an
  /// empty set, or class indices outside class_names.
  void validate() const;
  /// The rows listed in `rows`, in that order.
  Dataset rows(const std::vector<std::size_t>& rows) const;
};

enum class TargetFunction { kSquare, kExp, kSin, kAbs };

/// Tags: "x2", "exp", "sin", "abs". Throws std::invalid_argument otherwise.
TargetFunction parse_target_function(const std::string& tag);
std::string to_string(TargetFunction fn);
double evaluate(TargetFunction fn, double x) noexcept;

/// x ~ U[-1, 1], y = f(x) + N(0, sigma^2). Throws on n == 0 or sigma < 0.
Dataset gen_regression(TargetFunction fn, std::size_t n, double sigma, Rng& rng);

/// Inner disk radius and outer-region inner radius of the two-class task.
inline constexpr double kInnerRadius = 0.55;
inline constexpr double kOuterRadius = 0.65;

/// Two classes in [-1, 1]^2, n_per_class each: class 0 uniform over the
/// square minus the disk of radius kOuterRadius, class 1 uniform over the
/// disk of radius kInnerRadius.
Dataset gen_classification(std::size_t n_per_class, Rng& rng);

/// Target column by header name or 0-based index.
using ColumnRef = std::variant<std::size_t, std::string>;

/// Comma-separated file with one header row. Feature cells must be numeric;
/// classification labels may be any text and are indexed by first
/// appearance. Throws std::runtime_error naming the file, row and column.
Dataset load_delimited(const std::filesystem::path& path, const ColumnRef& target, TaskKind kind);
/// Writes features then the target as the last column. Doubles are written
/// in shortest round-trip form, so load(save(ds)) is bit-exact.
void save_delimited(const Dataset& ds, const std::filesystem::path& path);

struct ScalingStats {
  std::vector<double> min;
  std::vector<double> max;

  /// Maps min to -1 and max to +1, clamping to [-1, 1]; constant features map to 0.
  double apply(std::size_t feature, double v) const;
  friend bool operator==(const ScalingStats&, const ScalingStats&) = default;
};

ScalingStats fit_scaling(const Eigen::MatrixXd& X);
std::pair<Dataset, ScalingStats> minmax_scale(const Dataset& train);
Dataset apply_scale(const ScalingStats& stats, const Dataset& other);
Eigen::MatrixXd apply_scale(const ScalingStats& stats, const Eigen::MatrixXd& X);

/// round(N * test_fraction) rows go to the test part. Both parts keep the
/// original row order. Throws std::invalid_argument when N < 5 or the
/// fraction is outside (0, 1).
std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction, Rng& rng);

/// A random subset of max(1, round(N * fraction)) rows in original order.
Dataset subsample(const Dataset& ds, double fraction, Rng& rng);

struct FeaturePair {
  std::size_t first;
  std::size_t second;
  Dataset data;
};

/// All C(D, 2) two-feature views in lexicographic order. Throws when D < 2.
std::vector<FeaturePair> feature_pairs(const Dataset& ds);
/// Column indices of the feature pairs without materializing the views.
std::vector<std::pair<std::size_t, std::size_t>> feature_pair_indices(std::size_t dim);
Dataset select_features(const Dataset& ds, const std::vector<std::size_t>& columns);

/// n equally spaced points on [lo, hi] (n == 1 gives lo).
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace qcll::data
