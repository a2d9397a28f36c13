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
 * One entry point for fitting and applying the three model families
 * (statevector circuit, sketched circuit-like model, polynomial OLS) to a
 * dataset, including the choice of observables and optional scaling.
 *
 * Observables: output c of C heads reads the diagonal block [5c, 5c + 5)
 * (narrowed when the space is too small). Regression uses one head.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcll/baseline.hpp"
#include "qcll/data.hpp"
#include "qcll/observable.hpp"
#include "qcll/optimize.hpp"
#include "qcll/qcl_reference.hpp"
#include "qcll/sketched_model.hpp"

namespace qcll {

enum class ModelKind { kQcl, kQcll, kBaseline };

std::string to_string(ModelKind kind);
/// "qcl", "qcll" or "baseline".
ModelKind parse_model_kind(const std::string& name);
std::string to_string(sketched::OutputVariant v);
/// "eq14" (inner product) or "eq15" (random unitary).
sketched::OutputVariant parse_variant(const std::string& name);

/// Width of each observable's diagonal block.
inline constexpr std::size_t kObservableBlock = 5;

/// C diagonal 0/1 observables on `dim` outputs, block c = [w c, w c + w)
/// with w = min(kObservableBlock, dim / C). Throws when dim < C.
std::vector<Observable> block_observables(std::size_t dim, std::size_t heads);

struct LearnerSettings {
  ModelKind model = ModelKind::kQcll;
  std::size_t qubits_per_dim = 6;  // Q_d
  std::size_t depth = 6;           // M
  std::size_t num_angles = 0;      // P; 0 means Q * M
  std::size_t num_outputs = 0;     // I; 0 means max(10, 5 C)
  std::size_t sketch_dim = 100;    // K'
  sketched::OutputVariant variant = sketched::OutputVariant::kInnerProduct;
  std::uint64_t structure_seed = 0;  // circuit unitaries / sketch tables
  optimize::TrainConfig train;
  bool scale_features = false;  // min-max features into [-1, 1] using the training set
  bool scale_targets = false;   // regression targets into [-1, 1] for training

  /// Resolved P and I for an input dimension and head count.
  std::size_t resolved_angles(std::size_t input_dim) const noexcept;
  std::size_t resolved_outputs(std::size_t heads) const noexcept;
  /// Throws std::invalid_argument on violated preconditions.
  void validate(std::size_t input_dim) const;
};

/// A trained model with everything needed to predict on raw inputs.
class FittedModel {
 public:
  /// Builds the frozen structure (circuit or sketches) for this shape.
  FittedModel(LearnerSettings settings, data::TaskKind task, std::size_t input_dim, std::size_t classes);

  const LearnerSettings& settings() const noexcept { return settings_; }
  data::TaskKind task() const noexcept { return task_; }
  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t classes() const noexcept { return classes_; }
  std::size_t heads() const noexcept { return task_ == data::TaskKind::kRegression ? 1 : classes_; }
  optimize::LossSpec loss() const;

  /// Readout model; null for the baseline.
  const ReadoutModel* readout() const noexcept { return readout_.get(); }
  const optimize::Parameters& parameters() const noexcept { return params_; }
  const std::optional<baseline::PolyOlsModel>& ols() const noexcept { return ols_; }
  const std::optional<data::ScalingStats>& feature_scaling() const noexcept { return feature_scaling_; }
  /// (min, max) of the training targets when targets are scaled.
  const std::optional<std::pair<double, double>>& target_range() const noexcept { return target_range_; }

  void set_parameters(optimize::Parameters params);
  void set_ols(baseline::PolyOlsModel ols) { ols_ = std::move(ols); }
  void set_feature_scaling(std::optional<data::ScalingStats> s) { feature_scaling_ = std::move(s); }
  void set_target_range(std::optional<std::pair<double, double>> r) { target_range_ = r; }

  /// Inputs after feature scaling (identity when not scaled).
  Eigen::MatrixXd prepare_inputs(const Eigen::MatrixXd& X) const;
  /// Regression: predictions in target units. Classification: N x C
  /// scores (logits, or OLS one-hot fits for the baseline).
  Eigen::MatrixXd raw_outputs(const Eigen::MatrixXd& X) const;
  /// Regression values, or argmax class indices as doubles.
  std::vector<double> predict(const Eigen::MatrixXd& X) const;

 private:
  LearnerSettings settings_;
  data::TaskKind task_;
  std::size_t input_dim_;
  std::size_t classes_;
  std::shared_ptr<const ReadoutModel> readout_;
  optimize::Parameters params_;
  std::optional<baseline::PolyOlsModel> ols_;
  std::optional<data::ScalingStats> feature_scaling_;
  std::optional<std::pair<double, double>> target_range_;
};

struct FitOutcome {
  FittedModel model;
  std::optional<optimize::TrainResult> training;  // absent for the baseline
};

/// Fits the configured model to `train`.
FitOutcome fit_model(const LearnerSettings& settings, const data::Dataset& train);

}  // namespace qcll
