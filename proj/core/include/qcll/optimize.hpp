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
 * Losses, the training cost with its chain-rule gradient, and a
 * multi-restart trainer shared by the statevector and sketched models.
 *
 * Heads: one (a_c, b_c) pair per observable. With readouts z_c(x, theta),
 *   regression      yhat = a_0 z_0 + b_0,                 E = (y - yhat)^2
 *   classification  l_c  = a_c z_c + b_c, p = softmax(l), E = -log p[y]
 * and cost = sum_n E(y_n, yhat_n) over the training set.
 *
 * The flat parameter vector is laid out as [a_0..a_{C-1}, b_0..b_{C-1}, theta].
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcll/readout_model.hpp"

namespace qcll::optimize {

/// Probabilities are clamped at this floor before taking logs.
inline constexpr double kProbabilityFloor = 1e-12;

enum class LossKind { kSquaredError, kSoftmaxCrossEntropy };

struct LossSpec {
  LossKind kind = LossKind::kSquaredError;
  std::size_t class_count = 0;  // used by cross-entropy only

  static LossSpec squared_error() { return {LossKind::kSquaredError, 0}; }
  static LossSpec cross_entropy(std::size_t classes) { return {LossKind::kSoftmaxCrossEntropy, classes}; }

  /// Number of (a, b) heads: 1 for regression, class_count otherwise.
  std::size_t heads() const noexcept { return kind == LossKind::kSquaredError ? 1 : class_count; }
  /// Throws std::invalid_argument when class_count < 2 for cross-entropy.
  void validate() const;
};

double squared_error(double y, double yhat) noexcept;
/// Max-subtracted softmax.
std::vector<double> softmax(std::span<const double> logits);
/// -log max(p[label], kProbabilityFloor). Throws std::invalid_argument on a
/// bad label.
double cross_entropy(std::size_t label, std::span<const double> p);

struct Parameters {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> theta;

  std::size_t size() const noexcept { return a.size() + b.size() + theta.size(); }
  std::vector<double> flatten() const;
  static Parameters unflatten(std::span<const double> flat, std::size_t heads);

  friend bool operator==(const Parameters&, const Parameters&) = default;
};

/// Head outputs for a batch of readouts Z (N x C): the regression
/// prediction in column 0, or the C logits per row.
Eigen::MatrixXd head_outputs(const Eigen::MatrixXd& z, const Parameters& params, const LossSpec& loss);

/// The training cost over a fixed dataset. Inputs are encoded once at
/// construction. Targets are real values or class indices stored as doubles.
class Objective {
 public:
  /// Throws std::invalid_argument on empty data, mismatched sizes, a head
  /// count that differs from the model's observable count, or bad labels.
  Objective(const ReadoutModel& model, const Eigen::MatrixXd& X, std::vector<double> y, LossSpec loss);

  std::size_t num_parameters() const noexcept { return loss_.heads() * 2 + model_.num_angles(); }
  std::size_t num_samples() const noexcept { return y_.size(); }
  const LossSpec& loss() const noexcept { return loss_; }
  const ReadoutModel& model() const noexcept { return model_; }

  double cost(std::span<const double> params) const;
  /// Returns the cost and writes dCost/dparams into `grad`.
  double cost_and_gradient(std::span<const double> params, std::span<double> grad) const;

 private:
  void check_size(std::size_t n) const;
  /// Loss sum for readouts Z; fills dCost/dhead-output into `dout` when non-null.
  double loss_from_readouts(const Eigen::MatrixXd& z, std::span<const double> params, Eigen::MatrixXd* dout) const;

  const ReadoutModel& model_;
  std::unique_ptr<EncodedBatch> batch_;
  std::vector<double> y_;
  LossSpec loss_;
};

/// Convenience wrappers over Objective.
double cost(const ReadoutModel& model, const Eigen::MatrixXd& X, std::span<const double> y, const LossSpec& loss,
            const Parameters& params);
std::vector<double> cost_gradient(const ReadoutModel& model, const Eigen::MatrixXd& X, std::span<const double> y,
                                  const LossSpec& loss, const Parameters& params);

enum class OptimizerKind { kLbfgs, kAdam };

struct TrainConfig {
  std::size_t max_iterations = 100;
  std::size_t restarts = 10;
  OptimizerKind optimizer = OptimizerKind::kLbfgs;
  double tolerance = 1e-8;      // stop when |cost change| falls below this
  double theta_low = 0.0;       // theta ~ U[theta_low, theta_high)
  double theta_high = 6.283185307179586;
  double a_center = 1.0;        // a ~ a_center + U[-a_spread, a_spread]
  double a_spread = 1.0;
  double b_center = 0.0;        // b ~ b_center + U[-b_spread, b_spread]
  double b_spread = 1.0;
  std::size_t lbfgs_memory = 10;
  double adam_learning_rate = 0.05;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on restarts == 0 or nonsensical ranges.
  void validate() const;
};

struct RestartTrace {
  std::vector<double> costs;  // entry 0 is the initial cost, then one per iteration
  bool failed = false;
  std::string failure;        // reason when failed
};

struct TrainResult {
  Parameters best;
  double best_cost = 0.0;
  std::size_t best_restart = 0;
  std::vector<RestartTrace> traces;
  double wall_seconds = 0.0;
};

/// Initial parameters of restart `r`, drawn from derive_seed(config.seed, {r}).
Parameters initial_parameters(const TrainConfig& config, std::size_t restart, std::size_t heads, std::size_t angles);

/// Runs config.restarts independent optimizations and keeps the lowest final
/// cost. A restart that meets a non-finite cost is aborted and recorded in
/// its trace; std::runtime_error is thrown only if every restart fails.
TrainResult train(const Objective& objective, const TrainConfig& config);
TrainResult train(const ReadoutModel& model, const Eigen::MatrixXd& X, std::vector<double> y, const LossSpec& loss,
                  const TrainConfig& config);

/// CSV with header "restart,iteration,cost".
void write_trace_csv(const TrainResult& result, std::ostream& out);

}  // namespace qcll::optimize
