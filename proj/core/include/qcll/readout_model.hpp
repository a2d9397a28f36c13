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
 * The interface the trainer sees. A readout model maps an input x and the
 * angle vector theta to one real readout per observable,
 *   z_c(x, theta) = <out(x, theta)| B_c |out(x, theta)>,
 * where out() is either an exact statevector or a sketched output vector.
 * The scale/intercept heads and the output map F live in the optimizer.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>

#include <Eigen/Dense>

namespace qcll {

/// Per-model precomputation over a fixed set of inputs (encoded statevectors
/// or input sketches). Independent of theta, so it is built once per dataset.
class EncodedBatch {
 public:
  virtual ~EncodedBatch() = default;
  virtual std::size_t size() const noexcept = 0;
};

class ReadoutModel {
 public:
  /// Maps readouts Z (N x C) to dCost/dZ (N x C).
  using ReadoutWeights = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;

  virtual ~ReadoutModel() = default;

  virtual std::size_t num_angles() const noexcept = 0;
  virtual std::size_t num_observables() const noexcept = 0;
  virtual std::size_t input_dim() const noexcept = 0;

  /// Rows of X are samples.
  virtual std::unique_ptr<EncodedBatch> encode(const Eigen::MatrixXd& X) const = 0;

  /// Z(n, c) for every encoded sample and observable.
  virtual Eigen::MatrixXd readouts(std::span<const double> theta, const EncodedBatch& batch) const = 0;

  /// Computes Z, then grad_theta[p] = sum_{n,c} W(n,c) dZ(n,c)/dtheta_p with
  /// W = weights(Z), in a single forward/backward sweep. Returns Z.
  virtual Eigen::MatrixXd readouts_with_vjp(std::span<const double> theta, const EncodedBatch& batch,
                                            const ReadoutWeights& weights, std::span<double> grad_theta) const = 0;
};

}  // namespace qcll
