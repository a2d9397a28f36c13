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
 * Linear least-squares baseline on the monomials that the product-state
 * encoding can express. For one input dimension with Q_d qubits the basis is
 *   { x^a (1 - x^2)^{(Q_d - a)/2} : a = 0..Q_d },
 * which for Q_d = 6 is {x^6, x^5 sqrt(1-x^2), ..., (1-x^2)^3}. Multiple input
 * dimensions use the tensor product of the per-dimension bases.
 */

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qcll/encoding.hpp"

namespace qcll::baseline {

/// Design matrix: one row per sample, prod over d of (Q_d + 1) columns,
/// with the first dimension's index varying slowest.
Eigen::MatrixXd poly_basis(const Eigen::MatrixXd& X, const EncodingSpec& encoding);

class PolyOlsModel {
 public:
  /// Least squares on the basis. `targets` has one column per output (one
  /// for regression, one-hot columns for classification). Rank-deficient
  /// systems get the minimum-norm solution from a complete orthogonal
  /// decomposition.
  static PolyOlsModel fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& targets, EncodingSpec encoding);
  static PolyOlsModel from_coefficients(EncodingSpec encoding, Eigen::MatrixXd coefficients);

  const EncodingSpec& encoding() const noexcept { return encoding_; }
  const Eigen::MatrixXd& coefficients() const noexcept { return coefficients_; }
  /// N x outputs matrix of fitted values.
  Eigen::MatrixXd predict(const Eigen::MatrixXd& X) const;

 private:
  PolyOlsModel(EncodingSpec encoding, Eigen::MatrixXd coefficients);

  EncodingSpec encoding_;
  Eigen::MatrixXd coefficients_;  // basis size x outputs
};

/// One-hot encoding of class indices stored as doubles.
Eigen::MatrixXd one_hot(const std::vector<double>& labels, std::size_t classes);

}  // namespace qcll::baseline
