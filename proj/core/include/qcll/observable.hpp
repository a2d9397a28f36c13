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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qcll/spectral.hpp"

namespace qcll {

/// Hermitian readout matrix B. Diagonal observables (the common case) are
/// stored as their diagonal and take the fast paths.
class Observable {
 public:
  /// Diagonal with ones on [first, first + count) and zeros elsewhere.
  static Observable diagonal_ones(std::size_t dim, std::size_t first, std::size_t count);
  static Observable from_diagonal(Eigen::VectorXd diagonal);
  /// Throws std::invalid_argument unless the matrix is square and
  /// Hermitian to within 1e-12.
  static Observable from_matrix(const Eigen::MatrixXcd& matrix);

  std::size_t dim() const noexcept { return dim_; }
  bool is_diagonal() const noexcept { return diagonal_only_; }
  const Eigen::VectorXd& diagonal() const noexcept { return diagonal_; }
  Eigen::MatrixXcd dense() const;

  /// Indices i with a nonzero in row i or column i.
  std::vector<std::size_t> support() const;

  /// Raw v^H B v. The imaginary part is rounding residue.
  Complex quadratic_form(std::span<const Complex> v) const;
  /// Re(v^H B v). Throws std::invalid_argument on dimension mismatch.
  double expectation(std::span<const Complex> v) const;

  /// out = B v for each column of v.
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& v) const;

 private:
  Observable() = default;

  std::size_t dim_ = 0;
  bool diagonal_only_ = true;
  Eigen::VectorXd diagonal_;
  Eigen::MatrixXcd matrix_;
};

}  // namespace qcll
