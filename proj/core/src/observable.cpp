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

#include "qcll/observable.hpp"

#include <stdexcept>
#include <string>

namespace qcll {

Observable Observable::diagonal_ones(std::size_t dim, std::size_t first, std::size_t count) {
  if (first + count > dim) {
    throw std::invalid_argument("Observable::diagonal_ones: entries [" + std::to_string(first) + ", " +
                                std::to_string(first + count) + ") exceed dimension " + std::to_string(dim));
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  diag.segment(static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(count)).setOnes();
  return from_diagonal(std::move(diag));
}

Observable Observable::from_diagonal(Eigen::VectorXd diagonal) {
  if (diagonal.size() == 0) throw std::invalid_argument("Observable: dimension must be >= 1");
  if (!diagonal.allFinite()) throw std::invalid_argument("Observable: non-finite diagonal entry");
  Observable b;
  b.dim_ = static_cast<std::size_t>(diagonal.size());
  b.diagonal_only_ = true;
  b.diagonal_ = std::move(diagonal);
  return b;
}

Observable Observable::from_matrix(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw std::invalid_argument("Observable: matrix must be square and nonempty");
  }
  if (!matrix.allFinite()) throw std::invalid_argument("Observable: non-finite entry");
  const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) throw std::invalid_argument("Observable: matrix is not Hermitian (deviation " + std::to_string(asym) + ")");

  Eigen::MatrixXcd off = matrix;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() == 0.0) return from_diagonal(matrix.diagonal().real());

  Observable b;
  b.dim_ = static_cast<std::size_t>(matrix.rows());
  b.diagonal_only_ = false;
  b.matrix_ = 0.5 * (matrix + matrix.adjoint());
  b.diagonal_ = b.matrix_.diagonal().real();
  return b;
}

Eigen::MatrixXcd Observable::dense() const {
  if (!diagonal_only_) return matrix_;
  return diagonal_.cast<Complex>().asDiagonal();
}

std::vector<std::size_t> Observable::support() const {
  std::vector<std::size_t> out;
  const auto n = static_cast<Eigen::Index>(dim_);
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool used = diagonal_only_ ? diagonal_(i) != 0.0
                                     : (matrix_.row(i).cwiseAbs().maxCoeff() != 0.0 ||
                                        matrix_.col(i).cwiseAbs().maxCoeff() != 0.0);
    if (used) out.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

Complex Observable::quadratic_form(std::span<const Complex> v) const {
  if (v.size() != dim_) {
    throw std::invalid_argument("Observable: vector of length " + std::to_string(v.size()) +
                                " does not match dimension " + std::to_string(dim_));
  }
  Complex acc{0.0, 0.0};
  if (diagonal_only_) {
    for (std::size_t i = 0; i < dim_; ++i) acc += diagonal_(static_cast<Eigen::Index>(i)) * std::norm(v[i]);
    return acc;
  }
  Eigen::Map<const Eigen::VectorXcd> vec(v.data(), static_cast<Eigen::Index>(v.size()));
  return vec.dot(matrix_ * vec);
}

double Observable::expectation(std::span<const Complex> v) const { return quadratic_form(v).real(); }

Eigen::MatrixXcd Observable::apply(const Eigen::MatrixXcd& v) const {
  if (static_cast<std::size_t>(v.rows()) != dim_) throw std::invalid_argument("Observable::apply: dimension mismatch");
  if (diagonal_only_) return diagonal_.cast<Complex>().asDiagonal() * v;
  return matrix_ * v;
}

}  // namespace qcll
