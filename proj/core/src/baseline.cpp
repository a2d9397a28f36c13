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


#include "qcll/baseline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcll::baseline {

Eigen::MatrixXd poly_basis(const Eigen::MatrixXd& X, const EncodingSpec& encoding) {
  encoding.validate();
  if (static_cast<std::size_t>(X.cols()) != encoding.input_dim()) {
    throw std::invalid_argument("poly_basis: expected " + std::to_string(encoding.input_dim()) + " features");
  }
  Eigen::Index width = 1;
  for (std::size_t q : encoding.qubits_per_dim) width *= static_cast<Eigen::Index>(q + 1);
  Eigen::MatrixXd out(X.rows(), width);
  for (Eigen::Index n = 0; n < X.rows(); ++n) {
    Eigen::VectorXd row = Eigen::VectorXd::Ones(1);
    for (std::size_t d = 0; d < encoding.input_dim(); ++d) {
      const double x = X(n, static_cast<Eigen::Index>(d));
      if (!(std::abs(x) <= 1.0)) {
        throw std::domain_error("poly_basis: feature " + std::to_string(d) + " is outside [-1, 1]");
      }
      const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
      const std::size_t qd = encoding.qubits_per_dim[d];
      Eigen::VectorXd f(static_cast<Eigen::Index>(qd + 1));
      for (std::size_t a = 0; a <= qd; ++a)
        f(static_cast<Eigen::Index>(a)) = std::pow(x, static_cast<double>(qd - a)) * std::pow(s, static_cast<double>(a));
      Eigen::VectorXd next(row.size() * f.size());
      for (Eigen::Index i = 0; i < row.size(); ++i) next.segment(i * f.size(), f.size()) = row(i) * f;
      row = std::move(next);
    }
    out.row(n) = row.transpose();
  }
  return out;
}

PolyOlsModel::PolyOlsModel(EncodingSpec encoding, Eigen::MatrixXd coefficients)
    : encoding_(std::move(encoding)), coefficients_(std::move(coefficients)) {}

PolyOlsModel PolyOlsModel::fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& targets, EncodingSpec encoding) {
  if (X.rows() == 0) throw std::invalid_argument("PolyOlsModel::fit: empty training data");
  if (X.rows() != targets.rows()) throw std::invalid_argument("PolyOlsModel::fit: row count mismatch");
  const Eigen::MatrixXd basis = poly_basis(X, encoding);
  Eigen::MatrixXd coef = basis.completeOrthogonalDecomposition().solve(targets);
  return PolyOlsModel(std::move(encoding), std::move(coef));
}

PolyOlsModel PolyOlsModel::from_coefficients(EncodingSpec encoding, Eigen::MatrixXd coefficients) {
  encoding.validate();
  Eigen::Index width = 1;
  for (std::size_t q : encoding.qubits_per_dim) width *= static_cast<Eigen::Index>(q + 1);
  if (coefficients.rows() != width) {
    throw std::invalid_argument("PolyOlsModel: coefficient matrix needs " + std::to_string(width) + " rows");
  }
  return PolyOlsModel(std::move(encoding), std::move(coefficients));
}

Eigen::MatrixXd PolyOlsModel::predict(const Eigen::MatrixXd& X) const { return poly_basis(X, encoding_) * coefficients_; }

Eigen::MatrixXd one_hot(const std::vector<double>& labels, std::size_t classes) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(classes));
  for (std::size_t n = 0; n < labels.size(); ++n) {
    const auto c = static_cast<std::size_t>(labels[n]);
    if (labels[n] < 0.0 || c >= classes) throw std::invalid_argument("one_hot: label out of range");
    out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(c)) = 1.0;
  }
  return out;
}

}  // namespace qcll::baseline
