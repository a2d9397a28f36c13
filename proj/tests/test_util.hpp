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


// Shared helpers for the unit tests: seeded generators and tolerance checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qcll/random.hpp"
#include "qcll/spectral.hpp"

namespace qcll::testing {

inline ComplexVector random_complex(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(n);
  for (auto& c : v) c = {g(rng), g(rng)};
  return v;
}

inline std::vector<double> random_real(std::size_t n, Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

inline ComplexVector random_unit(std::size_t n, Rng& rng) {
  ComplexVector v = random_complex(n, rng);
  double norm = 0.0;
  for (const auto& c : v) norm += std::norm(c);
  norm = std::sqrt(norm);
  for (auto& c : v) c /= norm;
  return v;
}

inline Eigen::MatrixXd random_inputs(std::size_t rows, std::size_t cols, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd X(rows, cols);
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = u(rng);
  return X;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(std::span<const Complex> a) {
  double m = 0.0;
  for (const auto& c : a) m = std::max(m, std::abs(c));
  return m;
}

/// |a - b| / max(|a|, |b|, floor): relative error that stays meaningful near zero.
inline double rel_err(double a, double b, double floor = 1e-6) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace qcll::testing
