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

#include "qcll/sketch.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qcll/random.hpp"

namespace qcll::sketch {

namespace {

std::size_t checked_product_dim(const std::vector<std::size_t>& dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("kronecker: zero-length factor");
    if (total > kMaxMaterializedDim / d) {
      throw std::invalid_argument("kronecker: product dimension exceeds 2^24");
    }
    total *= d;
  }
  return total;
}

}  // namespace

CountSketchMatrix::CountSketchMatrix(std::size_t target_dim, std::vector<std::uint32_t> rows,
                                     std::vector<std::int8_t> signs, std::uint64_t seed)
    : target_dim_(target_dim), rows_(std::move(rows)), signs_(std::move(signs)), seed_(seed) {
  if (target_dim_ == 0 || rows_.empty()) {
    throw std::invalid_argument("CountSketchMatrix: dimensions must be >= 1");
  }
  if (rows_.size() != signs_.size()) {
    throw std::invalid_argument("CountSketchMatrix: hash and sign tables differ in length");
  }
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (rows_[k] >= target_dim_) {
      throw std::invalid_argument("CountSketchMatrix: row " + std::to_string(rows_[k]) + " of column " +
                                  std::to_string(k) + " is out of range");
    }
    if (signs_[k] != 1 && signs_[k] != -1) {
      throw std::invalid_argument("CountSketchMatrix: sign of column " + std::to_string(k) + " is not +-1");
    }
  }
}

CountSketchMatrix sample_count_sketch(std::size_t source_dim, std::size_t target_dim, std::uint64_t seed) {
  if (source_dim == 0 || target_dim == 0) {
    throw std::invalid_argument("sample_count_sketch: dimensions must be >= 1");
  }
  Rng hash_rng(derive_seed(seed, {0}));
  Rng sign_rng(derive_seed(seed, {1}));
  std::uniform_int_distribution<std::uint32_t> row_dist(0, static_cast<std::uint32_t>(target_dim - 1));
  std::vector<std::uint32_t> rows(source_dim);
  std::vector<std::int8_t> signs(source_dim);
  for (auto& r : rows) r = row_dist(hash_rng);
  for (auto& s : signs) s = (sign_rng() >> 63) ? std::int8_t{1} : std::int8_t{-1};
  return CountSketchMatrix(target_dim, std::move(rows), std::move(signs), seed);
}

SketchVector apply(const CountSketchMatrix& c, std::span<const Complex> v) {
  if (v.size() != c.source_dim()) {
    throw std::invalid_argument("sketch::apply: vector length " + std::to_string(v.size()) +
                                " does not match source dimension " + std::to_string(c.source_dim()));
  }
  SketchVector out(c.target_dim(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < v.size(); ++k) out[c.row(k)] += static_cast<double>(c.sign(k)) * v[k];
  return out;
}

SketchVector apply(const CountSketchMatrix& c, std::span<const double> v) {
  if (v.size() != c.source_dim()) {
    throw std::invalid_argument("sketch::apply: vector length " + std::to_string(v.size()) +
                                " does not match source dimension " + std::to_string(c.source_dim()));
  }
  SketchVector out(c.target_dim(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k < v.size(); ++k) out[c.row(k)] += static_cast<double>(c.sign(k)) * v[k];
  return out;
}

ComplexVector sketch_spectrum(const CountSketchMatrix& c, std::span<const Complex> v) {
  if (v.size() != c.source_dim()) {
    throw std::invalid_argument("sketch_spectrum: vector length does not match source dimension");
  }
  const std::size_t n = c.target_dim();
  ComplexVector out(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Complex weight = static_cast<double>(c.sign(k)) * v[k];
    const std::size_t h = c.row(k);
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((h * j) % n) / static_cast<double>(n);
      out[j] += weight * Complex{std::cos(angle), std::sin(angle)};
    }
  }
  return out;
}

Complex estimate_inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("estimate_inner: length mismatch (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
  return acc;
}

void FactorList::validate() const {
  if (factors.empty()) throw std::invalid_argument("FactorList: at least one factor is required");
  if (factors.size() != sketches.size()) {
    throw std::invalid_argument("FactorList: " + std::to_string(factors.size()) + " factors but " +
                                std::to_string(sketches.size()) + " sketch matrices");
  }
  const std::size_t kp = sketches.front().target_dim();
  for (std::size_t q = 0; q < factors.size(); ++q) {
    if (sketches[q].target_dim() != kp) {
      throw std::invalid_argument("FactorList: sketch " + std::to_string(q) + " has target dimension " +
                                  std::to_string(sketches[q].target_dim()) + ", expected " + std::to_string(kp));
    }
    if (factors[q].size() != sketches[q].source_dim()) {
      throw std::invalid_argument("FactorList: factor " + std::to_string(q) + " length does not match its sketch");
    }
  }
}

std::size_t FactorList::target_dim() const {
  validate();
  return sketches.front().target_dim();
}

SketchVector tensor_sketch(const FactorList& f) {
  f.validate();
  if (f.factors.size() == 1) return sketch::apply(f.sketches[0], std::span<const Complex>(f.factors[0]));
  const std::size_t kp = f.sketches.front().target_dim();
  const spectral::FftPlan& plan = spectral::plan_for(kp);
  ComplexVector product(kp, Complex{1.0, 0.0});
  for (std::size_t q = 0; q < f.factors.size(); ++q) {
    SketchVector s = sketch::apply(f.sketches[q], std::span<const Complex>(f.factors[q]));
    plan.forward(s);
    for (std::size_t j = 0; j < kp; ++j) product[j] *= s[j];
  }
  plan.inverse(product);
  return product;
}

CountSketchMatrix combined_sketch_oracle(const FactorList& f) {
  f.validate();
  std::vector<std::size_t> dims;
  for (const auto& c : f.sketches) dims.push_back(c.source_dim());
  const std::size_t total = checked_product_dim(dims);
  const std::size_t kp = f.sketches.front().target_dim();

  std::vector<std::uint32_t> rows(total);
  std::vector<std::int8_t> signs(total);
  std::vector<std::size_t> digits(dims.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t hash = 0;
    int sign = 1;
    for (std::size_t q = 0; q < dims.size(); ++q) {
      hash += f.sketches[q].row(digits[q]);
      sign *= f.sketches[q].sign(digits[q]);
    }
    rows[k] = static_cast<std::uint32_t>(hash % kp);
    signs[k] = static_cast<std::int8_t>(sign);
    // Odometer increment; the last factor is the least significant digit.
    for (std::size_t q = dims.size(); q-- > 0;) {
      if (++digits[q] < dims[q]) break;
      digits[q] = 0;
    }
  }
  return CountSketchMatrix(kp, std::move(rows), std::move(signs));
}

ComplexVector kronecker_product(std::span<const ComplexVector> factors) {
  if (factors.empty()) throw std::invalid_argument("kronecker_product: no factors");
  std::vector<std::size_t> dims;
  for (const auto& v : factors) dims.push_back(v.size());
  checked_product_dim(dims);
  ComplexVector out{Complex{1.0, 0.0}};
  for (const auto& v : factors) {
    ComplexVector next;
    next.reserve(out.size() * v.size());
    for (const Complex& a : out)
      for (const Complex& b : v) next.push_back(a * b);
    out = std::move(next);
  }
  return out;
}

}  // namespace qcll::sketch
