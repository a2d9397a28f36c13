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
 * Count sketches and the FFT-based tensor sketch.
 *
 * A count sketch matrix C (target_dim x source_dim) has exactly one nonzero
 * per column k, equal to sign(k) and placed at row row(k). Sketching a
 * vector is C v, computed in O(source_dim) without materializing C. For a
 * Kronecker product v = v_1 (x) ... (x) v_Q with independent per-factor
 * sketches C_q, the circular convolution of the C_q v_q is itself a count
 * sketch of v, whose combined hash is (sum_q row_q(k_q)) mod target_dim and
 * whose sign is prod_q sign_q(k_q).
 *
 * Index conventions are 0-based throughout. In Kronecker products the first
 * factor occupies the most significant digits of the combined index.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcll/spectral.hpp"

namespace qcll::sketch {

/// Length-K' sketch of a vector, stored in the complex carrier type.
using SketchVector = ComplexVector;

class CountSketchMatrix {
 public:
  /// Builds a matrix from explicit hash tables. Throws std::invalid_argument
  /// on empty tables, mismatched sizes, rows >= target_dim or signs not +-1.
  CountSketchMatrix(std::size_t target_dim, std::vector<std::uint32_t> rows, std::vector<std::int8_t> signs,
                    std::uint64_t seed = 0);

  std::size_t source_dim() const noexcept { return rows_.size(); }
  std::size_t target_dim() const noexcept { return target_dim_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::uint32_t row(std::size_t k) const { return rows_[k]; }
  int sign(std::size_t k) const { return signs_[k]; }
  std::span<const std::uint32_t> rows() const noexcept { return rows_; }
  std::span<const std::int8_t> signs() const noexcept { return signs_; }

  friend bool operator==(const CountSketchMatrix&, const CountSketchMatrix&) = default;

 private:
  std::size_t target_dim_;
  std::vector<std::uint32_t> rows_;
  std::vector<std::int8_t> signs_;
  std::uint64_t seed_;
};

/// Samples fully random i.i.d. hash tables: row uniform on [0, target_dim),
/// sign uniform on {+1, -1}. The two tables come from independent streams
/// derived from `seed`, so equal seeds give identical matrices.
CountSketchMatrix sample_count_sketch(std::size_t source_dim, std::size_t target_dim, std::uint64_t seed);

/// C v in O(source_dim).
SketchVector apply(const CountSketchMatrix& c, std::span<const Complex> v);
SketchVector apply(const CountSketchMatrix& c, std::span<const double> v);

/// fft(apply(c, v)) evaluated directly from the sparse columns in
/// O(source_dim * target_dim).
ComplexVector sketch_spectrum(const CountSketchMatrix& c, std::span<const Complex> v);

/// Conjugate-linear inner product sum_k conj(a[k]) b[k].
Complex estimate_inner(std::span<const Complex> a, std::span<const Complex> b);

/// Factors v_1..v_Q of a Kronecker product, each paired with its own sketch.
struct FactorList {
  std::vector<ComplexVector> factors;
  std::vector<CountSketchMatrix> sketches;

  /// Throws std::invalid_argument when empty, when counts differ, when a
  /// factor length differs from its sketch's source_dim, or when the sketches
  /// disagree on target_dim.
  void validate() const;
  std::size_t target_dim() const;
};

/// ifft( prod_q fft(C_q v_q) ): the count sketch of the Kronecker product of
/// the factors, computed in O(K' sum_q D_q + Q K' log K').
SketchVector tensor_sketch(const FactorList& f);

/// Largest product dimension accepted by the explicit (materializing) helpers.
inline constexpr std::size_t kMaxMaterializedDim = std::size_t{1} << 24;

/// The single count sketch over the full product space that tensor_sketch is
/// equivalent to. Test oracle; rejects product dimensions above 2^24.
CountSketchMatrix combined_sketch_oracle(const FactorList& f);

/// Explicit Kronecker product, first factor most significant. Rejects
/// product dimensions above 2^24.
ComplexVector kronecker_product(std::span<const ComplexVector> factors);

}  // namespace qcll::sketch
