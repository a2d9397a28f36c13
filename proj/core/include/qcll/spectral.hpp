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
 * Discrete Fourier transforms and circular convolution.
 *
 * Conventions: the forward transform is unnormalized,
 *   X[k] = sum_j x[j] exp(-2 pi i j k / n),
 * and the inverse carries the 1/n factor, so that
 *   circular_convolve(a, b) == ifft(fft(a) * fft(b))
 * holds without extra scale factors.
 *
 * Power-of-two lengths use an iterative radix-2 Cooley-Tukey transform.
 * Every other length goes through Bluestein's chirp transform, which
 * re-expresses the DFT as a convolution evaluated with padded radix-2
 * transforms. Both paths are exact up to floating-point rounding.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace qcll {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

namespace spectral {

/// Precomputed tables for transforms of one fixed length. Immutable after
/// construction, so one plan may be shared between threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool is_power_of_two() const noexcept { return bluestein_ == nullptr; }

  /// In-place forward transform; `data.size()` must equal size().
  void forward(std::span<Complex> data) const;
  /// In-place inverse transform including the 1/n normalization.
  void inverse(std::span<Complex> data) const;

 private:
  struct Bluestein;

  void radix2(std::span<Complex> data) const;

  std::size_t n_;
  std::vector<std::size_t> bit_reverse_;
  ComplexVector twiddles_;  // exp(-2 pi i k / n), k < n/2
  std::shared_ptr<const Bluestein> bluestein_;
};

/// Returns a plan for length `n` from a per-thread cache.
const FftPlan& plan_for(std::size_t n);

/// O(n^2) textbook DFT. Throws std::invalid_argument on empty input.
ComplexVector dft_naive(std::span<const Complex> v);

/// Forward DFT. Throws std::invalid_argument on empty input.
ComplexVector fft(std::span<const Complex> v);

/// Inverse DFT with 1/n normalization. Throws std::invalid_argument on empty input.
ComplexVector ifft(std::span<const Complex> v);

/// out[k] = sum_j a[j] b[(k - j) mod n], evaluated through the FFT.
/// Throws std::invalid_argument when the lengths differ or are zero.
ComplexVector circular_convolve(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace spectral
}  // namespace qcll
