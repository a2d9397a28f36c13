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

#include "qcll/spectral.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace qcll::spectral {

namespace {

// exp(-2 pi i num / den) with the angle reduced before scaling.
Complex unit_root(std::size_t num, std::size_t den) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(num % den) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": input must have length >= 1");
}

}  // namespace

struct FftPlan::Bluestein {
  explicit Bluestein(std::size_t n)
      : padded(std::bit_ceil(2 * n - 1)), inner(padded), chirp(n), kernel_spectrum(padded, Complex{0.0, 0.0}) {
    // chirp[k] = exp(-i pi k^2 / n); k^2 is reduced mod 2n so large k stay accurate.
    const std::size_t two_n = 2 * n;
    std::size_t k2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
      chirp[k] = unit_root(k2, two_n);
      // (k + 1)^2 = k^2 + 2k + 1, accumulated mod 2n without overflow.
      k2 = (k2 + (2 * k + 1) % two_n) % two_n;
    }
    kernel_spectrum[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
      kernel_spectrum[k] = std::conj(chirp[k]);
      kernel_spectrum[padded - k] = std::conj(chirp[k]);
    }
    inner.forward(kernel_spectrum);
  }

  std::size_t padded;
  FftPlan inner;
  ComplexVector chirp;
  ComplexVector kernel_spectrum;
};

FftPlan::FftPlan(std::size_t n) : n_(n) {
  require_nonempty(n, "FftPlan");
  if (!std::has_single_bit(n)) {
    bluestein_ = std::make_shared<const Bluestein>(n);
    return;
  }
  const int bits = std::countr_zero(n);
  bit_reverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddles_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) twiddles_[k] = unit_root(k, n);
}

void FftPlan::radix2(std::span<Complex> data) const {
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bit_reverse_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex t = twiddles_[k * stride] * data[start + k + half];
        data[start + k + half] = data[start + k] - t;
        data[start + k] += t;
      }
    }
  }
}

void FftPlan::forward(std::span<Complex> data) const {
  if (data.size() != n_) {
    throw std::invalid_argument("FftPlan::forward: expected length " + std::to_string(n_) + ", got " +
                                std::to_string(data.size()));
  }
  if (!bluestein_) {
    radix2(data);
    return;
  }
  const Bluestein& bs = *bluestein_;
  ComplexVector work(bs.padded, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) work[k] = data[k] * bs.chirp[k];
  bs.inner.forward(work);
  for (std::size_t k = 0; k < bs.padded; ++k) work[k] *= bs.kernel_spectrum[k];
  bs.inner.inverse(work);
  for (std::size_t k = 0; k < n_; ++k) data[k] = work[k] * bs.chirp[k];
}

void FftPlan::inverse(std::span<Complex> data) const {
  for (Complex& c : data) c = std::conj(c);
  forward(data);
  const double scale = 1.0 / static_cast<double>(n_);
  for (Complex& c : data) c = std::conj(c) * scale;
}

const FftPlan& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

ComplexVector dft_naive(std::span<const Complex> v) {
  const std::size_t n = v.size();
  require_nonempty(n, "dft_naive");
  ComplexVector out(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) acc += v[j] * unit_root(j * k % n, n);
    out[k] = acc;
  }
  return out;
}

ComplexVector fft(std::span<const Complex> v) {
  require_nonempty(v.size(), "fft");
  ComplexVector out(v.begin(), v.end());
  plan_for(out.size()).forward(out);
  return out;
}

ComplexVector ifft(std::span<const Complex> v) {
  require_nonempty(v.size(), "ifft");
  ComplexVector out(v.begin(), v.end());
  plan_for(out.size()).inverse(out);
  return out;
}

ComplexVector circular_convolve(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("circular_convolve: length mismatch (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  require_nonempty(a.size(), "circular_convolve");
  const FftPlan& plan = plan_for(a.size());
  ComplexVector fa(a.begin(), a.end());
  ComplexVector fb(b.begin(), b.end());
  plan.forward(fa);
  plan.forward(fb);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  plan.inverse(fa);
  return fa;
}

}  // namespace qcll::spectral
