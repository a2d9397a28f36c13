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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "../test_util.hpp"

namespace qcll::sketch {
namespace {

using testing::max_abs_diff;
using testing::random_complex;

Eigen::MatrixXd dense(const CountSketchMatrix& c) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(c.target_dim()),
                                            static_cast<Eigen::Index>(c.source_dim()));
  for (std::size_t k = 0; k < c.source_dim(); ++k) m(c.row(k), static_cast<Eigen::Index>(k)) = c.sign(k);
  return m;
}

// Real unit vector stored as complex.
ComplexVector real_unit(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  double norm = 0.0;
  for (auto& c : v) {
    c = g(rng);
    norm += std::norm(c);
  }
  for (auto& c : v) c /= std::sqrt(norm);
  return v;
}

FactorList random_factors(std::size_t q, std::size_t dq, std::size_t target, Rng& rng) {
  FactorList f;
  for (std::size_t i = 0; i < q; ++i) {
    f.factors.push_back(random_complex(dq, rng));
    f.sketches.push_back(sample_count_sketch(dq, target, rng()));
  }
  return f;
}

TEST(CountSketch, SeededDeterminism) {
  const CountSketchMatrix a = sample_count_sketch(2, 100, 7);
  const CountSketchMatrix b = sample_count_sketch(2, 100, 7);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.seed(), 7U);
  EXPECT_NE(sample_count_sketch(64, 100, 7), sample_count_sketch(64, 100, 8));
}

TEST(CountSketch, OneSignedEntryPerColumn) {
  const CountSketchMatrix c = sample_count_sketch(5, 3, 11);
  const Eigen::MatrixXd m = dense(c);
  EXPECT_EQ(m.rows(), 3);
  EXPECT_EQ(m.cols(), 5);
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    EXPECT_EQ(m.col(k).cwiseAbs().sum(), 1.0);
    EXPECT_EQ((m.col(k).array() != 0.0).count(), 1);
  }
}

TEST(CountSketch, ZeroDimensionsThrow) {
  EXPECT_THROW(sample_count_sketch(0, 3, 1), std::invalid_argument);
  EXPECT_THROW(sample_count_sketch(3, 0, 1), std::invalid_argument);
}

TEST(CountSketch, ExplicitTableValidation) {
  EXPECT_THROW(CountSketchMatrix(3, {0, 3}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(CountSketchMatrix(3, {0, 1}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(CountSketchMatrix(3, {0, 1}, {1}), std::invalid_argument);
  EXPECT_THROW(CountSketchMatrix(3, {}, {}), std::invalid_argument);
  EXPECT_NO_THROW(CountSketchMatrix(1, {0, 0}, {1, -1}));
}

TEST(CountSketch, HashAndSignFrequencies) {
  constexpr std::size_t kDraws = 100000;
  constexpr std::size_t kTarget = 100;
  std::vector<double> row_counts(kTarget, 0.0);
  double plus = 0.0;
  for (std::size_t t = 0; t < kDraws; ++t) {
    const CountSketchMatrix c = sample_count_sketch(1, kTarget, derive_seed(99, {t}));
    row_counts[c.row(0)] += 1.0;
    plus += c.sign(0) > 0 ? 1.0 : 0.0;
  }
  const double n = kDraws;
  const double p_row = 1.0 / kTarget;
  const double se_row = std::sqrt(p_row * (1.0 - p_row) / n);
  for (std::size_t r = 0; r < kTarget; ++r) EXPECT_LT(std::abs(row_counts[r] / n - p_row), 4.0 * se_row) << "row " << r;
  EXPECT_LT(std::abs(plus / n - 0.5), 4.0 * std::sqrt(0.25 / n));
}

TEST(Apply, IdentityHashIsIdentity) {
  const CountSketchMatrix c(4, {0, 1, 2, 3}, {1, 1, 1, 1});
  Rng rng(1);
  const ComplexVector v = random_complex(4, rng);
  EXPECT_EQ(sketch::apply(c, v), v);
}

TEST(Apply, FullCollision) {
  const CountSketchMatrix c(1, {0, 0}, {1, -1});
  const ComplexVector v = {Complex(2.0, 1.0), Complex(0.5, -3.0)};
  const ComplexVector out = sketch::apply(c, v);
  ASSERT_EQ(out.size(), 1U);
  EXPECT_EQ(out[0], v[0] - v[1]);
}

TEST(Apply, MatchesDenseMatrix) {
  Rng rng(2);
  const CountSketchMatrix c = sample_count_sketch(64, 100, 5);
  const ComplexVector v = random_complex(64, rng);
  const Eigen::VectorXcd expect =
      dense(c).cast<Complex>() * Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
  const ComplexVector out = sketch::apply(c, v);
  for (std::size_t k = 0; k < out.size(); ++k) EXPECT_LT(std::abs(out[k] - expect(static_cast<Eigen::Index>(k))), 1e-12);
}

TEST(Apply, RealOverloadAgrees) {
  const CountSketchMatrix c = sample_count_sketch(10, 7, 3);
  Rng rng(3);
  const std::vector<double> v = testing::random_real(10, rng);
  const ComplexVector vc(v.begin(), v.end());
  EXPECT_EQ(sketch::apply(c, v), sketch::apply(c, vc));
}

TEST(Apply, LengthMismatchThrows) {
  const CountSketchMatrix c = sample_count_sketch(4, 3, 1);
  EXPECT_THROW(sketch::apply(c, ComplexVector(5)), std::invalid_argument);
  EXPECT_THROW(sketch_spectrum(c, ComplexVector(3)), std::invalid_argument);
}

TEST(Apply, LinearInInput) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const CountSketchMatrix c = sample_count_sketch(32, 17, rng());
    const ComplexVector u = random_complex(32, rng), v = random_complex(32, rng);
    const Complex alpha(0.7, -0.2), beta(-1.5, 2.0);
    ComplexVector mix(32);
    for (std::size_t i = 0; i < 32; ++i) mix[i] = alpha * u[i] + beta * v[i];
    const ComplexVector cu = sketch::apply(c, u), cv = sketch::apply(c, v), cm = sketch::apply(c, mix);
    for (std::size_t k = 0; k < 17; ++k) EXPECT_LT(std::abs(cm[k] - (alpha * cu[k] + beta * cv[k])), 1e-12);
  }
}

TEST(Apply, SignFlipFlipsOneContribution) {
  Rng rng(5);
  const CountSketchMatrix c = sample_count_sketch(8, 5, 21);
  const ComplexVector v = random_complex(8, rng);
  for (std::size_t k = 0; k < 8; ++k) {
    std::vector<std::int8_t> signs(c.signs().begin(), c.signs().end());
    signs[k] = static_cast<std::int8_t>(-signs[k]);
    const CountSketchMatrix flipped(5, {c.rows().begin(), c.rows().end()}, signs);
    const ComplexVector a = sketch::apply(c, v), b = sketch::apply(flipped, v);
    for (std::size_t r = 0; r < 5; ++r) {
      const Complex expect = r == c.row(k) ? a[r] - 2.0 * static_cast<double>(c.sign(k)) * v[k] : a[r];
      EXPECT_LT(std::abs(b[r] - expect), 1e-12);
    }
  }
}

TEST(Apply, SpectrumMatchesFftOfSketch) {
  Rng rng(6);
  const CountSketchMatrix c = sample_count_sketch(2, 100, 9);
  const ComplexVector v = random_complex(2, rng);
  EXPECT_LT(max_abs_diff(sketch_spectrum(c, v), spectral::fft(sketch::apply(c, v))), 1e-12);
}

TEST(EstimateInner, ZeroVector) {
  Rng rng(7);
  const ComplexVector z(10, 0.0);
  EXPECT_EQ(estimate_inner(z, random_complex(10, rng)), Complex(0.0, 0.0));
}

TEST(EstimateInner, ConjugateLinear) {
  const ComplexVector a = {Complex(0.0, 1.0)}, b = {Complex(2.0, 0.0)};
  EXPECT_EQ(estimate_inner(a, b), Complex(0.0, -2.0));
  EXPECT_THROW(estimate_inner(a, ComplexVector(2)), std::invalid_argument);
}

TEST(EstimateInner, UnbiasedWithBoundedVariance) {
  constexpr std::size_t kDraws = 100000;
  constexpr std::size_t kTarget = 100;
  Rng rng(8);
  const ComplexVector v1 = real_unit(16, rng), v2 = real_unit(16, rng);
  const double exact = estimate_inner(v1, v2).real();
  double sum = 0.0, sum_sq = 0.0, self_sum = 0.0, self_sq = 0.0;
  for (std::size_t t = 0; t < kDraws; ++t) {
    const CountSketchMatrix c = sample_count_sketch(16, kTarget, derive_seed(8, {t}));
    const ComplexVector a = sketch::apply(c, v1), b = sketch::apply(c, v2);
    const double est = estimate_inner(a, b).real();
    const double self = estimate_inner(a, a).real();
    sum += est;
    sum_sq += est * est;
    self_sum += self;
    self_sq += self * self;
  }
  const double n = kDraws;
  const double mean = sum / n, var = (sum_sq - n * mean * mean) / (n - 1.0);
  const double self_mean = self_sum / n, self_var = (self_sq - n * self_mean * self_mean) / (n - 1.0);
  EXPECT_LT(std::abs(mean - exact), 4.0 * std::sqrt(var / n));
  EXPECT_LT(std::abs(self_mean - 1.0), 4.0 * std::sqrt(self_var / n));
  EXPECT_LE(var, 1.1 * (exact * exact + 1.0) / kTarget);
  EXPECT_LE(var, 1.1 * 2.0 / kTarget);
}

TEST(TensorSketch, SingleFactorEqualsApply) {
  Rng rng(9);
  const FactorList f = random_factors(1, 5, 13, rng);
  EXPECT_LT(max_abs_diff(tensor_sketch(f), sketch::apply(f.sketches[0], f.factors[0])), 1e-12);
}

TEST(TensorSketch, MismatchedTargetDimensionsThrow) {
  Rng rng(10);
  FactorList f = random_factors(2, 2, 8, rng);
  f.sketches[1] = sample_count_sketch(2, 9, 1);
  EXPECT_THROW(tensor_sketch(f), std::invalid_argument);
  FactorList empty;
  EXPECT_THROW(tensor_sketch(empty), std::invalid_argument);
  FactorList wrong_len = random_factors(2, 2, 8, rng);
  wrong_len.factors[0].push_back(1.0);
  EXPECT_THROW(tensor_sketch(wrong_len), std::invalid_argument);
}

// Exhaustive check of the combined-hash rule on Q = 2, D_q = 2: every pair
// of hash tables and sign tables for K' = 1..4, against a direct expansion
// of the circular convolution of the two factor sketches.
TEST(CombinedOracle, ExhaustiveAgainstDirectConvolution) {
  Rng rng(11);
  const ComplexVector v1 = random_complex(2, rng), v2 = random_complex(2, rng);
  const ComplexVector kron = kronecker_product(std::vector<ComplexVector>{v1, v2});
  std::size_t cases = 0;
  for (std::uint32_t target = 1; target <= 4; ++target) {
    for (std::uint32_t h = 0; h < target * target * target * target; ++h) {
      const std::uint32_t h10 = h % target, h11 = (h / target) % target;
      const std::uint32_t h20 = (h / target / target) % target, h21 = h / target / target / target;
      for (int s = 0; s < 16; ++s) {
        auto sg = [s](int bit) { return static_cast<std::int8_t>((s >> bit) & 1 ? -1 : 1); };
        FactorList f;
        f.factors = {v1, v2};
        f.sketches.emplace_back(target, std::vector<std::uint32_t>{h10, h11}, std::vector<std::int8_t>{sg(0), sg(1)});
        f.sketches.emplace_back(target, std::vector<std::uint32_t>{h20, h21}, std::vector<std::int8_t>{sg(2), sg(3)});
        const ComplexVector a = sketch::apply(f.sketches[0], v1), b = sketch::apply(f.sketches[1], v2);
        ComplexVector direct(target, 0.0);
        for (std::size_t k = 0; k < target; ++k)
          for (std::size_t j = 0; j < target; ++j) direct[k] += a[j] * b[(k + target - j) % target];
        const ComplexVector oracle = sketch::apply(combined_sketch_oracle(f), kron);
        ASSERT_LT(max_abs_diff(oracle, direct), 1e-14);
        ASSERT_LT(max_abs_diff(tensor_sketch(f), direct), 1e-12);
        ++cases;
      }
    }
  }
  EXPECT_EQ(cases, 16U * (1 + 16 + 81 + 256));
}

TEST(CombinedOracle, SingleFactorIsItself) {
  Rng rng(12);
  const FactorList f = random_factors(1, 6, 5, rng);
  const CountSketchMatrix c = combined_sketch_oracle(f);
  EXPECT_TRUE(std::equal(c.rows().begin(), c.rows().end(), f.sketches[0].rows().begin()));
  EXPECT_TRUE(std::equal(c.signs().begin(), c.signs().end(), f.sketches[0].signs().begin()));
}

TEST(CombinedOracle, ConstantHashes) {
  FactorList f;
  for (int q = 0; q < 3; ++q) {
    f.factors.push_back(ComplexVector(2, 1.0));
    f.sketches.emplace_back(6, std::vector<std::uint32_t>{0, 0}, std::vector<std::int8_t>{1, 1});
  }
  const CountSketchMatrix c = combined_sketch_oracle(f);
  ASSERT_EQ(c.source_dim(), 8U);
  for (std::size_t k = 0; k < 8; ++k) {
    EXPECT_EQ(c.row(k), 0U);
    EXPECT_EQ(c.sign(k), 1);
  }
}

TEST(CombinedOracle, FirstFactorIsMostSignificant) {
  FactorList f;
  f.factors = {ComplexVector(2, 1.0), ComplexVector(3, 1.0)};
  f.sketches.emplace_back(10, std::vector<std::uint32_t>{0, 1}, std::vector<std::int8_t>{1, -1});
  f.sketches.emplace_back(10, std::vector<std::uint32_t>{0, 2, 4}, std::vector<std::int8_t>{1, 1, -1});
  const CountSketchMatrix c = combined_sketch_oracle(f);
  const std::vector<std::uint32_t> rows = {0, 2, 4, 1, 3, 5};
  const std::vector<int> signs = {1, 1, -1, -1, -1, 1};
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ(c.row(k), rows[k]);
    EXPECT_EQ(c.sign(k), signs[k]);
  }
}

TEST(CombinedOracle, RejectsHugeProducts) {
  FactorList f;
  for (int q = 0; q < 25; ++q) {
    f.factors.push_back(ComplexVector(2, 1.0));
    f.sketches.push_back(sample_count_sketch(2, 4, static_cast<std::uint64_t>(q)));
  }
  EXPECT_THROW(combined_sketch_oracle(f), std::invalid_argument);
  EXPECT_NO_THROW(tensor_sketch(f));
}

TEST(TensorSketch, MatchesOracleForAllSmallShapes) {
  Rng rng(13);
  for (std::size_t target : {4, 16, 100}) {
    for (std::size_t q = 1; q <= 6; ++q) {
      for (int trial = 0; trial < 5; ++trial) {
        const FactorList f = random_factors(q, 2, target, rng);
        const ComplexVector kron = kronecker_product(f.factors);
        EXPECT_LT(max_abs_diff(tensor_sketch(f), sketch::apply(combined_sketch_oracle(f), kron)), 1e-10)
            << "K'=" << target << " Q=" << q;
      }
    }
  }
}

TEST(TensorSketch, MixedFactorDimensions) {
  Rng rng(14);
  FactorList f;
  for (std::size_t d : {1, 3, 2, 4}) {
    f.factors.push_back(random_complex(d, rng));
    f.sketches.push_back(sample_count_sketch(d, 7, rng()));
  }
  EXPECT_LT(max_abs_diff(tensor_sketch(f), sketch::apply(combined_sketch_oracle(f), kronecker_product(f.factors))), 1e-10);
}

TEST(TensorSketch, SquaredNormUnbiasedForUnitFactors) {
  constexpr std::size_t kDraws = 100000;
  constexpr std::size_t kTarget = 100;
  Rng rng(15);
  std::vector<ComplexVector> factors;
  for (int q = 0; q < 6; ++q) factors.push_back(real_unit(2, rng));
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 0; t < kDraws; ++t) {
    FactorList f;
    f.factors = factors;
    for (std::uint64_t q = 0; q < 6; ++q) f.sketches.push_back(sample_count_sketch(2, kTarget, derive_seed(15, {t, q})));
    const ComplexVector s = tensor_sketch(f);
    const double norm2 = estimate_inner(s, s).real();
    sum += norm2;
    sum_sq += norm2 * norm2;
  }
  const double n = kDraws;
  const double mean = sum / n, var = (sum_sq - n * mean * mean) / (n - 1.0);
  EXPECT_LT(std::abs(mean - 1.0), 4.0 * std::sqrt(var / n));
}

TEST(Kronecker, OrderAndGuard) {
  const ComplexVector a = {1.0, 2.0}, b = {3.0, 5.0, 7.0};
  const ComplexVector k = kronecker_product(std::vector<ComplexVector>{a, b});
  const ComplexVector expect = {3.0, 5.0, 7.0, 6.0, 10.0, 14.0};
  EXPECT_EQ(k, expect);
  EXPECT_THROW(kronecker_product(std::vector<ComplexVector>{}), std::invalid_argument);
}

}  // namespace
}  // namespace qcll::sketch
