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


#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "../test_util.hpp"
#include "qcll/baseline.hpp"
#include "qcll/data.hpp"
#include "qcll/metrics.hpp"

namespace qcll {
namespace {

using testing::random_real;

TEST(Rmse, TrivialCasesAndDirectFormula) {
  const std::vector<double> a{1.0, -2.0, 3.5};
  EXPECT_EQ(metrics::rmse(a, a), 0.0);
  const std::vector<double> b{1.25, -1.75, 3.75};
  EXPECT_DOUBLE_EQ(metrics::rmse(b, a), 0.25);
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 50;
    const auto p = random_real(n, rng, -3.0, 3.0);
    const auto q = random_real(n, rng, -3.0, 3.0);
    long double s = 0.0L;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<long double>(p[i] - q[i]) * (p[i] - q[i]);
    EXPECT_NEAR(metrics::rmse(p, q), std::sqrt(static_cast<double>(s / n)), 1e-14);
  }
  EXPECT_THROW(metrics::rmse(a, std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(metrics::rmse(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
}

TEST(ClassificationError, Fractions) {
  const std::vector<double> t{0, 1, 2, 1};
  EXPECT_EQ(metrics::classification_error(t, t), 0.0);
  EXPECT_EQ(metrics::classification_error(std::vector<double>{1, 0, 0, 0}, t), 1.0);
  EXPECT_EQ(metrics::classification_error(std::vector<double>{0, 1, 2, 0}, t), 0.25);
  EXPECT_THROW(metrics::classification_error(t, std::vector<double>{0}), std::invalid_argument);
}

TEST(Pearson, IdentitiesAndDegenerateInputs) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_real(2 + rng() % 40, rng, -1.0, 1.0);
    std::vector<double> neg(a.size()), affine(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      neg[i] = -a[i];
      affine[i] = 2.0 * a[i] + 3.0;
    }
    EXPECT_NEAR(metrics::pearson(a, a), 1.0, 1e-12);
    EXPECT_NEAR(metrics::pearson(a, neg), -1.0, 1e-12);
    EXPECT_NEAR(metrics::pearson(a, affine), 1.0, 1e-12);
    const auto b = random_real(a.size(), rng, -1.0, 1.0);
    const double r = metrics::pearson(a, b);
    EXPECT_LE(std::abs(r), 1.0);
    EXPECT_NEAR(r, metrics::pearson(b, a), 1e-14);
  }
  const std::vector<double> c{1.0, 1.0, 1.0};
  EXPECT_THROW(metrics::pearson(c, std::vector<double>{1, 2, 3}), metrics::DegenerateInputError);
  EXPECT_THROW(metrics::pearson(std::vector<double>{1}, std::vector<double>{2}), std::invalid_argument);
}

TEST(Pearson, MatchesHandComputedValue) {
  // x = 1..5, y = (2, 4, 5, 4, 5): sxy = 6, sxx = 10, syy = 6.
  const std::vector<double> x{1, 2, 3, 4, 5}, y{2, 4, 5, 4, 5};
  EXPECT_NEAR(metrics::pearson(x, y), 6.0 / std::sqrt(60.0), 1e-15);
}

TEST(MeanStd, Values) {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_EQ(metrics::mean(v), 5.0);
  EXPECT_NEAR(metrics::stddev(v), std::sqrt(32.0 / 7.0), 1e-15);
  EXPECT_EQ(metrics::stddev(std::vector<double>{3.0}), 0.0);
  EXPECT_THROW(metrics::mean(std::vector<double>{}), std::invalid_argument);
}

Eigen::MatrixXd column(const std::vector<double>& x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

TEST(PolyBasis, ColumnsMatchListedMonomials) {
  Rng rng(3);
  const auto x = random_real(20, rng, -1.0, 1.0);
  const Eigen::MatrixXd B = baseline::poly_basis(column(x), EncodingSpec::uniform(1, 6));
  ASSERT_EQ(B.cols(), 7);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double v = x[n], s = std::sqrt(1.0 - v * v);
    const double expect[7] = {std::pow(v, 6),     std::pow(v, 5) * s,     std::pow(v, 4) * s * s, std::pow(v * s, 3),
                              v * v * std::pow(s, 4), v * std::pow(s, 5), std::pow(1.0 - v * v, 3)};
    for (int a = 0; a < 7; ++a) EXPECT_NEAR(B(static_cast<Eigen::Index>(n), a), expect[a], 1e-14);
  }
  EXPECT_THROW(baseline::poly_basis(column({1.5}), EncodingSpec::uniform(1, 6)), std::domain_error);
  EXPECT_THROW(baseline::poly_basis(Eigen::MatrixXd::Zero(2, 2), EncodingSpec::uniform(1, 6)), std::invalid_argument);
}

// x^2 = x^2 (x^2 + s^2)^2 = x^6 + 2 x^4 s^2 + x^2 s^4, so x^2 is in the span
// with coefficients (1, 0, 2, 0, 1, 0, 0).
TEST(PolyBasis, SquareLiesInSpan) {
  Rng rng(4);
  const auto x = random_real(30, rng, -1.0, 1.0);
  Eigen::VectorXd c(7);
  c << 1, 0, 2, 0, 1, 0, 0;
  const Eigen::VectorXd fit = baseline::poly_basis(column(x), EncodingSpec::uniform(1, 6)) * c;
  for (std::size_t n = 0; n < x.size(); ++n) EXPECT_NEAR(fit(static_cast<Eigen::Index>(n)), x[n] * x[n], 1e-14);
}

TEST(PolyBasis, TensorProductOrdering) {
  Eigen::MatrixXd X(1, 2);
  X << 0.3, -0.6;
  const Eigen::MatrixXd B = baseline::poly_basis(X, EncodingSpec{{1, 2}});
  ASSERT_EQ(B.cols(), 6);
  const double s0 = std::sqrt(1 - 0.09), s1 = std::sqrt(1 - 0.36);
  const double f0[2] = {0.3, s0}, f1[3] = {0.36, -0.6 * s1, s1 * s1};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(B(0, i * 3 + j), f0[i] * f1[j], 1e-15);
}

TEST(PolyOls, NoiselessSquareFitsExactly) {
  Rng rng(5);
  const data::Dataset ds = data::gen_regression(data::TargetFunction::kSquare, 100, 0.0, rng);
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ds.y.data(), 100);
  const auto model = baseline::PolyOlsModel::fit(ds.X, y, EncodingSpec::uniform(1, 6));
  const Eigen::VectorXd pred = model.predict(ds.X);
  EXPECT_LT(std::sqrt((pred - y).squaredNorm() / 100.0), 1e-8);
}

TEST(PolyOls, SevenPointsInterpolate) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_real(7, rng, -0.95, 0.95);
    const auto y = random_real(7, rng, -2.0, 2.0);
    const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), 7);
    const auto model = baseline::PolyOlsModel::fit(column(x), yv, EncodingSpec::uniform(1, 6));
    const Eigen::MatrixXd B = baseline::poly_basis(column(x), EncodingSpec::uniform(1, 6));
    const double cond = [&] {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
      return svd.singularValues()(0) / svd.singularValues()(6);
    }();
    EXPECT_LT((model.predict(column(x)) - yv).cwiseAbs().maxCoeff(), 1e-15 * cond * 100.0) << "cond " << cond;
  }
}

TEST(PolyOls, ZeroTargetsAndResidualOrthogonality) {
  Rng rng(7);
  const auto x = random_real(40, rng, -1.0, 1.0);
  const auto zero = baseline::PolyOlsModel::fit(column(x), Eigen::VectorXd::Zero(40), EncodingSpec::uniform(1, 6));
  EXPECT_EQ(zero.coefficients().cwiseAbs().maxCoeff(), 0.0);
  // Normal equations: the residual is orthogonal to every basis column.
  const auto y = random_real(40, rng, -1.0, 1.0);
  const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), 40);
  const auto model = baseline::PolyOlsModel::fit(column(x), yv, EncodingSpec::uniform(1, 6));
  const Eigen::MatrixXd B = baseline::poly_basis(column(x), EncodingSpec::uniform(1, 6));
  EXPECT_LT((B.transpose() * (yv - model.predict(column(x)))).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(PolyOls, RankDeficientGivesMinimumNormSolution) {
  // Two distinct points for seven columns: the fit interpolates and the
  // coefficients match the pseudo-inverse.
  const Eigen::MatrixXd X = column({-0.5, 0.25});
  const Eigen::VectorXd y = Eigen::Vector2d(1.0, -1.0);
  const auto model = baseline::PolyOlsModel::fit(X, y, EncodingSpec::uniform(1, 6));
  const Eigen::MatrixXd B = baseline::poly_basis(X, EncodingSpec::uniform(1, 6));
  const Eigen::VectorXd pinv = B.transpose() * (B * B.transpose()).ldlt().solve(y);
  EXPECT_LT((model.coefficients() - pinv).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((model.predict(X) - y).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PolyOls, Guards) {
  EXPECT_THROW(baseline::PolyOlsModel::fit(Eigen::MatrixXd(0, 1), Eigen::MatrixXd(0, 1), EncodingSpec::uniform(1, 6)),
               std::invalid_argument);
  EXPECT_THROW(baseline::PolyOlsModel::fit(column({0.1}), Eigen::MatrixXd::Zero(2, 1), EncodingSpec::uniform(1, 6)),
               std::invalid_argument);
  EXPECT_THROW(baseline::PolyOlsModel::from_coefficients(EncodingSpec::uniform(1, 6), Eigen::MatrixXd::Zero(6, 1)),
               std::invalid_argument);
}

TEST(OneHot, Layout) {
  const Eigen::MatrixXd h = baseline::one_hot({2, 0, 1}, 3);
  EXPECT_EQ(h, (Eigen::MatrixXd(3, 3) << 0, 0, 1, 1, 0, 0, 0, 1, 0).finished());
  EXPECT_THROW(baseline::one_hot({3}, 3), std::invalid_argument);
  EXPECT_THROW(baseline::one_hot({-1}, 3), std::invalid_argument);
}

}  // namespace
}  // namespace qcll
