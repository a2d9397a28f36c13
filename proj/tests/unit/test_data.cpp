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


#include "qcll/data.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

#include "../test_util.hpp"
#include "qcll/encoding.hpp"

namespace qcll::data {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) { return fs::path(::testing::TempDir()) / ("qcll_data_" + name); }

fs::path write_text(const std::string& name, const std::string& text) {
  const fs::path p = temp_file(name);
  std::ofstream(p) << text;
  return p;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

TEST(TargetFunctions, ParseAndEvaluate) {
  EXPECT_EQ(parse_target_function("x2"), TargetFunction::kSquare);
  EXPECT_EQ(parse_target_function("abs"), TargetFunction::kAbs);
  EXPECT_THROW(parse_target_function("cube"), std::invalid_argument);
  for (auto fn : {TargetFunction::kSquare, TargetFunction::kExp, TargetFunction::kSin, TargetFunction::kAbs})
    EXPECT_EQ(parse_target_function(to_string(fn)), fn);
  EXPECT_EQ(evaluate(TargetFunction::kAbs, -0.3), 0.3);
  EXPECT_EQ(evaluate(TargetFunction::kSquare, -0.5), 0.25);
  EXPECT_EQ(evaluate(TargetFunction::kExp, 0.0), 1.0);
  EXPECT_EQ(evaluate(TargetFunction::kSin, 0.2), std::sin(0.2));
  EXPECT_EQ(parse_task_kind("classification"), TaskKind::kClassification);
  EXPECT_THROW(parse_task_kind("ranking"), std::invalid_argument);
}

TEST(GenRegression, NoiselessTargetsAreExact) {
  Rng rng(1);
  for (auto fn : {TargetFunction::kSquare, TargetFunction::kExp, TargetFunction::kSin, TargetFunction::kAbs}) {
    const Dataset ds = gen_regression(fn, 200, 0.0, rng);
    ASSERT_EQ(ds.size(), 200U);
    for (std::size_t n = 0; n < ds.size(); ++n) {
      const double x = ds.X(static_cast<Eigen::Index>(n), 0);
      EXPECT_GE(x, -1.0);
      EXPECT_LE(x, 1.0);
      EXPECT_EQ(ds.y[n], evaluate(fn, x));
    }
  }
}

TEST(GenRegression, NoiseMoments) {
  Rng rng(2);
  const Dataset ds = gen_regression(TargetFunction::kSquare, 10000, 0.2, rng);
  std::vector<double> r(ds.size());
  for (std::size_t n = 0; n < ds.size(); ++n) r[n] = ds.y[n] - evaluate(TargetFunction::kSquare, ds.X(static_cast<Eigen::Index>(n), 0));
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / 10000.0;
  double var = 0.0;
  for (double v : r) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / 9999.0);
  EXPECT_GE(sd, 0.19);
  EXPECT_LE(sd, 0.21);
  EXPECT_LT(std::abs(mean), 4.0 * sd / 100.0);
}

TEST(GenRegression, Guards) {
  Rng rng(3);
  EXPECT_THROW(gen_regression(TargetFunction::kSquare, 0, 0.0, rng), std::invalid_argument);
  EXPECT_THROW(gen_regression(TargetFunction::kSquare, 5, -0.1, rng), std::invalid_argument);
}

TEST(GenRegression, DeterministicUnderSeed) {
  Rng a(4), b(4);
  const Dataset da = gen_regression(TargetFunction::kSin, 50, 0.1, a);
  const Dataset db = gen_regression(TargetFunction::kSin, 50, 0.1, b);
  EXPECT_EQ(da.X, db.X);
  EXPECT_EQ(da.y, db.y);
}

TEST(GenClassification, GeometryAndCounts) {
  Rng rng(5);
  const Dataset ds = gen_classification(100, rng);
  ASSERT_EQ(ds.size(), 200U);
  EXPECT_EQ(ds.kind, TaskKind::kClassification);
  EXPECT_EQ(ds.num_classes(), 2U);
  std::size_t counts[2] = {0, 0};
  for (std::size_t n = 0; n < ds.size(); ++n) {
    const double x1 = ds.X(static_cast<Eigen::Index>(n), 0), x2 = ds.X(static_cast<Eigen::Index>(n), 1);
    const double r2 = x1 * x1 + x2 * x2;
    EXPECT_LE(std::max(std::abs(x1), std::abs(x2)), 1.0);
    EXPECT_FALSE(r2 > kInnerRadius * kInnerRadius && r2 < kOuterRadius * kOuterRadius) << "point in the margin";
    const auto label = static_cast<std::size_t>(ds.y[n]);
    ++counts[label];
    if (label == 1) {
      EXPECT_LE(r2, 0.3025);
    } else {
      EXPECT_GE(r2, 0.65 * 0.65);
    }
  }
  EXPECT_EQ(counts[0], 100U);
  EXPECT_EQ(counts[1], 100U);
  EXPECT_THROW(gen_classification(0, rng), std::invalid_argument);
}

// Inner points are uniform on the disk, so P(r <= R/sqrt(2)) = 1/2.
TEST(GenClassification, InnerClassUniformOnDisk) {
  Rng rng(6);
  const Dataset ds = gen_classification(5000, rng);
  std::size_t inner = 0, close = 0;
  for (std::size_t n = 0; n < ds.size(); ++n) {
    if (ds.y[n] != 1.0) continue;
    ++inner;
    const double r = ds.X.row(static_cast<Eigen::Index>(n)).norm();
    if (r <= kInnerRadius / std::sqrt(2.0)) ++close;
  }
  const double frac = static_cast<double>(close) / static_cast<double>(inner);
  EXPECT_LT(std::abs(frac - 0.5), 4.0 * std::sqrt(0.25 / static_cast<double>(inner)));
}

TEST(Delimited, RoundTripIsBitExact) {
  Dataset ds;
  ds.X.resize(3, 2);
  ds.X << 0.1, -2.5e-7, 1.0 / 3.0, 12345.678, -0.0, 6.02214076e23;
  ds.y = {std::sqrt(2.0), -1.0 / 7.0, 1e-300};
  ds.feature_names = {"a", "b"};
  ds.target_name = "t";
  const fs::path p = temp_file("roundtrip.csv");
  save_delimited(ds, p);
  const Dataset back = load_delimited(p, std::string("t"), TaskKind::kRegression);
  EXPECT_EQ(back.X, ds.X);
  EXPECT_EQ(back.y, ds.y);
  EXPECT_EQ(back.feature_names, ds.feature_names);
  const Dataset by_index = load_delimited(p, std::size_t{2}, TaskKind::kRegression);
  EXPECT_EQ(by_index.y, ds.y);
}

TEST(Delimited, ClassLabelsRoundTrip) {
  Rng rng(7);
  const Dataset ds = gen_classification(5, rng);
  const fs::path p = temp_file("classes.csv");
  save_delimited(ds, p);
  const Dataset back = load_delimited(p, std::size_t{2}, TaskKind::kClassification);
  EXPECT_EQ(back.X, ds.X);
  // Labels are re-indexed by first appearance; names follow the indices.
  for (std::size_t n = 0; n < ds.size(); ++n)
    EXPECT_EQ(back.class_names[static_cast<std::size_t>(back.y[n])], ds.class_names[static_cast<std::size_t>(ds.y[n])]);
}

TEST(Delimited, MalformedCellNamesRowAndColumn) {
  const fs::path p = write_text("bad.csv", "f1,f2,y\n1,2,3\n4,abc,6\n");
  const std::string msg = error_of([&] { load_delimited(p, std::string("y"), TaskKind::kRegression); });
  EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'f2'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("abc"), std::string::npos) << msg;
}

TEST(Delimited, StructuralErrors) {
  const auto load = [](const fs::path& p) { load_delimited(p, std::size_t{1}, TaskKind::kRegression); };
  EXPECT_THROW(load(temp_file("missing.csv")), std::runtime_error);
  EXPECT_THROW(load(write_text("empty.csv", "")), std::runtime_error);
  EXPECT_THROW(load(write_text("header_only.csv", "a,b\n")), std::runtime_error);
  EXPECT_THROW(load(write_text("ragged.csv", "a,b\n1,2\n3\n")), std::runtime_error);
  EXPECT_THROW(load(write_text("nan.csv", "a,b\n1,nan\n")), std::runtime_error);
  EXPECT_THROW(load_delimited(write_text("col.csv", "a,b\n1,2\n"), std::string("c"), TaskKind::kRegression),
               std::runtime_error);
  EXPECT_THROW(load_delimited(write_text("col2.csv", "a,b\n1,2\n"), std::size_t{2}, TaskKind::kRegression),
               std::runtime_error);
}

TEST(Delimited, IrisFixture) {
  const Dataset ds = load_delimited(fs::path(QCLL_FIXTURE_DIR) / "iris.csv", std::string("species"),
                                    TaskKind::kClassification);
  EXPECT_EQ(ds.size(), 150U);
  EXPECT_EQ(ds.dim(), 4U);
  ASSERT_EQ(ds.num_classes(), 3U);
  EXPECT_EQ(ds.class_names[0], "setosa");
  EXPECT_EQ(ds.class_names[1], "versicolor");
  EXPECT_EQ(ds.class_names[2], "virginica");
  EXPECT_EQ(ds.y.front(), 0.0);
  EXPECT_EQ(ds.y.back(), 2.0);
}

TEST(Scaling, MapsRangeAndHandlesConstants) {
  Dataset ds;
  ds.X.resize(3, 2);
  ds.X << 0, 3, 5, 3, 10, 3;
  ds.y = {1, 2, 3};
  ds.feature_names = {"a", "b"};
  const auto [scaled, stats] = minmax_scale(ds);
  EXPECT_EQ(scaled.X(0, 0), -1.0);
  EXPECT_EQ(scaled.X(1, 0), 0.0);
  EXPECT_EQ(scaled.X(2, 0), 1.0);
  for (Eigen::Index n = 0; n < 3; ++n) EXPECT_EQ(scaled.X(n, 1), 0.0);
  EXPECT_EQ(scaled.y, ds.y);
  Eigen::MatrixXd test(2, 2);
  test << 12, 3, -4, 7;
  const Eigen::MatrixXd t = apply_scale(stats, test);
  EXPECT_EQ(t(0, 0), 1.0);
  EXPECT_EQ(t(1, 0), -1.0);
  EXPECT_EQ(t(1, 1), 0.0);
  EXPECT_THROW(apply_scale(stats, Eigen::MatrixXd::Zero(1, 3)), std::invalid_argument);
  EXPECT_THROW(fit_scaling(Eigen::MatrixXd::Zero(0, 2)), std::invalid_argument);
}

TEST(Scaling, ScaledDataAlwaysEncodes) {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    Dataset train;
    train.X = testing::random_inputs(20, 3, rng) * 50.0;
    train.y.assign(20, 0.0);
    train.feature_names = {"a", "b", "c"};
    const auto [scaled, stats] = minmax_scale(train);
    const Eigen::MatrixXd test = apply_scale(stats, Eigen::MatrixXd(testing::random_inputs(10, 3, rng) * 80.0));
    for (const Eigen::MatrixXd* m : {&scaled.X, &test}) {
      EXPECT_LE(m->cwiseAbs().maxCoeff(), 1.0);
      for (Eigen::Index n = 0; n < m->rows(); ++n) {
        std::vector<double> row(3);
        for (Eigen::Index d = 0; d < 3; ++d) row[static_cast<std::size_t>(d)] = (*m)(n, d);
        EXPECT_NO_THROW(encoding_factors(row, EncodingSpec::uniform(3, 2)));
      }
    }
  }
}

TEST(Split, SizesPartitionAndDeterminism) {
  Rng rng(9);
  Dataset ds = gen_regression(TargetFunction::kSin, 100, 0.0, rng);
  for (std::size_t n = 0; n < 100; ++n) ds.y[n] = static_cast<double>(n);  // row ids
  Rng r1(10), r2(10);
  const auto [train, test] = split(ds, 0.2, r1);
  const auto [train2, test2] = split(ds, 0.2, r2);
  EXPECT_EQ(test.size(), 20U);
  EXPECT_EQ(train.size(), 80U);
  EXPECT_EQ(test.y, test2.y);
  EXPECT_EQ(train.y, train2.y);
  std::vector<double> all = train.y;
  all.insert(all.end(), test.y.begin(), test.y.end());
  std::sort(all.begin(), all.end());
  for (std::size_t n = 0; n < 100; ++n) EXPECT_EQ(all[n], static_cast<double>(n));
  EXPECT_TRUE(std::is_sorted(train.y.begin(), train.y.end()));
  EXPECT_TRUE(std::is_sorted(test.y.begin(), test.y.end()));
  for (std::size_t n = 0; n < test.size(); ++n)
    EXPECT_EQ(test.X(static_cast<Eigen::Index>(n), 0), ds.X(static_cast<Eigen::Index>(test.y[n]), 0));
}

TEST(Split, Guards) {
  Rng rng(11);
  const Dataset small = gen_regression(TargetFunction::kSin, 4, 0.0, rng);
  EXPECT_THROW(split(small, 0.2, rng), std::invalid_argument);
  const Dataset ok = gen_regression(TargetFunction::kSin, 10, 0.0, rng);
  EXPECT_THROW(split(ok, 0.0, rng), std::invalid_argument);
  EXPECT_THROW(split(ok, 1.0, rng), std::invalid_argument);
}

TEST(Subsample, SizeOrderAndGuards) {
  Rng rng(12);
  Dataset ds = gen_regression(TargetFunction::kSin, 80, 0.0, rng);
  for (std::size_t n = 0; n < 80; ++n) ds.y[n] = static_cast<double>(n);
  const Dataset sub = subsample(ds, 0.1, rng);
  EXPECT_EQ(sub.size(), 8U);
  EXPECT_TRUE(std::is_sorted(sub.y.begin(), sub.y.end()));
  EXPECT_EQ(subsample(ds, 1.0, rng).y, ds.y);
  EXPECT_EQ(subsample(ds, 0.001, rng).size(), 1U);
  EXPECT_THROW(subsample(ds, 0.0, rng), std::invalid_argument);
}

TEST(FeaturePairs, CountsOrderAndContent) {
  EXPECT_EQ(feature_pair_indices(4).size(), 6U);
  EXPECT_EQ(feature_pair_indices(13).size(), 78U);
  EXPECT_THROW(feature_pair_indices(1), std::invalid_argument);
  const auto idx = feature_pair_indices(4);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  EXPECT_EQ(idx.front(), std::make_pair(std::size_t{0}, std::size_t{1}));

  const Dataset iris = load_delimited(fs::path(QCLL_FIXTURE_DIR) / "iris.csv", std::string("species"),
                                      TaskKind::kClassification);
  const auto pairs = feature_pairs(iris);
  ASSERT_EQ(pairs.size(), 6U);
  const Dataset& p01 = pairs[0].data;
  EXPECT_EQ(p01.y, iris.y);
  EXPECT_EQ(p01.X.col(0), iris.X.col(0));
  EXPECT_EQ(p01.X.col(1), iris.X.col(1));
  EXPECT_EQ(p01.feature_names, (std::vector<std::string>{iris.feature_names[0], iris.feature_names[1]}));
  EXPECT_EQ(pairs[5].first, 2U);
  EXPECT_EQ(pairs[5].second, 3U);
}

TEST(DatasetTest, Validation) {
  Dataset ds;
  EXPECT_THROW(ds.validate(), std::invalid_argument);
  ds.X = Eigen::MatrixXd::Zero(2, 1);
  ds.y = {0.0, 1.0};
  ds.feature_names = {"x"};
  EXPECT_NO_THROW(ds.validate());
  ds.X(0, 0) = std::nan("");
  EXPECT_THROW(ds.validate(), std::invalid_argument);
  ds.X(0, 0) = 0.0;
  ds.kind = TaskKind::kClassification;
  ds.class_names = {"only"};
  EXPECT_THROW(ds.validate(), std::invalid_argument);
  EXPECT_THROW(ds.rows({5}), std::invalid_argument);
}

TEST(Linspace, Endpoints) {
  const auto g = linspace(-1.0, 1.0, 201);
  ASSERT_EQ(g.size(), 201U);
  EXPECT_EQ(g.front(), -1.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_NEAR(g[100], 0.0, 1e-15);
  EXPECT_EQ(linspace(0.5, 2.0, 1), std::vector<double>{0.5});
}

}  // namespace
}  // namespace qcll::data
