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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qcll/format.hpp"

namespace qcll::data {

std::string to_string(TaskKind kind) { return kind == TaskKind::kRegression ? "regression" : "classification"; }

TaskKind parse_task_kind(const std::string& name) {
  if (name == "regression") return TaskKind::kRegression;
  if (name == "classification") return TaskKind::kClassification;
  throw std::invalid_argument("unknown task '" + name + "' (expected regression or classification)");
}

void Dataset::validate() const {
  if (y.empty()) throw std::invalid_argument("Dataset: no samples");
  if (static_cast<std::size_t>(X.rows()) != y.size()) {
    throw std::invalid_argument("Dataset: " + std::to_string(X.rows()) + " feature rows but " +
                                std::to_string(y.size()) + " targets");
  }
  if (!feature_names.empty() && feature_names.size() != dim()) {
    throw std::invalid_argument("Dataset: feature name count does not match the feature count");
  }
  if (!X.allFinite()) throw std::invalid_argument("Dataset: non-finite feature value");
  for (double t : y) {
    if (!std::isfinite(t)) throw std::invalid_argument("Dataset: non-finite target");
    if (kind == TaskKind::kClassification &&
        (t < 0.0 || t != std::floor(t) || t >= static_cast<double>(class_names.size()))) {
      throw std::invalid_argument("Dataset: class index " + format_double(t) + " has no class name");
    }
  }
}

Dataset Dataset::rows(const std::vector<std::size_t>& idx) const {
  Dataset out;
  out.feature_names = feature_names;
  out.target_name = target_name;
  out.kind = kind;
  out.class_names = class_names;
  out.X.resize(static_cast<Eigen::Index>(idx.size()), X.cols());
  out.y.reserve(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] >= size()) throw std::invalid_argument("Dataset::rows: row index out of range");
    out.X.row(static_cast<Eigen::Index>(r)) = X.row(static_cast<Eigen::Index>(idx[r]));
    out.y.push_back(y[idx[r]]);
  }
  return out;
}

TargetFunction parse_target_function(const std::string& tag) {
  if (tag == "x2") return TargetFunction::kSquare;
  if (tag == "exp") return TargetFunction::kExp;
  if (tag == "sin") return TargetFunction::kSin;
  if (tag == "abs") return TargetFunction::kAbs;
  throw std::invalid_argument("unknown target function '" + tag + "' (expected x2, exp, sin or abs)");
}

std::string to_string(TargetFunction fn) {
  switch (fn) {
    case TargetFunction::kSquare: return "x2";
    case TargetFunction::kExp: return "exp";
    case TargetFunction::kSin: return "sin";
    case TargetFunction::kAbs: return "abs";
  }
  return "?";
}

double evaluate(TargetFunction fn, double x) noexcept {
  switch (fn) {
    case TargetFunction::kSquare: return x * x;
    case TargetFunction::kExp: return std::exp(x);
    case TargetFunction::kSin: return std::sin(x);
    case TargetFunction::kAbs: return std::abs(x);
  }
  return 0.0;
}

Dataset gen_regression(TargetFunction fn, std::size_t n, double sigma, Rng& rng) {
  if (n == 0) throw std::invalid_argument("gen_regression: n must be >= 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("gen_regression: sigma must be >= 0");
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  Dataset ds;
  ds.X.resize(static_cast<Eigen::Index>(n), 1);
  ds.y.resize(n);
  ds.feature_names = {"x"};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ux(rng);
    ds.X(static_cast<Eigen::Index>(i), 0) = x;
    ds.y[i] = evaluate(fn, x);
    // Draw noise only when requested so that sigma = 0 reproduces f exactly.
    if (sigma > 0.0) ds.y[i] += sigma * noise(rng);
  }
  return ds;
}

Dataset gen_classification(std::size_t n_per_class, Rng& rng) {
  if (n_per_class == 0) throw std::invalid_argument("gen_classification: n_per_class must be >= 1");
  std::uniform_real_distribution<double> square(-1.0, 1.0);
  Dataset ds;
  ds.kind = TaskKind::kClassification;
  ds.feature_names = {"x1", "x2"};
  ds.class_names = {"outer", "inner"};
  ds.X.resize(static_cast<Eigen::Index>(2 * n_per_class), 2);
  ds.y.resize(2 * n_per_class);
  const double outer2 = kOuterRadius * kOuterRadius;
  for (std::size_t i = 0; i < n_per_class; ++i) {
    double x1, x2;
    do {
      x1 = square(rng);
      x2 = square(rng);
    } while (x1 * x1 + x2 * x2 < outer2);
    ds.X(static_cast<Eigen::Index>(i), 0) = x1;
    ds.X(static_cast<Eigen::Index>(i), 1) = x2;
    ds.y[i] = 0.0;
  }
  // Rejection sampling in both regions keeps the membership tests exact.
  std::uniform_real_distribution<double> inner_box(-kInnerRadius, kInnerRadius);
  const double inner2 = kInnerRadius * kInnerRadius;
  for (std::size_t i = n_per_class; i < 2 * n_per_class; ++i) {
    double x1, x2;
    do {
      x1 = inner_box(rng);
      x2 = inner_box(rng);
    } while (x1 * x1 + x2 * x2 > inner2);
    ds.X(static_cast<Eigen::Index>(i), 0) = x1;
    ds.X(static_cast<Eigen::Index>(i), 1) = x2;
    ds.y[i] = 1.0;
  }
  return ds;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos
                                                                                          : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_number(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;
  if (first == last) return false;
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

}  // namespace

Dataset load_delimited(const std::filesystem::path& path, const ColumnRef& target, TaskKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) {
    throw std::runtime_error("data file '" + path.string() + "' is empty");
  }
  const std::vector<std::string> header = split_cells(line);
  std::size_t target_col = 0;
  if (const auto* idx = std::get_if<std::size_t>(&target)) {
    target_col = *idx;
    if (target_col >= header.size()) {
      throw std::runtime_error("data file '" + path.string() + "': target column index " + std::to_string(*idx) +
                               " out of range (" + std::to_string(header.size()) + " columns)");
    }
  } else {
    const auto& name = std::get<std::string>(target);
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw std::runtime_error("data file '" + path.string() + "': no column named '" + name + "'");
    }
    target_col = static_cast<std::size_t>(it - header.begin());
  }
  if (header.size() < 2) throw std::runtime_error("data file '" + path.string() + "' needs at least 2 columns");

  Dataset ds;
  ds.kind = kind;
  ds.target_name = header[target_col];
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != target_col) ds.feature_names.push_back(header[c]);

  std::vector<double> features;
  std::unordered_map<std::string, std::size_t> label_index;
  std::size_t line_no = 1;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++row;
    const std::vector<std::string> cells = split_cells(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error("data file '" + path.string() + "': row " + std::to_string(row) + " (line " +
                               std::to_string(line_no) + ") has " + std::to_string(cells.size()) +
                               " cells, expected " + std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == target_col && kind == TaskKind::kClassification) {
        const auto [it, inserted] = label_index.emplace(cells[c], ds.class_names.size());
        if (inserted) ds.class_names.push_back(cells[c]);
        ds.y.push_back(static_cast<double>(it->second));
        continue;
      }
      double v = 0.0;
      if (!parse_number(cells[c], v)) {
        throw std::runtime_error("data file '" + path.string() + "': row " + std::to_string(row) + " (line " +
                                 std::to_string(line_no) + "), column '" + header[c] + "': cannot parse '" +
                                 cells[c] + "' as a number");
      }
      if (c == target_col) {
        ds.y.push_back(v);
      } else {
        features.push_back(v);
      }
    }
  }
  if (row == 0) throw std::runtime_error("data file '" + path.string() + "' has a header but no data rows");
  const auto d = static_cast<Eigen::Index>(ds.feature_names.size());
  ds.X = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      features.data(), static_cast<Eigen::Index>(row), d);
  ds.validate();
  return ds;
}

void save_delimited(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write data file '" + path.string() + "'");
  for (std::size_t c = 0; c < ds.dim(); ++c)
    out << (c < ds.feature_names.size() ? ds.feature_names[c] : "x" + std::to_string(c)) << ',';
  out << ds.target_name << '\n';
  for (std::size_t r = 0; r < ds.size(); ++r) {
    for (std::size_t c = 0; c < ds.dim(); ++c)
      out << format_double(ds.X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) << ',';
    if (ds.kind == TaskKind::kClassification && !ds.class_names.empty()) {
      out << ds.class_names[static_cast<std::size_t>(ds.y[r])] << '\n';
    } else {
      out << format_double(ds.y[r]) << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed while writing '" + path.string() + "'");
}

double ScalingStats::apply(std::size_t feature, double v) const {
  const double lo = min[feature];
  const double hi = max[feature];
  if (hi == lo) return 0.0;
  return std::clamp(2.0 * (v - lo) / (hi - lo) - 1.0, -1.0, 1.0);
}

ScalingStats fit_scaling(const Eigen::MatrixXd& X) {
  if (X.rows() == 0) throw std::invalid_argument("fit_scaling: empty dataset");
  ScalingStats s;
  for (Eigen::Index c = 0; c < X.cols(); ++c) {
    s.min.push_back(X.col(c).minCoeff());
    s.max.push_back(X.col(c).maxCoeff());
  }
  return s;
}

Eigen::MatrixXd apply_scale(const ScalingStats& stats, const Eigen::MatrixXd& X) {
  if (static_cast<std::size_t>(X.cols()) != stats.min.size()) {
    throw std::invalid_argument("apply_scale: expected " + std::to_string(stats.min.size()) + " features");
  }
  Eigen::MatrixXd out(X.rows(), X.cols());
  for (Eigen::Index r = 0; r < X.rows(); ++r)
    for (Eigen::Index c = 0; c < X.cols(); ++c) out(r, c) = stats.apply(static_cast<std::size_t>(c), X(r, c));
  return out;
}

Dataset apply_scale(const ScalingStats& stats, const Dataset& other) {
  Dataset out = other;
  out.X = apply_scale(stats, other.X);
  return out;
}

std::pair<Dataset, ScalingStats> minmax_scale(const Dataset& train) {
  if (train.size() == 0) throw std::invalid_argument("minmax_scale: empty dataset");
  ScalingStats stats = fit_scaling(train.X);
  return {apply_scale(stats, train), std::move(stats)};
}

namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction, Rng& rng) {
  if (ds.size() < 5) throw std::invalid_argument("split: need at least 5 rows, got " + std::to_string(ds.size()));
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw std::invalid_argument("split: fraction must be in (0, 1)");
  const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(ds.size()) * test_fraction));
  std::vector<std::size_t> idx = shuffled_indices(ds.size(), rng);
  std::vector<std::size_t> test(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
  std::vector<std::size_t> train(idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {ds.rows(train), ds.rows(test)};
}

Dataset subsample(const Dataset& ds, double fraction, Rng& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("subsample: fraction must be in (0, 1]");
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(ds.size()) * fraction)));
  std::vector<std::size_t> idx = shuffled_indices(ds.size(), rng);
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return ds.rows(idx);
}

std::vector<std::pair<std::size_t, std::size_t>> feature_pair_indices(std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("feature_pairs: need at least 2 features, got " + std::to_string(dim));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) pairs.emplace_back(i, j);
  return pairs;
}

Dataset select_features(const Dataset& ds, const std::vector<std::size_t>& columns) {
  Dataset out = ds;
  out.X.resize(ds.X.rows(), static_cast<Eigen::Index>(columns.size()));
  out.feature_names.clear();
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] >= ds.dim()) throw std::invalid_argument("select_features: column out of range");
    out.X.col(static_cast<Eigen::Index>(k)) = ds.X.col(static_cast<Eigen::Index>(columns[k]));
    if (!ds.feature_names.empty()) out.feature_names.push_back(ds.feature_names[columns[k]]);
  }
  return out;
}

std::vector<FeaturePair> feature_pairs(const Dataset& ds) {
  std::vector<FeaturePair> out;
  for (const auto& [i, j] : feature_pair_indices(ds.dim())) out.push_back({i, j, select_features(ds, {i, j})});
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Interpolate from both ends so the endpoints are exact.
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = (1.0 - t) * lo + t * hi;
  }
  v[n - 1] = hi;
  return v;
}

}  // namespace qcll::data
