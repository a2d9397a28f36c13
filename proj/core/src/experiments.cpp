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


#include "qcll/experiments.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "qcll/format.hpp"
#include "qcll/metrics.hpp"
#include "qcll/qcl_reference.hpp"
#include "qcll/random.hpp"

namespace qcll::experiments {

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto guarded = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t n_threads = std::min(std::max<std::size_t>(workers, 1), count);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) guarded(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

const std::vector<std::string>& metadata_columns() {
  static const std::vector<std::string> cols = {"suite",  "task",  "dataset", "fn",      "model",
                                                "variant", "n_train", "sigma", "qubits", "depth",
                                                "angles", "outputs", "sketch_dim", "r_percent", "threshold"};
  return cols;
}

MetricReport MetricReport::make(std::map<std::string, std::string> metadata, std::string metric,
                                std::vector<double> values) {
  MetricReport r;
  r.metadata = std::move(metadata);
  r.metric = std::move(metric);
  r.values = std::move(values);
  std::vector<double> finite;
  for (double v : r.values)
    if (!std::isnan(v)) finite.push_back(v);
  if (finite.empty()) {
    r.mean = r.stddev = std::numeric_limits<double>::quiet_NaN();
  } else {
    r.mean = metrics::mean(finite);
    r.stddev = metrics::stddev(finite);
  }
  return r;
}

std::string MetricReport::get(const std::string& key) const {
  const auto it = metadata.find(key);
  return it == metadata.end() ? std::string() : it->second;
}

void write_results_csv(const std::vector<MetricReport>& reports, std::ostream& out) {
  for (const auto& c : metadata_columns()) out << c << ',';
  out << "metric,count,mean,std,values\n";
  for (const auto& r : reports) {
    for (const auto& c : metadata_columns()) out << r.get(c) << ',';
    out << r.metric << ',' << r.values.size() << ',' << format_double(r.mean) << ',' << format_double(r.stddev) << ',';
    for (std::size_t i = 0; i < r.values.size(); ++i) out << (i ? ";" : "") << format_double(r.values[i]);
    out << '\n';
  }
}

nlohmann::json reports_to_json(const std::vector<MetricReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    for (const auto& [k, v] : r.metadata) j[k] = v;
    j["metric"] = r.metric;
    j["values"] = r.values;
    j["mean"] = r.mean;
    j["std"] = r.stddev;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<MetricReport> select(const std::vector<MetricReport>& reports,
                                 const std::map<std::string, std::string>& where) {
  std::vector<MetricReport> out;
  for (const auto& r : reports) {
    bool match = true;
    for (const auto& [k, v] : where) {
      if ((k == "metric" ? r.metric : r.get(k)) != v) {
        match = false;
        break;
      }
    }
    if (match) out.push_back(r);
  }
  return out;
}

namespace {

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

/// Model-shape columns shared by every suite.
std::map<std::string, std::string> model_metadata(const LearnerSettings& s, std::size_t input_dim,
                                                  std::size_t heads) {
  std::map<std::string, std::string> m;
  m["model"] = to_string(s.model);
  m["qubits"] = std::to_string(s.qubits_per_dim * input_dim);
  if (s.model == ModelKind::kBaseline) return m;
  m["depth"] = std::to_string(s.depth);
  if (s.model == ModelKind::kQcl) {
    m["angles"] = std::to_string(s.qubits_per_dim * input_dim * s.depth);
    return m;
  }
  m["angles"] = std::to_string(s.resolved_angles(input_dim));
  m["outputs"] = std::to_string(s.resolved_outputs(heads));
  m["sketch_dim"] = std::to_string(s.sketch_dim);
  m["variant"] = to_string(s.variant);
  return m;
}

double mean_initial_cost(const optimize::TrainResult& r) {
  double s = 0.0;
  for (const auto& t : r.traces) s += t.costs.front();
  return s / static_cast<double>(r.traces.size());
}

Eigen::MatrixXd column(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double accuracy(const std::vector<double>& pred, const std::vector<double>& truth) {
  return 1.0 - metrics::classification_error(pred, truth);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

RegressionSuiteConfig RegressionSuiteConfig::regression() { return RegressionSuiteConfig{}; }

RegressionSuiteConfig RegressionSuiteConfig::samplesize() {
  RegressionSuiteConfig c;
  c.name = "samplesize";
  c.functions = {data::TargetFunction::kSquare};
  c.sample_sizes = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  return c;
}

RegressionSuiteConfig RegressionSuiteConfig::noise() {
  RegressionSuiteConfig c;
  c.name = "noise";
  c.functions = {data::TargetFunction::kSquare};
  c.noise_levels.clear();
  for (int k = 0; k <= 9; ++k) c.noise_levels.push_back(0.05 * k);
  return c;
}

void RegressionSuiteConfig::validate() const {
  if (functions.empty() || models.empty() || sample_sizes.empty() || noise_levels.empty()) {
    throw std::invalid_argument("regression suite: functions, models, sample sizes and noise levels must be nonempty");
  }
  if (seeds == 0) throw std::invalid_argument("regression suite: seeds must be >= 1");
  if (grid_size < 2) throw std::invalid_argument("regression suite: grid size must be >= 2");
  for (std::size_t n : sample_sizes)
    if (n == 0) throw std::invalid_argument("regression suite: sample sizes must be >= 1");
  for (double s : noise_levels)
    if (!(s >= 0.0)) throw std::invalid_argument("regression suite: noise levels must be >= 0");
  for (ModelKind m : models) {
    LearnerSettings s = learner;
    s.model = m;
    s.validate(1);
  }
}

std::vector<MetricReport> run_regression_suite(const RegressionSuiteConfig& config) {
  config.validate();
  struct Cell {
    data::TargetFunction fn;
    std::size_t n;
    double sigma;
    ModelKind model;
  };
  std::vector<Cell> cells;
  for (auto fn : config.functions)
    for (std::size_t n : config.sample_sizes)
      for (double sigma : config.noise_levels)
        for (ModelKind m : config.models) cells.push_back({fn, n, sigma, m});

  const std::size_t seeds = config.seeds;
  std::vector<double> rmse(cells.size() * seeds), train_mse(cells.size() * seeds), init_mse(cells.size() * seeds);
  const std::vector<double> grid = data::linspace(-1.0, 1.0, config.grid_size);
  const Eigen::MatrixXd grid_x = column(grid);

  parallel_for(cells.size() * seeds, config.workers, [&](std::size_t item) {
    const Cell& cell = cells[item / seeds];
    const std::uint64_t s = item % seeds;
    const auto fn_tag = static_cast<std::uint64_t>(cell.fn);
    Rng data_rng(derive_seed(config.master_seed, {1, fn_tag, cell.n, bits(cell.sigma), s}));
    const data::Dataset train = data::gen_regression(cell.fn, cell.n, cell.sigma, data_rng);

    LearnerSettings settings = config.learner;
    settings.model = cell.model;
    settings.structure_seed = derive_seed(config.master_seed, {2, fn_tag, cell.n, bits(cell.sigma), s});
    settings.train.seed = derive_seed(config.master_seed, {3, fn_tag, cell.n, bits(cell.sigma), s});
    const FitOutcome fit = fit_model(settings, train);

    std::vector<double> truth(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) truth[k] = data::evaluate(cell.fn, grid[k]);
    rmse[item] = metrics::rmse(fit.model.predict(grid_x), truth);
    const std::vector<double> fitted = fit.model.predict(train.X);
    const double r = metrics::rmse(fitted, train.y);
    train_mse[item] = r * r;
    init_mse[item] = fit.training ? mean_initial_cost(*fit.training) / static_cast<double>(cell.n) : kNaN;
  });

  std::vector<MetricReport> reports;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    LearnerSettings settings = config.learner;
    settings.model = cell.model;
    auto meta = model_metadata(settings, 1, 1);
    meta["suite"] = config.name;
    meta["task"] = "regression";
    meta["fn"] = data::to_string(cell.fn);
    meta["n_train"] = std::to_string(cell.n);
    meta["sigma"] = format_double(cell.sigma);
    const auto slice = [&](const std::vector<double>& v) {
      return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(c * seeds),
                                 v.begin() + static_cast<std::ptrdiff_t>((c + 1) * seeds));
    };
    reports.push_back(MetricReport::make(meta, "rmse", slice(rmse)));
    reports.push_back(MetricReport::make(meta, "train_mse", slice(train_mse)));
    if (cell.model != ModelKind::kBaseline) reports.push_back(MetricReport::make(meta, "init_mse", slice(init_mse)));
  }
  return reports;
}

ClassificationSuiteConfig::ClassificationSuiteConfig() {
  learner.qubits_per_dim = 3;
  learner.depth = 3;
}

void ClassificationSuiteConfig::validate() const {
  if (models.empty()) throw std::invalid_argument("classification suite: no models");
  if (n_per_class == 0 || seeds == 0) throw std::invalid_argument("classification suite: sizes must be >= 1");
  for (ModelKind m : models) {
    LearnerSettings s = learner;
    s.model = m;
    s.validate(2);
  }
}

std::vector<MetricReport> run_classification_suite(const ClassificationSuiteConfig& config) {
  config.validate();
  const std::size_t seeds = config.seeds;
  const std::size_t items = config.models.size() * seeds;
  std::vector<double> train_acc(items), test_acc(items), train_loss(items);

  parallel_for(items, config.workers, [&](std::size_t item) {
    const ModelKind model = config.models[item / seeds];
    const std::uint64_t s = item % seeds;
    Rng train_rng(derive_seed(config.master_seed, {10, s}));
    Rng test_rng(derive_seed(config.master_seed, {11, s}));
    const data::Dataset train = data::gen_classification(config.n_per_class, train_rng);
    const data::Dataset test = data::gen_classification(config.n_per_class, test_rng);

    LearnerSettings settings = config.learner;
    settings.model = model;
    settings.structure_seed = derive_seed(config.master_seed, {12, s});
    settings.train.seed = derive_seed(config.master_seed, {13, s});
    const FitOutcome fit = fit_model(settings, train);
    train_acc[item] = accuracy(fit.model.predict(train.X), train.y);
    test_acc[item] = accuracy(fit.model.predict(test.X), test.y);
    train_loss[item] = fit.training ? fit.training->best_cost / static_cast<double>(train.size()) : kNaN;
  });

  std::vector<MetricReport> reports;
  for (std::size_t m = 0; m < config.models.size(); ++m) {
    LearnerSettings settings = config.learner;
    settings.model = config.models[m];
    auto meta = model_metadata(settings, 2, 2);
    meta["suite"] = "classification";
    meta["task"] = "classification";
    meta["n_train"] = std::to_string(2 * config.n_per_class);
    const auto slice = [&](const std::vector<double>& v) {
      return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(m * seeds),
                                 v.begin() + static_cast<std::ptrdiff_t>((m + 1) * seeds));
    };
    reports.push_back(MetricReport::make(meta, "train_accuracy", slice(train_acc)));
    reports.push_back(MetricReport::make(meta, "test_accuracy", slice(test_acc)));
    if (settings.model != ModelKind::kBaseline) {
      reports.push_back(MetricReport::make(meta, "train_loss", slice(train_loss)));
    }
  }
  return reports;
}

BenchmarkSuiteConfig::BenchmarkSuiteConfig() {
  learner.qubits_per_dim = 3;
  learner.depth = 6;
  learner.scale_features = true;
  learner.scale_targets = true;
}

void BenchmarkSuiteConfig::validate() const {
  if (datasets.empty()) throw std::invalid_argument("benchmark suite: no datasets given");
  if (models.empty() || r_percent.empty()) throw std::invalid_argument("benchmark suite: no models or fractions");
  for (double r : r_percent)
    if (!(r > 0.0 && r <= 100.0)) throw std::invalid_argument("benchmark suite: r must be in (0, 100]");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("benchmark suite: test fraction must be in (0, 1)");
  }
  for (ModelKind m : models) {
    LearnerSettings s = learner;
    s.model = m;
    s.validate(2);
  }
}

std::vector<MetricReport> run_benchmark_suite(const BenchmarkSuiteConfig& config) {
  config.validate();
  struct Loaded {
    data::Dataset train;
    data::Dataset test;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
  };
  std::vector<Loaded> loaded;
  for (std::size_t d = 0; d < config.datasets.size(); ++d) {
    const auto& spec = config.datasets[d];
    const data::Dataset ds = data::load_delimited(spec.path, spec.target, spec.kind);
    Rng rng(derive_seed(config.master_seed, {20, d}));
    auto [train, test] = data::split(ds, config.test_fraction, rng);
    loaded.push_back({std::move(train), std::move(test), data::feature_pair_indices(ds.dim())});
  }

  struct Item {
    std::size_t dataset, pair, r, model;
  };
  std::vector<Item> items;
  // Report cells are (dataset, model, r); values run over pairs.
  for (std::size_t d = 0; d < loaded.size(); ++d)
    for (std::size_t m = 0; m < config.models.size(); ++m)
      for (std::size_t r = 0; r < config.r_percent.size(); ++r)
        for (std::size_t p = 0; p < loaded[d].pairs.size(); ++p) items.push_back({d, p, r, m});
  std::vector<double> errors(items.size());

  parallel_for(items.size(), config.workers, [&](std::size_t i) {
    const Item& it = items[i];
    const Loaded& ld = loaded[it.dataset];
    const auto [f0, f1] = ld.pairs[it.pair];
    const data::Dataset train_pair = data::select_features(ld.train, {f0, f1});
    const data::Dataset test_pair = data::select_features(ld.test, {f0, f1});
    Rng sub_rng(derive_seed(config.master_seed, {21, it.dataset, it.pair, it.r}));
    const data::Dataset sub = data::subsample(train_pair, config.r_percent[it.r] / 100.0, sub_rng);

    LearnerSettings settings = config.learner;
    settings.model = config.models[it.model];
    settings.structure_seed = derive_seed(config.master_seed, {22, it.dataset, it.pair, it.r});
    settings.train.seed = derive_seed(config.master_seed, {23, it.dataset, it.pair, it.r});
    const FitOutcome fit = fit_model(settings, sub);
    const std::vector<double> pred = fit.model.predict(test_pair.X);
    errors[i] = test_pair.kind == data::TaskKind::kRegression ? metrics::rmse(pred, test_pair.y)
                                                               : metrics::classification_error(pred, test_pair.y);
  });

  std::vector<MetricReport> reports;
  std::size_t offset = 0;
  for (std::size_t d = 0; d < loaded.size(); ++d) {
    const std::size_t n_pairs = loaded[d].pairs.size();
    const bool regression = loaded[d].train.kind == data::TaskKind::kRegression;
    const std::size_t heads = regression ? 1 : loaded[d].train.num_classes();
    for (std::size_t m = 0; m < config.models.size(); ++m) {
      for (std::size_t r = 0; r < config.r_percent.size(); ++r) {
        LearnerSettings settings = config.learner;
        settings.model = config.models[m];
        auto meta = model_metadata(settings, 2, heads);
        meta["suite"] = "benchmark";
        meta["task"] = data::to_string(loaded[d].train.kind);
        meta["dataset"] = config.datasets[d].name;
        meta["n_train"] = std::to_string(loaded[d].train.size());
        meta["r_percent"] = format_double(config.r_percent[r]);
        std::vector<double> values(errors.begin() + static_cast<std::ptrdiff_t>(offset),
                                   errors.begin() + static_cast<std::ptrdiff_t>(offset + n_pairs));
        offset += n_pairs;
        reports.push_back(MetricReport::make(meta, regression ? "test_rmse" : "test_error", std::move(values)));
      }
    }
  }
  return reports;
}

void CoverageConfig::validate() const {
  if (qubits == 0 || qubits > kMaxStatevectorQubits) {
    throw std::invalid_argument("coverage: qubits must be in [1, " + std::to_string(kMaxStatevectorQubits) + "]");
  }
  if (depths.empty()) throw std::invalid_argument("coverage: no depths to sweep");
  for (std::size_t m : depths)
    if (m == 0) throw std::invalid_argument("coverage: depths must be >= 1");
  if (thresholds.empty()) throw std::invalid_argument("coverage: no thresholds");
  for (double t : thresholds)
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("coverage: thresholds must lie in (0, 1)");
  if (repetitions == 0) throw std::invalid_argument("coverage: repetitions must be >= 1");
  if (grid_size < 2) throw std::invalid_argument("coverage: grid size must be >= 2");
  learner.train.validate();
  if (learner.sketch_dim == 0) throw std::invalid_argument("coverage: sketch dimension must be >= 1");
}

std::vector<double> coverage_target(const CoverageConfig& config, std::size_t depth, std::size_t repetition,
                                    const std::vector<double>& grid) {
  const auto circuit =
      qcl::CircuitSpec::sample(config.qubits, depth, derive_seed(config.master_seed, {30, depth, repetition}));
  Rng rng(derive_seed(config.master_seed, {31, depth, repetition}));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> theta(circuit.num_angles());
  for (double& t : theta) t = angle(rng);
  const EncodingSpec encoding = EncodingSpec::uniform(1, config.qubits);
  const Observable b = block_observables(circuit.dim(), 1).front();
  std::vector<double> f(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid[k];
    f[k] = qcl::predict_qcl(circuit, theta, 1.0, 0.0, std::span<const double>(&x, 1), encoding, b);
  }
  return f;
}

std::vector<MetricReport> run_coverage(const CoverageConfig& config) {
  config.validate();
  const std::size_t reps = config.repetitions;
  const std::vector<double> grid = data::linspace(-1.0, 1.0, config.grid_size);
  std::vector<double> rho(config.depths.size() * reps);

  parallel_for(rho.size(), config.workers, [&](std::size_t item) {
    const std::size_t depth = config.depths[item / reps];
    const std::size_t rep = item % reps;
    data::Dataset ds;
    ds.X = column(grid);
    ds.y = coverage_target(config, depth, rep, grid);
    ds.feature_names = {"x"};

    LearnerSettings settings = config.learner;
    settings.model = ModelKind::kQcll;
    settings.qubits_per_dim = config.qubits;
    settings.depth = depth;
    settings.num_angles = config.qubits * depth;
    settings.structure_seed = derive_seed(config.master_seed, {32, depth, rep});
    settings.train.seed = derive_seed(config.master_seed, {33, depth, rep});
    const FitOutcome fit = fit_model(settings, ds);
    try {
      rho[item] = metrics::pearson(ds.y, fit.model.predict(ds.X));
    } catch (const metrics::DegenerateInputError&) {
      rho[item] = kNaN;
    }
  });

  std::vector<MetricReport> reports;
  for (std::size_t d = 0; d < config.depths.size(); ++d) {
    LearnerSettings settings = config.learner;
    settings.model = ModelKind::kQcll;
    settings.qubits_per_dim = config.qubits;
    settings.depth = config.depths[d];
    settings.num_angles = config.qubits * config.depths[d];
    auto meta = model_metadata(settings, 1, 1);
    meta["suite"] = "coverage";
    meta["task"] = "regression";
    meta["n_train"] = std::to_string(config.grid_size);
    const std::vector<double> values(rho.begin() + static_cast<std::ptrdiff_t>(d * reps),
                                     rho.begin() + static_cast<std::ptrdiff_t>((d + 1) * reps));
    reports.push_back(MetricReport::make(meta, "rho", values));
    for (double t : config.thresholds) {
      std::vector<double> covered(values.size());
      // A NaN correlation (constant fit) fails every comparison, so it counts as not covered.
      for (std::size_t k = 0; k < values.size(); ++k) covered[k] = values[k] > t ? 1.0 : 0.0;
      auto m = meta;
      m["threshold"] = format_double(t);
      reports.push_back(MetricReport::make(m, "coverage", std::move(covered)));
    }
  }
  return reports;
}

}  // namespace qcll::experiments
