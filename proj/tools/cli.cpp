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


#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "qcll/data.hpp"
#include "qcll/experiments.hpp"
#include "qcll/format.hpp"
#include "qcll/learner.hpp"
#include "qcll/metrics.hpp"
#include "qcll/random.hpp"
#include "qcll/serialization.hpp"

namespace qcll::cli {

namespace fs = std::filesystem;

namespace {

using Member = std::variant<std::string RunConfig::*, std::uint64_t RunConfig::*, double RunConfig::*,
                            bool RunConfig::*, std::vector<double> RunConfig::*,
                            std::vector<std::uint64_t> RunConfig::*, std::vector<std::string> RunConfig::*>;

struct Field {
  const char* key;
  Member member;
  const char* help;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      {"task", &RunConfig::task, "regression | classification"},
      {"fn", &RunConfig::fn, "synthetic target: x2 | exp | sin | abs"},
      {"n_train", &RunConfig::n_train, "synthetic regression sample count"},
      {"sigma", &RunConfig::sigma, "noise standard deviation for synthetic regression"},
      {"n_per_class", &RunConfig::n_per_class, "synthetic classification samples per class"},
      {"data", &RunConfig::data, "CSV file (one header row) instead of synthetic data"},
      {"target", &RunConfig::target, "target column name or 0-based index (default: last column)"},
      {"model", &RunConfig::model, "qcl | qcll | baseline"},
      {"qubits", &RunConfig::qubits, "qubits per input dimension (0: task default)"},
      {"depth", &RunConfig::depth, "circuit depth M (0: task default)"},
      {"angles", &RunConfig::angles, "number of angles P for qcll (0: qubits * dims * depth)"},
      {"outputs", &RunConfig::outputs, "output vector length I for qcll (0: max(10, 5 * heads))"},
      {"sketch_dim", &RunConfig::sketch_dim, "sketch dimension K'"},
      {"variant", &RunConfig::variant, "qcll output: eq14 (inner product) | eq15 (random unitary)"},
      {"optimizer", &RunConfig::optimizer, "lbfgs | adam"},
      {"iterations", &RunConfig::iterations, "iterations per restart"},
      {"restarts", &RunConfig::restarts, "random restarts"},
      {"tolerance", &RunConfig::tolerance, "stop when the cost changes by less than this"},
      {"learning_rate", &RunConfig::learning_rate, "adam step size"},
      {"seeds", &RunConfig::seeds, "seeds per experiment cell"},
      {"reps", &RunConfig::reps, "coverage repetitions"},
      {"thresholds", &RunConfig::thresholds, "coverage thresholds, comma separated"},
      {"depths", &RunConfig::depths, "coverage depth sweep, comma separated"},
      {"grid_size", &RunConfig::grid_size, "evaluation grid points (0: suite default)"},
      {"r_grid", &RunConfig::r_grid, "benchmark training percentages, comma separated"},
      {"sample_sizes", &RunConfig::sample_sizes, "regression sample sizes (empty: suite default)"},
      {"noise_levels", &RunConfig::noise_levels, "regression noise levels (empty: suite default)"},
      {"functions", &RunConfig::functions, "regression targets (empty: suite default)"},
      {"models", &RunConfig::models, "models to run (empty: qcl,qcll,baseline)"},
      {"test_fraction", &RunConfig::test_fraction, "benchmark test fraction"},
      {"seed", &RunConfig::seed, "master seed"},
      {"out", &RunConfig::out, "output directory"},
      {"workers", &RunConfig::workers, "worker threads for experiments"},
      {"force", &RunConfig::force, "overwrite a non-empty output directory"},
      {"model_path", &RunConfig::model_path, "model.json to evaluate"},
  };
  return f;
}

std::string flag_name(const char* key) {
  std::string s = std::string("--") + key;
  for (char& ch : s)
    if (ch == '_') ch = '-';
  return s;
}

template <typename T>
bool parse_scalar(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first == last) return false;
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  if (text.empty()) return parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  return parts;
}

[[noreturn]] void type_error(const std::string& where, const char* expected, const std::string& got) {
  throw UsageError(where + " expects " + expected + ", got '" + got + "'");
}

/// Assigns a flag's text to its field.
void assign_text(const Field& f, const std::string& text, RunConfig& c) {
  const std::string where = flag_name(f.key);
  std::visit(
      [&](auto member) {
        using T = std::remove_reference_t<decltype(c.*member)>;
        T& slot = c.*member;
        if constexpr (std::is_same_v<T, std::string>) {
          slot = text;
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          if (!parse_scalar(text, slot)) type_error(where, "a non-negative integer", text);
        } else if constexpr (std::is_same_v<T, double>) {
          if (!parse_scalar(text, slot)) type_error(where, "a number", text);
        } else if constexpr (std::is_same_v<T, bool>) {
          if (text == "true" || text == "1") {
            slot = true;
          } else if (text == "false" || text == "0") {
            slot = false;
          } else {
            type_error(where, "true or false", text);
          }
        } else {
          using E = typename T::value_type;
          T values;
          for (const auto& part : split_list(text)) {
            E v{};
            if constexpr (std::is_same_v<E, std::string>) {
              v = part;
            } else if (!parse_scalar(part, v)) {
              type_error(where, std::is_same_v<E, double> ? "a comma-separated list of numbers"
                                                          : "a comma-separated list of non-negative integers",
                         text);
            }
            values.push_back(v);
          }
          slot = std::move(values);
        }
      },
      f.member);
}

template <typename E>
E json_element(const nlohmann::json& v, const std::string& where) {
  if constexpr (std::is_same_v<E, std::string>) {
    if (!v.is_string()) type_error(where, "a string", v.dump());
    return v.get<std::string>();
  } else if constexpr (std::is_same_v<E, std::uint64_t>) {
    if (!v.is_number_unsigned()) type_error(where, "a non-negative integer", v.dump());
    return v.get<std::uint64_t>();
  } else if constexpr (std::is_same_v<E, double>) {
    if (!v.is_number()) type_error(where, "a number", v.dump());
    return v.get<double>();
  } else {
    if (!v.is_boolean()) type_error(where, "true or false", v.dump());
    return v.get<bool>();
  }
}

template <typename T>
struct is_vector : std::false_type {};
template <typename E>
struct is_vector<std::vector<E>> : std::true_type {};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed while writing '" + path.string() + "'");
}

data::ColumnRef target_ref(const RunConfig& c, const fs::path& path) {
  if (!c.target.empty()) {
    std::size_t idx = 0;
    if (parse_scalar(c.target, idx)) return idx;
    return c.target;
  }
  // Default to the last header column.
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  const auto commas = static_cast<std::size_t>(std::count(header.begin(), header.end(), ','));
  return commas;
}

data::Dataset load_file(const RunConfig& c) {
  const fs::path path(c.data);
  if (!fs::exists(path)) throw UsageError("data file '" + c.data + "' does not exist");
  return data::load_delimited(path, target_ref(c, path), data::parse_task_kind(c.task));
}

/// Training/evaluation data for train and eval.
data::Dataset load_dataset(const RunConfig& c) {
  if (!c.data.empty()) return load_file(c);
  Rng rng(derive_seed(c.seed, {100}));
  if (data::parse_task_kind(c.task) == data::TaskKind::kClassification) {
    return data::gen_classification(c.n_per_class, rng);
  }
  return data::gen_regression(data::parse_target_function(c.fn), c.n_train, c.sigma, rng);
}

optimize::OptimizerKind parse_optimizer(const std::string& s) {
  if (s == "lbfgs") return optimize::OptimizerKind::kLbfgs;
  if (s == "adam") return optimize::OptimizerKind::kAdam;
  throw UsageError("--optimizer expects lbfgs or adam, got '" + s + "'");
}

LearnerSettings learner_settings(const RunConfig& c) {
  LearnerSettings s;
  s.model = parse_model_kind(c.model);
  s.qubits_per_dim = c.qubits;
  s.depth = c.depth;
  s.num_angles = c.angles;
  s.num_outputs = c.outputs;
  s.sketch_dim = c.sketch_dim;
  s.variant = parse_variant(c.variant);
  s.structure_seed = derive_seed(c.seed, {101});
  s.train.max_iterations = c.iterations;
  s.train.restarts = c.restarts;
  s.train.optimizer = parse_optimizer(c.optimizer);
  s.train.tolerance = c.tolerance;
  s.train.adam_learning_rate = c.learning_rate;
  s.train.seed = derive_seed(c.seed, {102});
  return s;
}

std::vector<ModelKind> model_list(const RunConfig& c) {
  std::vector<ModelKind> out;
  for (const auto& m : c.models) out.push_back(parse_model_kind(m));
  if (out.empty()) out = {ModelKind::kQcl, ModelKind::kQcll, ModelKind::kBaseline};
  return out;
}

experiments::RegressionSuiteConfig regression_suite(const RunConfig& c) {
  experiments::RegressionSuiteConfig s = c.suite == "samplesize" ? experiments::RegressionSuiteConfig::samplesize()
                                         : c.suite == "noise"    ? experiments::RegressionSuiteConfig::noise()
                                                                 : experiments::RegressionSuiteConfig::regression();
  if (!c.functions.empty()) {
    s.functions.clear();
    for (const auto& f : c.functions) s.functions.push_back(data::parse_target_function(f));
  }
  if (!c.sample_sizes.empty()) s.sample_sizes.assign(c.sample_sizes.begin(), c.sample_sizes.end());
  if (!c.noise_levels.empty()) s.noise_levels = c.noise_levels;
  s.models = model_list(c);
  s.seeds = c.seeds;
  s.grid_size = c.grid_size;
  s.learner = learner_settings(c);
  s.master_seed = c.seed;
  s.workers = c.workers;
  return s;
}

experiments::ClassificationSuiteConfig classification_suite(const RunConfig& c) {
  experiments::ClassificationSuiteConfig s;
  s.models = model_list(c);
  s.n_per_class = c.n_per_class;
  s.seeds = c.seeds;
  s.learner = learner_settings(c);
  s.master_seed = c.seed;
  s.workers = c.workers;
  return s;
}

experiments::BenchmarkSuiteConfig benchmark_suite(const RunConfig& c) {
  experiments::BenchmarkSuiteConfig s;
  const fs::path path(c.data);
  s.datasets.push_back({path.stem().string(), c.data, target_ref(c, path), data::parse_task_kind(c.task)});
  s.models = model_list(c);
  s.r_percent = c.r_grid;
  s.test_fraction = c.test_fraction;
  LearnerSettings learner = learner_settings(c);
  learner.scale_features = true;
  learner.scale_targets = true;
  s.learner = learner;
  s.master_seed = c.seed;
  s.workers = c.workers;
  return s;
}

experiments::CoverageConfig coverage_suite(const RunConfig& c) {
  experiments::CoverageConfig s;
  s.qubits = c.qubits;
  s.depths.assign(c.depths.begin(), c.depths.end());
  s.thresholds = c.thresholds;
  s.repetitions = c.reps;
  s.grid_size = c.grid_size;
  s.learner = learner_settings(c);
  s.master_seed = c.seed;
  s.workers = c.workers;
  return s;
}

void resolve_defaults(RunConfig& c) {
  const bool classification = c.task == "classification";
  std::uint64_t qubits = 6, depth = 6, grid = 201;
  if (c.command == "experiment") {
    if (c.suite == "classification") {
      qubits = 3;
      depth = 3;
    } else if (c.suite == "benchmark") {
      qubits = 3;
    } else if (c.suite == "coverage") {
      grid = 100;
    }
  } else if (!c.data.empty()) {
    qubits = 3;
  } else if (classification) {
    qubits = 3;
    depth = 3;
  }
  if (c.qubits == 0) c.qubits = qubits;
  if (c.depth == 0) c.depth = depth;
  if (c.grid_size == 0) c.grid_size = grid;
}

void prepare_output_dir(const RunConfig& c) {
  const fs::path out(c.out);
  if (fs::exists(out) && !fs::is_directory(out)) throw UsageError("output path '" + c.out + "' is not a directory");
  if (fs::exists(out) && !fs::is_empty(out) && !c.force) {
    throw UsageError("output directory '" + c.out + "' is not empty; pass --force to overwrite");
  }
  fs::create_directories(out);
  write_text(out / "config.json", to_json(c).dump(2) + "\n");
}

/// Rejects a model file whose shape does not fit the data.
void check_compatible(const FittedModel& m, const data::Dataset& ds) {
  if (m.input_dim() != ds.dim()) {
    throw UsageError("model expects " + std::to_string(m.input_dim()) + " features but the data has " +
                     std::to_string(ds.dim()));
  }
  if (m.task() != ds.kind) throw UsageError("model was trained for " + data::to_string(m.task()) + " data");
}

nlohmann::json data_metrics(const FittedModel& model, const data::Dataset& ds, const RunConfig& c,
                            std::vector<double>& pred) {
  pred = model.predict(ds.X);
  nlohmann::json m;
  m["n"] = ds.size();
  if (ds.kind == data::TaskKind::kRegression) {
    const double r = metrics::rmse(pred, ds.y);
    m["rmse"] = r;
    m["mse"] = r * r;
    if (c.data.empty()) {
      const auto fn = data::parse_target_function(c.fn);
      const std::vector<double> grid = data::linspace(-1.0, 1.0, c.grid_size);
      const Eigen::MatrixXd gx = Eigen::Map<const Eigen::VectorXd>(grid.data(), static_cast<Eigen::Index>(grid.size()));
      std::vector<double> truth;
      for (double x : grid) truth.push_back(data::evaluate(fn, x));
      m["grid_rmse"] = metrics::rmse(model.predict(gx), truth);
    }
  } else {
    const double e = metrics::classification_error(pred, ds.y);
    m["error"] = e;
    m["accuracy"] = 1.0 - e;
  }
  return m;
}

std::string predictions_csv(const std::vector<double>& pred, const data::Dataset& ds) {
  std::ostringstream out;
  out << "index,prediction,target\n";
  for (std::size_t i = 0; i < pred.size(); ++i)
    out << i << ',' << format_double(pred[i]) << ',' << format_double(ds.y[i]) << '\n';
  return out.str();
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["suite"] = c.suite;
  for (const auto& f : fields()) std::visit([&](auto member) { j[f.key] = c.*member; }, f.member);
  return j;
}

void apply_json(const nlohmann::json& j, RunConfig& c) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command" || key == "suite") continue;  // echoes of a previous run; argv decides
    const auto it = std::find_if(fields().begin(), fields().end(), [&](const Field& f) { return key == f.key; });
    if (it == fields().end()) throw UsageError("config file: unknown key '" + key + "'");
    const std::string where = "config key '" + key + "'";
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(c.*member)>;
          if constexpr (is_vector<T>::value) {
            if (!value.is_array()) type_error(where, "an array", value.dump());
            T values;
            for (const auto& v : value) values.push_back(json_element<typename T::value_type>(v, where));
            c.*member = std::move(values);
          } else {
            c.*member = json_element<T>(value, where);
          }
        },
        it->member);
  }
}

RunConfig parse_and_validate(int argc, const char* const* argv) {
  CLI::App app{"Circuit-like learning on count sketches, with an exact statevector reference.", "qcll"};
  RunConfig c;
  std::string config_path;
  app.add_option("command", c.command, "train | eval | experiment")->required();
  app.add_option("suite", c.suite, "experiment suite");
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  std::map<std::string, std::string> raw;
  std::map<std::string, bool> bool_flags;
  for (const auto& f : fields()) {
    if (std::holds_alternative<bool RunConfig::*>(f.member)) {
      app.add_flag(flag_name(f.key), bool_flags[f.key], f.help);
    } else {
      app.add_option(flag_name(f.key), raw[f.key], f.help);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    throw;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("config file '" + config_path + "' does not exist");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config file '" + config_path + "' is not valid JSON");
    }
    apply_json(j, c);
  }
  for (const auto& f : fields()) {
    const auto* opt = app.get_option(flag_name(f.key));
    if (opt->count() == 0) continue;
    if (std::holds_alternative<bool RunConfig::*>(f.member)) {
      c.*std::get<bool RunConfig::*>(f.member) = bool_flags[f.key];
    } else {
      assign_text(f, raw[f.key], c);
    }
  }

  if (c.command != "train" && c.command != "eval" && c.command != "experiment") {
    throw UsageError("unknown command '" + c.command + "' (expected train, eval or experiment)");
  }
  if (c.command == "experiment") {
    if (std::find(kSuites.begin(), kSuites.end(), c.suite) == kSuites.end()) {
      std::string valid;
      for (const auto& s : kSuites) valid += (valid.empty() ? "" : ", ") + s;
      throw UsageError("unknown suite '" + c.suite + "' (valid suites: " + valid + ")");
    }
    if (c.suite == "classification") c.task = "classification";
  } else if (!c.suite.empty()) {
    throw UsageError("unexpected argument '" + c.suite + "' after " + c.command);
  }
  if (c.workers == 0) throw UsageError("--workers must be >= 1");
  resolve_defaults(c);

  try {
    const auto task = data::parse_task_kind(c.task);
    parse_model_kind(c.model);
    parse_variant(c.variant);
    parse_optimizer(c.optimizer);
    if (c.command == "experiment") {
      if (c.suite == "regression" || c.suite == "noise" || c.suite == "samplesize") {
        regression_suite(c).validate();
      } else if (c.suite == "classification") {
        classification_suite(c).validate();
      } else if (c.suite == "benchmark") {
        if (c.data.empty()) throw UsageError("the benchmark suite needs --data <csv>");
        if (!fs::exists(c.data)) throw UsageError("data file '" + c.data + "' does not exist");
        benchmark_suite(c).validate();
      } else {
        coverage_suite(c).validate();
      }
      return c;
    }
    std::size_t input_dim = task == data::TaskKind::kClassification ? 2 : 1;
    if (!c.data.empty()) {
      input_dim = load_file(c).dim();
    } else if (task == data::TaskKind::kRegression) {
      data::parse_target_function(c.fn);
      if (c.n_train == 0) throw UsageError("--n-train must be >= 1");
      if (!(c.sigma >= 0.0)) throw UsageError("--sigma must be >= 0");
    } else if (c.n_per_class == 0) {
      throw UsageError("--n-per-class must be >= 1");
    }
    if (c.command == "eval") {
      if (c.model_path.empty()) throw UsageError("eval needs --model-path <model.json>");
      if (!fs::exists(c.model_path)) throw UsageError("model file '" + c.model_path + "' does not exist");
    } else {
      learner_settings(c).validate(input_dim);
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return c;
}

int cmd_train(const RunConfig& c) {
  prepare_output_dir(c);
  const data::Dataset ds = load_dataset(c);
  LearnerSettings settings = learner_settings(c);
  if (!c.data.empty()) {
    settings.scale_features = true;
    settings.scale_targets = ds.kind == data::TaskKind::kRegression;
  }
  spdlog::info("training {} on {} samples ({} features)", c.model, ds.size(), ds.dim());
  const FitOutcome fit = fit_model(settings, ds);
  const fs::path out(c.out);
  serialization::save_model(fit.model, out / "model.json");

  nlohmann::json m;
  m["seed"] = c.seed;
  m["model"] = c.model;
  m["task"] = c.task;
  if (fit.training) {
    const auto& t = *fit.training;
    std::ostringstream trace;
    optimize::write_trace_csv(t, trace);
    write_text(out / "trace.csv", trace.str());
    std::size_t failed = 0;
    for (const auto& tr : t.traces) {
      if (tr.failed) {
        ++failed;
        spdlog::warn("restart aborted: {}", tr.failure);
      }
    }
    m["best_cost"] = t.best_cost;
    m["best_restart"] = t.best_restart;
    m["failed_restarts"] = failed;
    spdlog::info("best cost {} (restart {}), {:.2f} s", t.best_cost, t.best_restart, t.wall_seconds);
  }
  std::vector<double> pred;
  m["train"] = data_metrics(fit.model, ds, c, pred);
  write_text(out / "predictions.csv", predictions_csv(pred, ds));
  write_text(out / "metrics.json", m.dump(2) + "\n");
  return 0;
}

int cmd_eval(const RunConfig& c) {
  prepare_output_dir(c);
  const FittedModel model = serialization::load_model(c.model_path);
  const data::Dataset ds = load_dataset(c);
  check_compatible(model, ds);
  std::vector<double> pred;
  nlohmann::json m;
  m["model_path"] = c.model_path;
  m["eval"] = data_metrics(model, ds, c, pred);
  const fs::path out(c.out);
  write_text(out / "predictions.csv", predictions_csv(pred, ds));
  write_text(out / "metrics.json", m.dump(2) + "\n");
  spdlog::info("evaluated {} samples", ds.size());
  return 0;
}

int cmd_experiment(const RunConfig& c) {
  prepare_output_dir(c);
  spdlog::info("running suite '{}' with master seed {} on {} worker(s)", c.suite, c.seed, c.workers);
  std::vector<experiments::MetricReport> reports;
  if (c.suite == "regression" || c.suite == "noise" || c.suite == "samplesize") {
    reports = experiments::run_regression_suite(regression_suite(c));
  } else if (c.suite == "classification") {
    reports = experiments::run_classification_suite(classification_suite(c));
  } else if (c.suite == "benchmark") {
    reports = experiments::run_benchmark_suite(benchmark_suite(c));
  } else {
    reports = experiments::run_coverage(coverage_suite(c));
  }
  const fs::path out(c.out);
  std::ostringstream csv;
  experiments::write_results_csv(reports, csv);
  write_text(out / "results.csv", csv.str());
  nlohmann::json summary;
  summary["suite"] = c.suite;
  summary["master_seed"] = c.seed;
  summary["config"] = to_json(c);
  summary["reports"] = experiments::reports_to_json(reports);
  write_text(out / "metrics.json", summary.dump(2) + "\n");
  for (const auto& r : reports) {
    spdlog::info("{} {} {} {}: mean {:.6g} std {:.6g}", r.get("model"), r.get("fn"), r.get("n_train"), r.metric,
                 r.mean, r.stddev);
  }
  return 0;
}

int run(int argc, const char* const* argv) {
  static const auto logger = [] {
    auto l = spdlog::stderr_logger_st("qcll");
    l->set_pattern("[%l] %v");
    spdlog::set_default_logger(l);
    return l;
  }();
  (void)logger;
  RunConfig config;
  try {
    config = parse_and_validate(argc, argv);
  } catch (const CLI::CallForHelp&) {
    return 0;
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  try {
    if (config.command == "train") return cmd_train(config);
    if (config.command == "eval") return cmd_eval(config);
    return cmd_experiment(config);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}

}  // namespace qcll::cli
