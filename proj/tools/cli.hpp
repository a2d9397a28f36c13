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
 * Command-line front end: `train`, `eval` and `experiment <suite>`.
 *
 * Every setting is a key of a flat JSON object. A `--config` file supplies
 * values first, then flags of the same name (underscores spelled as
 * dashes) override them. The fully resolved config is written to the
 * output directory so a run can be replayed with `--config`.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qcll::cli {

/// Bad flags, bad values or violated preconditions. main() maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kSuites = {"regression", "classification", "noise",
                                                 "samplesize", "benchmark",      "coverage"};

struct RunConfig {
  std::string command;  // train | eval | experiment
  std::string suite;    // experiment only

  std::string task = "regression";
  std::string fn = "x2";
  std::uint64_t n_train = 100;
  double sigma = 0.0;
  std::uint64_t n_per_class = 100;
  std::string data;    // CSV path; empty means synthetic data
  std::string target;  // column name or 0-based index; empty means the last column

  std::string model = "qcll";
  std::uint64_t qubits = 0;  // per input dimension; 0 picks the task default
  std::uint64_t depth = 0;   // 0 picks the task default
  std::uint64_t angles = 0;  // 0 means qubits * dims * depth
  std::uint64_t outputs = 0; // 0 means max(10, 5 * heads)
  std::uint64_t sketch_dim = 100;
  std::string variant = "eq14";

  std::string optimizer = "lbfgs";
  std::uint64_t iterations = 100;
  std::uint64_t restarts = 10;
  double tolerance = 1e-8;
  double learning_rate = 0.05;

  std::uint64_t seeds = 10;
  std::uint64_t reps = 100;
  std::vector<double> thresholds = {0.90, 0.95, 0.99};
  std::vector<std::uint64_t> depths = {1, 2, 3, 4, 5, 6};
  std::uint64_t grid_size = 0;  // 0 picks the suite default
  std::vector<double> r_grid = {10, 20, 30, 40, 50, 75, 100};
  std::vector<std::uint64_t> sample_sizes;  // empty picks the suite default
  std::vector<double> noise_levels;
  std::vector<std::string> functions;
  std::vector<std::string> models;
  double test_fraction = 0.2;

  std::uint64_t seed = 0;
  std::string out = "qcll-run";
  std::uint64_t workers = 1;
  bool force = false;
  std::string model_path;  // eval only
};

nlohmann::json to_json(const RunConfig& c);
/// Strict: unknown keys and type mismatches throw UsageError.
void apply_json(const nlohmann::json& j, RunConfig& c);

/// Parses argv (argv[0] is the program name), merges an optional config
/// file, resolves defaults and validates everything against the library
/// preconditions. Throws UsageError with a one-line message.
RunConfig parse_and_validate(int argc, const char* const* argv);

int cmd_train(const RunConfig& config);
int cmd_eval(const RunConfig& config);
int cmd_experiment(const RunConfig& config);

/// Full entry point: parse, dispatch, map errors to exit codes.
int run(int argc, const char* const* argv);

}  // namespace qcll::cli
