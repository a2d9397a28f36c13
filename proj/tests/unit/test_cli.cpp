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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qcll::cli {
namespace {

namespace fs = std::filesystem;

std::vector<const char*> argv_of(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"qcll"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return argv;
}

RunConfig parse(const std::vector<std::string>& args) {
  const auto argv = argv_of(args);
  return parse_and_validate(static_cast<int>(argv.size()), argv.data());
}

int run_cli(const std::vector<std::string>& args) {
  const auto argv = argv_of(args);
  return run(static_cast<int>(argv.size()), argv.data());
}

std::string usage_error(const std::vector<std::string>& args) {
  try {
    parse(args);
  } catch (const UsageError& e) {
    return e.what();
  }
  return "<accepted>";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::path(::testing::TempDir()) / ("qcll_cli_" + name);
  fs::remove_all(p);
  return p;
}

const std::string kIris = std::string(QCLL_FIXTURE_DIR) + "/iris.csv";

TEST(Parse, RegressionDefaults) {
  const RunConfig c = parse({"train", "--task", "regression", "--fn", "x2", "--model", "qcll", "--seed", "1"});
  EXPECT_EQ(c.command, "train");
  EXPECT_EQ(c.qubits, 6U);
  EXPECT_EQ(c.depth, 6U);
  EXPECT_EQ(c.sketch_dim, 100U);
  EXPECT_EQ(c.seed, 1U);
  EXPECT_EQ(c.grid_size, 201U);
}

TEST(Parse, TaskAndSuiteDefaults) {
  EXPECT_EQ(parse({"train", "--task", "classification"}).qubits, 3U);
  EXPECT_EQ(parse({"train", "--data", kIris, "--task", "classification"}).qubits, 3U);
  const RunConfig cov = parse({"experiment", "coverage", "--qubits", "6", "--reps", "100", "--thresholds",
                               "0.90,0.95,0.99"});
  EXPECT_EQ(cov.grid_size, 100U);
  EXPECT_EQ(cov.reps, 100U);
  EXPECT_EQ(cov.thresholds, (std::vector<double>{0.90, 0.95, 0.99}));
  const RunConfig cls = parse({"experiment", "classification"});
  EXPECT_EQ(cls.task, "classification");
  EXPECT_EQ(cls.depth, 3U);
  EXPECT_EQ(parse({"experiment", "regression", "--variant", "eq15"}).variant, "eq15");
}

TEST(Parse, Rejections) {
  EXPECT_NE(usage_error({"train", "--qubits", "30", "--model", "qcl"}).find("qubit"), std::string::npos);
  EXPECT_NE(usage_error({"train", "--data", "/no/such/file.csv"}).find("/no/such/file.csv"), std::string::npos);
  EXPECT_NE(usage_error({"experiment", "clustering"}).find("coverage"), std::string::npos);
  EXPECT_NE(usage_error({"train", "--bogus", "1"}), "<accepted>");
  EXPECT_NE(usage_error({"train", "--seed", "abc"}).find("--seed"), std::string::npos);
  EXPECT_NE(usage_error({"train", "--variant", "eq16"}).find("eq16"), std::string::npos);
  EXPECT_NE(usage_error({"train", "--optimizer", "sgd"}).find("sgd"), std::string::npos);
  EXPECT_NE(usage_error({"fit"}).find("unknown command"), std::string::npos);
  EXPECT_NE(usage_error({"train", "extra"}).find("unexpected"), std::string::npos);
  EXPECT_NE(usage_error({"eval"}).find("--model-path"), std::string::npos);
  EXPECT_NE(usage_error({"train", "--workers", "0"}), "<accepted>");
  EXPECT_NE(usage_error({"train", "--fn", "cube"}), "<accepted>");
  EXPECT_NE(usage_error({"experiment", "coverage", "--thresholds", "0.9,1.5"}), "<accepted>");
  EXPECT_NE(usage_error({"experiment", "benchmark"}).find("--data"), std::string::npos);
  EXPECT_NE(usage_error({"train", "--restarts", "0"}), "<accepted>");
}

TEST(Config, FileValuesThenFlagOverrides) {
  const fs::path p = fs::path(::testing::TempDir()) / "qcll_cli_cfg.json";
  std::ofstream(p) << R"({"depth": 4, "sketch_dim": 32, "seed": 3, "thresholds": [0.5]})";
  const RunConfig c = parse({"train", "--config", p.string(), "--seed", "9"});
  EXPECT_EQ(c.depth, 4U);
  EXPECT_EQ(c.sketch_dim, 32U);
  EXPECT_EQ(c.seed, 9U);
  EXPECT_EQ(c.thresholds, std::vector<double>{0.5});
}

TEST(Config, StrictKeysAndTypes) {
  RunConfig c;
  EXPECT_THROW(apply_json(nlohmann::json{{"depthh", 2}}, c), UsageError);
  EXPECT_THROW(apply_json(nlohmann::json{{"depth", "two"}}, c), UsageError);
  EXPECT_THROW(apply_json(nlohmann::json{{"depth", -1}}, c), UsageError);
  EXPECT_THROW(apply_json(nlohmann::json{{"thresholds", 0.9}}, c), UsageError);
  EXPECT_THROW(apply_json(nlohmann::json::array(), c), UsageError);
  const fs::path bad = fs::path(::testing::TempDir()) / "qcll_cli_bad.json";
  std::ofstream(bad) << "{";
  EXPECT_NE(usage_error({"train", "--config", bad.string()}).find("not valid JSON"), std::string::npos);
  EXPECT_NE(usage_error({"train", "--config", bad.string() + ".missing"}).find("does not exist"), std::string::npos);
}

TEST(Config, JsonRoundTrip) {
  RunConfig c = parse({"experiment", "noise", "--noise-levels", "0,0.1", "--models", "qcll,baseline"});
  RunConfig back;
  apply_json(to_json(c), back);
  back.command = c.command;
  back.suite = c.suite;
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(Commands, TrainEvalRoundTripAndReplay) {
  const fs::path a = fresh_dir("train_a"), b = fresh_dir("train_b"), e = fresh_dir("eval");
  const std::vector<std::string> common = {"--n-train", "20", "--qubits", "3", "--depth", "2", "--sketch-dim", "16",
                                           "--iterations", "10", "--restarts", "2", "--seed", "4"};
  auto train_a = std::vector<std::string>{"train", "--out", a.string()};
  train_a.insert(train_a.end(), common.begin(), common.end());
  ASSERT_EQ(run_cli(train_a), 0);
  for (const char* f : {"config.json", "model.json", "trace.csv", "metrics.json", "predictions.csv"})
    EXPECT_TRUE(fs::exists(a / f)) << f;

  // A replay from the echoed config is byte-identical.
  ASSERT_EQ(run_cli({"train", "--config", (a / "config.json").string(), "--out", b.string()}), 0);
  EXPECT_EQ(slurp(a / "metrics.json"), slurp(b / "metrics.json"));
  EXPECT_EQ(slurp(a / "model.json"), slurp(b / "model.json"));

  // eval on the same synthetic data reproduces the training predictions.
  auto eval = std::vector<std::string>{"eval", "--model-path", (a / "model.json").string(), "--out", e.string()};
  eval.insert(eval.end(), common.begin(), common.end());
  ASSERT_EQ(run_cli(eval), 0);
  EXPECT_EQ(slurp(a / "predictions.csv"), slurp(e / "predictions.csv"));

  // Output collision is refused without --force.
  EXPECT_EQ(run_cli(train_a), 2);
  train_a.push_back("--force");
  EXPECT_EQ(run_cli(train_a), 0);
}

TEST(Commands, TrainOnFileAndEvalMismatch) {
  const fs::path a = fresh_dir("iris"), e = fresh_dir("iris_eval");
  ASSERT_EQ(run_cli({"train", "--data", kIris, "--task", "classification", "--model", "baseline", "--out", a.string()}),
            0);
  const auto m = nlohmann::json::parse(slurp(a / "metrics.json"));
  EXPECT_GT(m["train"]["accuracy"].get<double>(), 0.9);
  EXPECT_EQ(run_cli({"eval", "--model-path", (a / "model.json").string(), "--out", e.string()}), 2);
}

TEST(Commands, ExperimentWritesResults) {
  const fs::path o = fresh_dir("exp");
  ASSERT_EQ(run_cli({"experiment", "coverage", "--qubits", "2", "--depths", "1", "--reps", "3", "--iterations", "5",
                     "--restarts", "1", "--sketch-dim", "8", "--out", o.string(), "--workers", "2"}),
            0);
  const std::string csv = slurp(o / "results.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 4);
  const auto j = nlohmann::json::parse(slurp(o / "metrics.json"));
  EXPECT_EQ(j["suite"], "coverage");
  EXPECT_EQ(j["reports"].size(), 4U);
  EXPECT_EQ(run_cli({"experiment", "nothing"}), 2);
}

}  // namespace
}  // namespace qcll::cli
