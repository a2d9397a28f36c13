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


#include "qcll/serialization.hpp"

#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

namespace qcll::serialization {

namespace {

constexpr const char* kFormat = "qcll-model";
constexpr int kVersion = 1;

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::string optimizer_name(optimize::OptimizerKind k) { return k == optimize::OptimizerKind::kLbfgs ? "lbfgs" : "adam"; }

optimize::OptimizerKind parse_optimizer(const std::string& s) {
  if (s == "lbfgs") return optimize::OptimizerKind::kLbfgs;
  if (s == "adam") return optimize::OptimizerKind::kAdam;
  throw std::invalid_argument("unknown optimizer '" + s + "' (expected lbfgs or adam)");
}

}  // namespace

nlohmann::json train_config_to_json(const optimize::TrainConfig& c) {
  return {{"max_iterations", c.max_iterations}, {"restarts", c.restarts},
          {"optimizer", optimizer_name(c.optimizer)}, {"tolerance", c.tolerance},
          {"theta_low", c.theta_low}, {"theta_high", c.theta_high},
          {"a_center", c.a_center}, {"a_spread", c.a_spread},
          {"b_center", c.b_center}, {"b_spread", c.b_spread},
          {"lbfgs_memory", c.lbfgs_memory}, {"adam_learning_rate", c.adam_learning_rate},
          {"seed", c.seed}};
}

optimize::TrainConfig train_config_from_json(const nlohmann::json& j) {
  reject_unknown(j,
                 {"max_iterations", "restarts", "optimizer", "tolerance", "theta_low", "theta_high", "a_center",
                  "a_spread", "b_center", "b_spread", "lbfgs_memory", "adam_learning_rate", "seed"},
                 "train config");
  optimize::TrainConfig c;
  read_if(j, "max_iterations", c.max_iterations);
  read_if(j, "restarts", c.restarts);
  if (j.contains("optimizer")) c.optimizer = parse_optimizer(j.at("optimizer").get<std::string>());
  read_if(j, "tolerance", c.tolerance);
  read_if(j, "theta_low", c.theta_low);
  read_if(j, "theta_high", c.theta_high);
  read_if(j, "a_center", c.a_center);
  read_if(j, "a_spread", c.a_spread);
  read_if(j, "b_center", c.b_center);
  read_if(j, "b_spread", c.b_spread);
  read_if(j, "lbfgs_memory", c.lbfgs_memory);
  read_if(j, "adam_learning_rate", c.adam_learning_rate);
  read_if(j, "seed", c.seed);
  return c;
}

nlohmann::json settings_to_json(const LearnerSettings& s) {
  return {{"model", to_string(s.model)},
          {"qubits_per_dim", s.qubits_per_dim},
          {"depth", s.depth},
          {"num_angles", s.num_angles},
          {"num_outputs", s.num_outputs},
          {"sketch_dim", s.sketch_dim},
          {"variant", to_string(s.variant)},
          {"structure_seed", s.structure_seed},
          {"train", train_config_to_json(s.train)},
          {"scale_features", s.scale_features},
          {"scale_targets", s.scale_targets}};
}

LearnerSettings settings_from_json(const nlohmann::json& j) {
  reject_unknown(j,
                 {"model", "qubits_per_dim", "depth", "num_angles", "num_outputs", "sketch_dim", "variant",
                  "structure_seed", "train", "scale_features", "scale_targets"},
                 "learner settings");
  LearnerSettings s;
  if (j.contains("model")) s.model = parse_model_kind(j.at("model").get<std::string>());
  read_if(j, "qubits_per_dim", s.qubits_per_dim);
  read_if(j, "depth", s.depth);
  read_if(j, "num_angles", s.num_angles);
  read_if(j, "num_outputs", s.num_outputs);
  read_if(j, "sketch_dim", s.sketch_dim);
  if (j.contains("variant")) s.variant = parse_variant(j.at("variant").get<std::string>());
  read_if(j, "structure_seed", s.structure_seed);
  if (j.contains("train")) s.train = train_config_from_json(j.at("train"));
  read_if(j, "scale_features", s.scale_features);
  read_if(j, "scale_targets", s.scale_targets);
  return s;
}

nlohmann::json model_to_json(const FittedModel& model) {
  nlohmann::json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["task"] = data::to_string(model.task());
  j["input_dim"] = model.input_dim();
  j["classes"] = model.classes();
  j["settings"] = settings_to_json(model.settings());
  if (model.settings().model == ModelKind::kBaseline) {
    if (!model.ols()) throw std::invalid_argument("model_to_json: baseline has not been fitted");
    const Eigen::MatrixXd& c = model.ols()->coefficients();
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < c.rows(); ++r) {
      std::vector<double> row(static_cast<std::size_t>(c.cols()));
      for (Eigen::Index k = 0; k < c.cols(); ++k) row[static_cast<std::size_t>(k)] = c(r, k);
      rows.push_back(row);
    }
    j["ols_coefficients"] = rows;
  } else {
    const auto& p = model.parameters();
    j["parameters"] = {{"a", p.a}, {"b", p.b}, {"theta", p.theta}};
  }
  if (model.feature_scaling()) {
    j["feature_scaling"] = {{"min", model.feature_scaling()->min}, {"max", model.feature_scaling()->max}};
  }
  if (model.target_range()) j["target_range"] = {model.target_range()->first, model.target_range()->second};
  return j;
}

FittedModel model_from_json(const nlohmann::json& j) {
  try {
    reject_unknown(j,
                   {"format", "version", "task", "input_dim", "classes", "settings", "ols_coefficients", "parameters",
                    "feature_scaling", "target_range"},
                   "model");
    if (j.at("format").get<std::string>() != kFormat) throw std::invalid_argument("model: not a qcll model document");
    if (j.at("version").get<int>() != kVersion) throw std::invalid_argument("model: unsupported version");
    const LearnerSettings settings = settings_from_json(j.at("settings"));
    FittedModel model(settings, data::parse_task_kind(j.at("task").get<std::string>()),
                      j.at("input_dim").get<std::size_t>(), j.at("classes").get<std::size_t>());
    if (settings.model == ModelKind::kBaseline) {
      const auto rows = j.at("ols_coefficients").get<std::vector<std::vector<double>>>();
      const std::size_t cols = rows.empty() ? 0 : rows.front().size();
      Eigen::MatrixXd c(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("model: ragged coefficient matrix");
        for (std::size_t k = 0; k < cols; ++k) c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = rows[r][k];
      }
      model.set_ols(baseline::PolyOlsModel::from_coefficients(
          EncodingSpec::uniform(model.input_dim(), settings.qubits_per_dim), std::move(c)));
    } else {
      const auto& p = j.at("parameters");
      optimize::Parameters params;
      params.a = p.at("a").get<std::vector<double>>();
      params.b = p.at("b").get<std::vector<double>>();
      params.theta = p.at("theta").get<std::vector<double>>();
      model.set_parameters(std::move(params));
    }
    if (j.contains("feature_scaling")) {
      data::ScalingStats s;
      s.min = j.at("feature_scaling").at("min").get<std::vector<double>>();
      s.max = j.at("feature_scaling").at("max").get<std::vector<double>>();
      if (s.min.size() != model.input_dim() || s.max.size() != model.input_dim()) {
        throw std::invalid_argument("model: feature scaling has the wrong length");
      }
      model.set_feature_scaling(std::move(s));
    }
    if (j.contains("target_range")) {
      const auto r = j.at("target_range").get<std::vector<double>>();
      if (r.size() != 2) throw std::invalid_argument("model: target_range needs two values");
      model.set_target_range(std::make_pair(r[0], r[1]));
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model: malformed document: ") + e.what());
  }
}

void save_model(const FittedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file '" + path.string() + "'");
  out << model_to_json(model).dump(2) << '\n';
}

FittedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("model file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

}  // namespace qcll::serialization
