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
 * JSON form of fitted models. Random structure (circuit unitaries, sketch
 * tables, R) is stored only as its seed and regenerated on load; learned
 * parameters, OLS coefficients and scaling are stored verbatim.
 */

#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "qcll/learner.hpp"

namespace qcll::serialization {

nlohmann::json train_config_to_json(const optimize::TrainConfig& c);
/// Missing keys keep their defaults; unknown keys throw std::invalid_argument.
optimize::TrainConfig train_config_from_json(const nlohmann::json& j);

nlohmann::json settings_to_json(const LearnerSettings& s);
LearnerSettings settings_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const FittedModel& model);
/// Throws std::invalid_argument on a malformed document.
FittedModel model_from_json(const nlohmann::json& j);

void save_model(const FittedModel& model, const std::filesystem::path& path);
FittedModel load_model(const std::filesystem::path& path);

}  // namespace qcll::serialization
