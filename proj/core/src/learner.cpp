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


#include "qcll/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcll {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kQcl: return "qcl";
    case ModelKind::kQcll: return "qcll";
    case ModelKind::kBaseline: return "baseline";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "qcl") return ModelKind::kQcl;
  if (name == "qcll") return ModelKind::kQcll;
  if (name == "baseline") return ModelKind::kBaseline;
  throw std::invalid_argument("unknown model '" + name + "' (expected qcl, qcll or baseline)");
}

std::string to_string(sketched::OutputVariant v) {
  return v == sketched::OutputVariant::kInnerProduct ? "eq14" : "eq15";
}

sketched::OutputVariant parse_variant(const std::string& name) {
  if (name == "eq14") return sketched::OutputVariant::kInnerProduct;
  if (name == "eq15") return sketched::OutputVariant::kRandomUnitary;
  throw std::invalid_argument("unknown variant '" + name + "' (expected eq14 or eq15)");
}

std::vector<Observable> block_observables(std::size_t dim, std::size_t heads) {
  if (heads == 0 || dim < heads) {
    throw std::invalid_argument("block_observables: " + std::to_string(dim) + " outputs cannot host " +
                                std::to_string(heads) + " observables");
  }
  const std::size_t w = std::min(kObservableBlock, dim / heads);
  std::vector<Observable> out;
  for (std::size_t c = 0; c < heads; ++c) out.push_back(Observable::diagonal_ones(dim, c * w, w));
  return out;
}

std::size_t LearnerSettings::resolved_angles(std::size_t input_dim) const noexcept {
  return num_angles != 0 ? num_angles : qubits_per_dim * input_dim * depth;
}

std::size_t LearnerSettings::resolved_outputs(std::size_t heads) const noexcept {
  return num_outputs != 0 ? num_outputs : std::max<std::size_t>(10, kObservableBlock * heads);
}

void LearnerSettings::validate(std::size_t input_dim) const {
  if (input_dim == 0) throw std::invalid_argument("LearnerSettings: input dimension must be >= 1");
  if (qubits_per_dim == 0) throw std::invalid_argument("LearnerSettings: qubits per dimension must be >= 1");
  if (model == ModelKind::kBaseline) return;
  if (depth == 0) throw std::invalid_argument("LearnerSettings: depth must be >= 1");
  train.validate();
  if (model == ModelKind::kQcl) {
    EncodingSpec::uniform(input_dim, qubits_per_dim).validate_for_statevector();
    if (num_angles != 0 && num_angles != qubits_per_dim * input_dim * depth) {
      throw std::invalid_argument("LearnerSettings: the circuit model has exactly qubits * depth angles");
    }
  } else if (sketch_dim == 0) {
    throw std::invalid_argument("LearnerSettings: sketch dimension must be >= 1");
  }
}

FittedModel::FittedModel(LearnerSettings settings, data::TaskKind task, std::size_t input_dim, std::size_t classes)
    : settings_(std::move(settings)), task_(task), input_dim_(input_dim), classes_(classes) {
  settings_.validate(input_dim_);
  if (task_ == data::TaskKind::kClassification && classes_ < 2) {
    throw std::invalid_argument("FittedModel: classification needs at least 2 classes");
  }
  if (task_ == data::TaskKind::kRegression) classes_ = 0;
  const EncodingSpec encoding = EncodingSpec::uniform(input_dim_, settings_.qubits_per_dim);
  if (settings_.model == ModelKind::kQcl) {
    auto circuit = qcl::CircuitSpec::sample(encoding.total_qubits(), settings_.depth, settings_.structure_seed);
    auto observables = block_observables(circuit.dim(), heads());
    readout_ = std::make_shared<qcl::QclReadout>(encoding, std::move(circuit), std::move(observables));
  } else if (settings_.model == ModelKind::kQcll) {
    sketched::QcllConfig cfg;
    cfg.encoding = encoding;
    cfg.sketch_dim = settings_.sketch_dim;
    cfg.num_angles = settings_.resolved_angles(input_dim_);
    cfg.num_outputs = settings_.resolved_outputs(heads());
    cfg.variant = settings_.variant;
    cfg.seed = settings_.structure_seed;
    auto model = std::make_shared<const sketched::QcllModel>(cfg);
    readout_ = std::make_shared<sketched::QcllReadout>(model, block_observables(cfg.num_outputs, heads()));
  }
}

optimize::LossSpec FittedModel::loss() const {
  return task_ == data::TaskKind::kRegression ? optimize::LossSpec::squared_error()
                                              : optimize::LossSpec::cross_entropy(classes_);
}

void FittedModel::set_parameters(optimize::Parameters params) {
  if (!readout_) throw std::logic_error("FittedModel: the baseline has no circuit parameters");
  if (params.a.size() != heads() || params.b.size() != heads() || params.theta.size() != readout_->num_angles()) {
    throw std::invalid_argument("FittedModel: parameter shapes do not match the model");
  }
  params_ = std::move(params);
}

Eigen::MatrixXd FittedModel::prepare_inputs(const Eigen::MatrixXd& X) const {
  if (static_cast<std::size_t>(X.cols()) != input_dim_) {
    throw std::invalid_argument("FittedModel: expected " + std::to_string(input_dim_) + " features, got " +
                                std::to_string(X.cols()));
  }
  return feature_scaling_ ? data::apply_scale(*feature_scaling_, X) : X;
}

namespace {

double unscale_target(const std::optional<std::pair<double, double>>& range, double v) {
  if (!range) return v;
  const auto [lo, hi] = *range;
  return lo + (v + 1.0) * 0.5 * (hi - lo);
}

}  // namespace

Eigen::MatrixXd FittedModel::raw_outputs(const Eigen::MatrixXd& X) const {
  const Eigen::MatrixXd xp = prepare_inputs(X);
  Eigen::MatrixXd out;
  if (settings_.model == ModelKind::kBaseline) {
    if (!ols_) throw std::logic_error("FittedModel: baseline has not been fitted");
    out = ols_->predict(xp);
  } else {
    if (params_.theta.size() != readout_->num_angles()) throw std::logic_error("FittedModel: parameters not set");
    const auto batch = readout_->encode(xp);
    out = optimize::head_outputs(readout_->readouts(params_.theta, *batch), params_, loss());
  }
  if (task_ == data::TaskKind::kRegression) {
    for (Eigen::Index n = 0; n < out.rows(); ++n) out(n, 0) = unscale_target(target_range_, out(n, 0));
  }
  return out;
}

std::vector<double> FittedModel::predict(const Eigen::MatrixXd& X) const {
  const Eigen::MatrixXd out = raw_outputs(X);
  std::vector<double> pred(static_cast<std::size_t>(out.rows()));
  for (Eigen::Index n = 0; n < out.rows(); ++n) {
    if (task_ == data::TaskKind::kRegression) {
      pred[static_cast<std::size_t>(n)] = out(n, 0);
    } else {
      Eigen::Index best = 0;
      out.row(n).maxCoeff(&best);
      pred[static_cast<std::size_t>(n)] = static_cast<double>(best);
    }
  }
  return pred;
}

FitOutcome fit_model(const LearnerSettings& settings, const data::Dataset& train) {
  train.validate();
  std::size_t classes = 0;
  if (train.kind == data::TaskKind::kClassification) {
    classes = train.num_classes();
    for (double t : train.y) classes = std::max(classes, static_cast<std::size_t>(t) + 1);
  }
  FitOutcome outcome{FittedModel(settings, train.kind, train.dim(), classes), std::nullopt};
  FittedModel& model = outcome.model;

  if (settings.scale_features) model.set_feature_scaling(data::fit_scaling(train.X));
  const Eigen::MatrixXd xp = model.prepare_inputs(train.X);

  std::vector<double> y = train.y;
  if (train.kind == data::TaskKind::kRegression && settings.scale_targets) {
    const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    model.set_target_range(std::make_pair(lo, hi));
    for (double& t : y) t = hi == lo ? 0.0 : 2.0 * (t - lo) / (hi - lo) - 1.0;
  }

  if (settings.model == ModelKind::kBaseline) {
    Eigen::MatrixXd targets;
    if (train.kind == data::TaskKind::kRegression) {
      targets = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
    } else {
      targets = baseline::one_hot(y, classes);
    }
    model.set_ols(baseline::PolyOlsModel::fit(xp, targets, EncodingSpec::uniform(train.dim(), settings.qubits_per_dim)));
    return outcome;
  }

  optimize::TrainResult result = optimize::train(*model.readout(), xp, std::move(y), model.loss(), settings.train);
  model.set_parameters(result.best);
  outcome.training = std::move(result);
  return outcome;
}

}  // namespace qcll
