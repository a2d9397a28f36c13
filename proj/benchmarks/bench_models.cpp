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


#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "qcll/learner.hpp"
#include "qcll/optimize.hpp"
#include "qcll/qcl_reference.hpp"
#include "qcll/sketched_model.hpp"

namespace {

void BM_QcllPredict(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  qcll::sketched::QcllConfig cfg;
  cfg.encoding = qcll::EncodingSpec::uniform(1, q);
  cfg.num_angles = 36;
  const qcll::sketched::QcllModel model(cfg);
  const std::vector<double> theta(cfg.num_angles, 0.3);
  const std::vector<double> x = {0.4};
  const auto b = qcll::Observable::diagonal_ones(cfg.num_outputs, 0, 5);
  for (auto _ : state) benchmark::DoNotOptimize(model.predict(x, theta, 1.0, 0.0, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QcllPredict)->Arg(10)->Arg(20)->Arg(40)->Arg(80)->Complexity(benchmark::oN);

void BM_QclPredict(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const auto circuit = qcll::qcl::CircuitSpec::sample(q, 6, 1);
  const std::vector<double> theta(circuit.num_angles(), 0.3);
  const std::vector<double> x = {0.4};
  const auto b = qcll::Observable::diagonal_ones(circuit.dim(), 0, 5);
  const auto enc = qcll::EncodingSpec::uniform(1, q);
  for (auto _ : state) benchmark::DoNotOptimize(qcll::qcl::predict_qcl(circuit, theta, 1.0, 0.0, x, enc, b));
}
BENCHMARK(BM_QclPredict)->DenseRange(2, 8, 2);

/// One cost-and-gradient evaluation on 100 samples, the unit of training work.
void BM_CostGradient(benchmark::State& state) {
  qcll::LearnerSettings s;
  s.model = state.range(0) == 0 ? qcll::ModelKind::kQcl : qcll::ModelKind::kQcll;
  const qcll::FittedModel shell(s, qcll::data::TaskKind::kRegression, 1, 0);
  Eigen::MatrixXd X = Eigen::VectorXd::LinSpaced(100, -1.0, 1.0);
  std::vector<double> y(100, 0.5);
  const qcll::optimize::Objective obj(*shell.readout(), X, y, qcll::optimize::LossSpec::squared_error());
  std::vector<double> params(obj.num_parameters(), 0.7), grad(params.size());
  for (auto _ : state) benchmark::DoNotOptimize(obj.cost_and_gradient(params, grad));
  state.SetLabel(state.range(0) == 0 ? "qcl" : "qcll");
}
BENCHMARK(BM_CostGradient)->Arg(0)->Arg(1);

}  // namespace
