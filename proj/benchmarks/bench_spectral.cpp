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

#include <random>

#include "qcll/random.hpp"
#include "qcll/sketch.hpp"
#include "qcll/spectral.hpp"

namespace {

qcll::ComplexVector random_vector(std::size_t n) {
  qcll::Rng rng(n);
  std::normal_distribution<double> g;
  qcll::ComplexVector v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

void BM_Fft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto v = random_vector(n);
  const auto& plan = qcll::spectral::plan_for(n);
  qcll::ComplexVector work = v;
  for (auto _ : state) {
    work = v;
    plan.forward(work);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Fft)->Arg(100)->Arg(128)->Arg(1000)->Arg(1024)->Arg(4096)->Complexity();

void BM_TensorSketch(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  constexpr std::size_t kSketchDim = 100;
  qcll::sketch::FactorList f;
  for (std::size_t i = 0; i < q; ++i) {
    f.factors.push_back({qcll::Complex{0.6, 0.0}, qcll::Complex{0.8, 0.0}});
    f.sketches.push_back(qcll::sketch::sample_count_sketch(2, kSketchDim, i));
  }
  for (auto _ : state) benchmark::DoNotOptimize(qcll::sketch::tensor_sketch(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TensorSketch)->RangeMultiplier(2)->Range(2, 64)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
