// Copyright 2026 The distlab authors
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

#include <memory>

#include "benchmark/benchmark.h"

#include "distlab/certificates.hpp"
#include "distlab/kit.hpp"
#include "distlab/variation.hpp"

namespace {

using namespace distlab;

std::shared_ptr<const Chart> bench_chart() {
  static auto chart = std::make_shared<Chart>(FieldKind::kDoubleExp, 0.5);
  return chart;
}

const ConstructionKit& bench_kit() {
  static ConstructionKit kit(bench_chart(), Schedule::j_plus_one(), 6);
  return kit;
}

void BM_TimeOf(benchmark::State& state) {
  auto chart = bench_chart();
  int i = 0;
  for (auto _ : state) {
    double y = 0.25 + 0.5 * ((i++ % 997) / 997.0);
    benchmark::DoNotOptimize(chart->time_of(DD(y)));
  }
}
BENCHMARK(BM_TimeOf);

void BM_FlowTranslate(benchmark::State& state) {
  auto chart = bench_chart();
  int i = 0;
  for (auto _ : state) {
    double y = 0.25 + 0.5 * ((i++ % 997) / 997.0);
    DD ld;
    benchmark::DoNotOptimize(chart->flow_translate(DD(y), DD(1.0), &ld));
  }
}
BENCHMARK(BM_FlowTranslate);

void BM_FlowScale(benchmark::State& state) {
  auto chart = bench_chart();
  int i = 0;
  for (auto _ : state) {
    double y = 0.25 + 0.5 * ((i++ % 997) / 997.0);
    benchmark::DoNotOptimize(chart->flow_scale(DD(y), DD(2.0), 1.0));
  }
}
BENCHMARK(BM_FlowScale);

void BM_EvaluateBSWord(benchmark::State& state) {
  const auto& kit = bench_kit();
  Diffeo w = conjugate(kit.f(), power(kit.fhat(), int(state.range(0))));
  int i = 0;
  for (auto _ : state) {
    double y = -1.0 + 3.0 * ((i++ % 1009) / 1009.0);
    benchmark::DoNotOptimize(w.eval_dd(DD(y)));
  }
}
BENCHMARK(BM_EvaluateBSWord)->Arg(2)->Arg(4);

void BM_LogDerivativeFbarPower(benchmark::State& state) {
  const auto& kit = bench_kit();
  Diffeo w = power(kit.fbar(), int(state.range(0)));
  int i = 0;
  for (auto _ : state) {
    double y = 0.35 + 0.3 * ((i++ % 1009) / 1009.0);
    benchmark::DoNotOptimize(w.log_derivative(DD(y)));
  }
}
BENCHMARK(BM_LogDerivativeFbarPower)->Arg(4)->Arg(16);

void BM_BlockFlowH(benchmark::State& state) {
  const auto& kit = bench_kit();
  double lo = kit.marker(Rational(2)).to_double();
  double hi = kit.marker(Rational(4)).to_double();
  int i = 0;
  for (auto _ : state) {
    double y = lo + (hi - lo) * ((i++ % 997) / 997.0);
    benchmark::DoNotOptimize(kit.h().eval_dd(DD(y)));
  }
}
BENCHMARK(BM_BlockFlowH);

void BM_VarLogDerivative(benchmark::State& state) {
  const auto& kit = bench_kit();
  for (auto _ : state) {
    benchmark::DoNotOptimize(var_log_derivative(kit.fbar(), 64));
  }
}
BENCHMARK(BM_VarLogDerivative)->Unit(benchmark::kMillisecond);

void BM_KeyIdentityI2(benchmark::State& state) {
  const auto& kit = bench_kit();
  for (auto _ : state) {
    benchmark::DoNotOptimize(key_identity_check(kit, 2, 16));
  }
}
BENCHMARK(BM_KeyIdentityI2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
