// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference path (jobs = 1) against the OpenMP kernels (jobs > 1).
// The benchmark argument is the thread count.

#include <benchmark/benchmark.h>

#include "circuit_doe/circuits.hpp"
#include "circuit_doe/design.hpp"
#include "circuit_doe/evaluation.hpp"
#include "circuit_doe/fractions.hpp"
#include "circuit_doe/search.hpp"

namespace cd = circuit_doe;

namespace {

const cd::ModelMatrix& x_2x4() {
  static const cd::ModelMatrix x =
      cd::build_model_matrix(cd::DesignSpec::no_m_way({2, 2, 2, 2}, 3));
  return x;
}

const cd::ModelMatrix& x_2x5() {
  static const cd::ModelMatrix x =
      cd::build_model_matrix(cd::DesignSpec::no_m_way({2, 2, 2, 2, 2}, 2));
  return x;
}

const cd::CircuitBasis& basis_2x4() {
  static const cd::CircuitBasis b = cd::compute_circuits(x_2x4());
  return b;
}

const cd::CircuitBasis& basis_2x5() {
  static const cd::CircuitBasis b = cd::compute_circuits(x_2x5());
  return b;
}

void BM_CircuitsPrimal2x5(benchmark::State& state) {
  cd::CircuitOptions o;
  o.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cd::compute_circuits(x_2x5(), o).size());
}

void BM_CircuitsKernel2x4(benchmark::State& state) {
  cd::CircuitOptions o;
  o.jobs = static_cast<int>(state.range(0));
  o.strategy = cd::CircuitStrategy::kKernel;
  for (auto _ : state) benchmark::DoNotOptimize(cd::compute_circuits(x_2x4(), o).size());
}

void BM_Enumerate2x4(benchmark::State& state) {
  cd::EnumerationOptions o;
  o.jobs = static_cast<int>(state.range(0));
  const cd::CircuitBasis& b = basis_2x4();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cd::enumerate_saturated(x_2x4(), b, o).size());
  }
}

void BM_EvaluateBatch2x4(benchmark::State& state) {
  const auto fractions = cd::enumerate_saturated(x_2x4(), basis_2x4());
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cd::evaluate_batch(x_2x4(), basis_2x4(), fractions, jobs).size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fractions.size()));
}

void BM_Search2x5(benchmark::State& state) {
  cd::SearchConfig c;
  c.restarts = 64;
  c.jobs = static_cast<int>(state.range(0));
  const cd::CircuitBasis& b = basis_2x5();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cd::exchange_search(x_2x5(), b, c).size());
  }
}

}  // namespace

BENCHMARK(BM_CircuitsPrimal2x5)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CircuitsKernel2x4)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate2x4)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateBatch2x4)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Search2x5)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
