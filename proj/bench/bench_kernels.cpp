// Copyright 2026 The oegap Authors
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

#include <benchmark/benchmark.h>

#include "oegap/optimize.hpp"
#include "oegap/parallel.hpp"
#include "oegap/random.hpp"
#include "oegap/states.hpp"

namespace {

using namespace oegap;

struct ProbabilityCase {
  DensityMatrix rho;
  Povm povm;
};

ProbabilityCase make_case(int qubits) {
  Dims dims(qubits, 2);
  Rng rng = make_rng(99, qubits);
  const int d = 1 << qubits;
  return {random_density(dims, rng), Povm::from_basis(haar_unitary(d, rng), dims)};
}

void BM_ProbabilitiesSerial(benchmark::State& state) {
  const auto c = make_case(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parallel::probabilities_serial(c.rho.matrix(), c.povm.effects()));
  state.SetItemsProcessed(state.iterations() * c.povm.size());
}

void BM_ProbabilitiesParallel(benchmark::State& state) {
  const auto c = make_case(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parallel::probabilities_parallel(c.rho.matrix(), c.povm.effects()));
  state.SetItemsProcessed(state.iterations() * c.povm.size());
}

void lostar_restarts(benchmark::State& state, int workers) {
  OptConfig cfg;
  cfg.restarts = static_cast<int>(state.range(0));
  cfg.workers = workers;
  const DensityMatrix rho = werner(3, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_lostar(rho, PartitionSpec::full(2), cfg).entropy.bits);
}

void BM_LOStarRestartsSerial(benchmark::State& state) { lostar_restarts(state, 1); }
void BM_LOStarRestartsParallel(benchmark::State& state) { lostar_restarts(state, 0); }

}  // namespace

BENCHMARK(BM_ProbabilitiesSerial)->DenseRange(3, 6);
BENCHMARK(BM_ProbabilitiesParallel)->DenseRange(3, 6);
BENCHMARK(BM_LOStarRestartsSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LOStarRestartsParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
