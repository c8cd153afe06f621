// Copyright 2026 The qdil Authors
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

#include "qdil/correlations.hpp"
#include "qdil/dilation.hpp"
#include "qdil/measuring_process.hpp"
#include "qdil/random.hpp"

namespace {

using namespace qdil;

CPInstrument bench_instrument(benchmark::State& state) {
  Random rng(17);
  return rng.instrument(static_cast<Index>(state.range(0)), 3, 2);
}

void BM_FromInstrument(benchmark::State& state) {
  auto inst = bench_instrument(state);
  for (auto _ : state) benchmark::DoNotOptimize(from_instrument(inst).dim_l());
}
BENCHMARK(BM_FromInstrument)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_MpFromCorrelations(benchmark::State& state) {
  auto sys = from_instrument(bench_instrument(state));
  for (auto _ : state) benchmark::DoNotOptimize(mp_from_correlations(sys).mp.dim_k);
}
BENCHMARK(BM_MpFromCorrelations)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_InducedInstrument(benchmark::State& state) {
  auto mp = mp_from_correlations(from_instrument(bench_instrument(state))).mp;
  for (auto _ : state) benchmark::DoNotOptimize(induced_instrument_mp(mp).dim());
}
BENCHMARK(BM_InducedInstrument)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_WordEvaluation(benchmark::State& state) {
  auto mp = mp_from_correlations(from_instrument(bench_instrument(state))).mp;
  auto model = mp.model();
  Random rng(5);
  Index n = mp.dim();
  TimeWord t;
  OperatorTuple ms;
  for (int k = 0; k < 4; ++k) {
    t.push_back(k % 2 == 0 ? Letter::in() : Letter::atom(3, static_cast<std::size_t>(k % 3)));
    ms.push_back(rng.ginibre(n, n));
  }
  for (auto _ : state) benchmark::DoNotOptimize(model->eval(t, ms));
}
BENCHMARK(BM_WordEvaluation)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_InnerDilation(benchmark::State& state) {
  Random rng(23);
  auto inst = rng.inner_instrument(FiniteVonNeumannAlgebra::full(state.range(0)), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(inner_mp_from_kraus(inst).mp.dim_k);
}
BENCHMARK(BM_InnerDilation)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_AxiomSuite(benchmark::State& state) {
  auto sys = from_instrument(Random(31).instrument(2, 2, 2));
  auto model = sys.model();
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_axioms(*model, 3, state.range(0), 1).all_passed());
}
BENCHMARK(BM_AxiomSuite)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
