// Copyright 2026 The GSQC Authors
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

#include <random>

#include "gsqc/adiabatic.hpp"
#include "gsqc/compile.hpp"
#include "gsqc/eigensolver.hpp"
#include "gsqc/spectral.hpp"

namespace {

using namespace gsqc;

// Single line of N seeded random teleported gates (dimension 2 * 15^N).
CompiledCircuit chain_of(int n) {
  std::mt19937_64 rng(7);
  CircuitSpec c;
  for (int s = 1; s <= n; ++s) {
    c.gates.push_back({gates::random_unitary(2, rng), {0}, s, "U"});
  }
  return compile(c);
}

void BM_Assemble(benchmark::State& state) {
  const auto compiled = chain_of(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compiled.spec.evaluate(2.0));
  }
  state.counters["dimension"] = static_cast<double>(compiled.reg->dimension());
}
BENCHMARK(BM_Assemble)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_Matvec(benchmark::State& state) {
  const auto compiled = chain_of(static_cast<int>(state.range(0)));
  const auto h = compiled.spec.evaluate(2.0);
  Vector x = Vector::Ones(static_cast<Eigen::Index>(h.dimension()));
  Vector y(x.size());
  for (auto _ : state) {
    y.noalias() = h.matrix() * x;
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["nonzeros"] = static_cast<double>(h.nonzeros());
}
BENCHMARK(BM_Matvec)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_ParametricCombine(benchmark::State& state) {
  const auto compiled = chain_of(static_cast<int>(state.range(0)));
  const ParametricHamiltonian ph(compiled.spec);
  CsrMatrix out;
  double lambda = 0.0;
  for (auto _ : state) {
    ph.combine(1.0, ParametricHamiltonian::LinkCoefficients::at(lambda), out);
    lambda += 1e-3;
    benchmark::DoNotOptimize(out.valuePtr());
  }
}
BENCHMARK(BM_ParametricCombine)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_GroundAndGap(benchmark::State& state) {
  const auto compiled = chain_of(static_cast<int>(state.range(0)));
  const auto h = compiled.spec.evaluate(2.0);
  for (auto _ : state) {
    const auto r = ground_and_gap(h);
    benchmark::DoNotOptimize(r.e1);
  }
}
BENCHMARK(BM_GroundAndGap)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_EvolveRamp(benchmark::State& state) {
  const auto compiled = chain_of(static_cast<int>(state.range(0)));
  EvolveOptions o;
  o.track_energy = false;
  o.samples = 2;
  for (auto _ : state) {
    const auto trace = evolve(compiled.spec, Schedule::linear(4.0, 50.0), o);
    benchmark::DoNotOptimize(trace.final_infidelity);
  }
}
BENCHMARK(BM_EvolveRamp)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
