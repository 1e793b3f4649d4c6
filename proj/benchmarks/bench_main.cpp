// Copyright 2026 The casmat Authors
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

#include <cmath>

#include "casmat/casmat.hpp"

using namespace casmat;

static void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto space = MeasureSpace::counting(n);
  const Kernel a = Kernel::from_function(space, [](std::size_t x, std::size_t y) {
    return Complex(std::sin(double(x + 2 * y)), std::cos(double(x * y)));
  });
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Matmul)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed);

static void BM_VerifyCasHamming(benchmark::State& state) {
  const Scheme s = hamming_scheme(static_cast<std::size_t>(state.range(0)), 2);
  const auto family = BorelFamily::singletons(s.label_count());
  for (auto _ : state) benchmark::DoNotOptimize(verify_cas(s, family));
}
BENCHMARK(BM_VerifyCasHamming)->DenseRange(3, 7, 2);

static void BM_VerifyCasSphereSampled(benchmark::State& state) {
  const Scheme s = sphere_scheme(static_cast<std::size_t>(state.range(0)), 20);
  const auto family = BorelFamily::singletons(s.label_count());
  CasOptions opt;
  opt.tolerance = 1.0;
  opt.max_pairs_per_label = 32;
  for (auto _ : state) benchmark::DoNotOptimize(verify_cas(s, family, opt));
}
BENCHMARK(BM_VerifyCasSphereSampled)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_StructureConstants(benchmark::State& state) {
  const AlgebraBasis algebra = algebra_of_scheme(circle_scheme(static_cast<std::size_t>(state.range(0)), 12, true));
  for (auto _ : state) benchmark::DoNotOptimize(structure_constants(algebra));
}
BENCHMARK(BM_StructureConstants)->Arg(120)->Arg(240)->Unit(benchmark::kMillisecond);

static void BM_SphereConstruction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sphere_scheme(n, 40));
}
BENCHMARK(BM_SphereConstruction)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
