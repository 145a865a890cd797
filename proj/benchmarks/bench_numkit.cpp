// Copyright 2026 The epitb Authors
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

#include "epitb/numkit.hpp"

namespace {

epitb::RealMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  epitb::RealMatrix m(n, n);
  for (auto& v : m.data()) v = u(rng);
  return m;
}

void BM_MatExp(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(epitb::mat_exp(m));
}
BENCHMARK(BM_MatExp)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Exp2ClosedForm(benchmark::State& state) {
  double a = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(epitb::exp2_closed_form(a, 0.3, -0.2, 0.4));
    a += 1e-9;
  }
}
BENCHMARK(BM_Exp2ClosedForm);

void BM_Eig(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(epitb::eig(m));
}
BENCHMARK(BM_Eig)->Arg(2)->Arg(4)->Arg(8);

void BM_EigHermitian4(benchmark::State& state) {
  const auto r = random_matrix(4, 3);
  epitb::ComplexMatrix h(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) h(i, j) = {r(i, j) + r(j, i), i == j ? 0.0 : r(i, j) - r(j, i)};
  for (auto _ : state) benchmark::DoNotOptimize(epitb::eig(h));
}
BENCHMARK(BM_EigHermitian4);

void BM_OdeEvolve(benchmark::State& state) {
  const auto g = random_matrix(static_cast<std::size_t>(state.range(0)), 4);
  const epitb::RealVector y0(g.rows(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(epitb::ode_evolve<double>(g * 0.1, y0, 0.0, 1.0, 1e-3, false));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_OdeEvolve)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
