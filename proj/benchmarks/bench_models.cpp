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

#include "epitb/density.hpp"
#include "epitb/epidemic.hpp"
#include "epitb/mapping.hpp"
#include "epitb/quantum.hpp"

namespace {

using epitb::Complex;

epitb::TBParams two_qubits() {
  epitb::TBParams p;
  p.ep1A = 1.05;
  p.ep2A = 0.95;
  p.ep1B = 1.0;
  p.ep2B = 0.97;
  epitb::TBParams::set_hopping(p.tA_12, p.tA_21, 0.1);
  epitb::TBParams::set_hopping(p.tB_12, p.tB_21, 0.1);
  p.ec11 = 0.05;
  p.ec12 = 0.1;
  p.ec21 = 0.15;
  p.ec22 = 0.2;
  return p;
}

const epitb::ComplexVector kPsi0 = {Complex(0.5, 0.16), Complex(0.18, 0.36), Complex(0.36, -0.3), Complex(-0.15, 0.2)};

void BM_PropagateClosedForm(benchmark::State& state) {
  const auto s = epitb::Generator2::constant(-0.3, 0.2, 0.3, -0.2);
  for (auto _ : state) benchmark::DoNotOptimize(epitb::propagate_closed_form(s, {0.7, 0.3}, 0.0, 1.0));
}
BENCHMARK(BM_PropagateClosedForm);

void BM_PropagateRk(benchmark::State& state) {
  const auto s = epitb::Generator2::constant(-0.3, 0.2, 0.3, -0.2);
  for (auto _ : state) benchmark::DoNotOptimize(epitb::propagate_rk(s, {0.7, 0.3}, 0.0, 1.0, 1e-4));
}
BENCHMARK(BM_PropagateRk)->Unit(benchmark::kMillisecond);

void BM_SpectralFrame(benchmark::State& state) {
  double s11 = -0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(epitb::spectral_frame(s11, 0.2, 0.3, -0.2));
    s11 += 1e-12;
  }
}
BENCHMARK(BM_SpectralFrame);

void BM_Schrodinger(benchmark::State& state) {
  const auto h = epitb::build_hamiltonian(two_qubits());
  for (auto _ : state) benchmark::DoNotOptimize(epitb::evolve_schrodinger(h, kPsi0, 0.0, 10.0, 1e-3));
}
BENCHMARK(BM_Schrodinger)->Unit(benchmark::kMillisecond);

void BM_PureEntropyPair(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(epitb::pure_entropy_pair(kPsi0));
}
BENCHMARK(BM_PureEntropyPair);

void BM_BuildS8(benchmark::State& state) {
  const auto h = epitb::build_hamiltonian(two_qubits());
  for (auto _ : state) benchmark::DoNotOptimize(epitb::build_s8(h, kPsi0));
}
BENCHMARK(BM_BuildS8);

void BM_VerifyEquivalence(benchmark::State& state) {
  const auto p = two_qubits();
  for (auto _ : state) benchmark::DoNotOptimize(epitb::verify_equivalence(p, kPsi0, 0.0, 5.0, 1e-3));
}
BENCHMARK(BM_VerifyEquivalence)->Unit(benchmark::kMillisecond);

void BM_EvolveSqrt(benchmark::State& state) {
  epitb::RealMatrix s{{-0.5, 0.2, 0.1, 0.3}, {0.2, -0.6, 0.2, 0.1}, {0.1, 0.3, -0.5, 0.2}, {0.2, 0.1, 0.2, -0.6}};
  const auto g = epitb::Generator4::from_matrix(s);
  for (auto _ : state) benchmark::DoNotOptimize(epitb::evolve_sqrt(g, {0.4, 0.3, 0.2, 0.1}, 0.0, 1.0, 1e-3));
}
BENCHMARK(BM_EvolveSqrt)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
