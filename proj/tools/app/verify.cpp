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

#include "app/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "epitb/coupled.hpp"
#include "epitb/density.hpp"
#include "epitb/epidemic.hpp"
#include "epitb/mapping.hpp"
#include "epitb/quantum.hpp"

namespace epitb::app {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Generator2 random_generator(std::mt19937_64& rng) {
  return Generator2::constant(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
}

bool real_spectrum(const Generator2& g, double margin) {
  const RealMatrix m = g.at(0.0);
  const double d = m(0, 0) - m(1, 1);
  return d * d + 4 * m(0, 1) * m(1, 0) > margin;
}

RealMatrix master_generator(std::mt19937_64& rng) {
  RealMatrix g(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != j) col += g(i, j) = uniform(rng, 0.05, 0.6);
    g(j, j) = -col;
  }
  return g;
}

ComplexVector random_state(std::mt19937_64& rng) {
  ComplexVector psi(4);
  for (auto& z : psi) z = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
  const double n = std::sqrt(norm2(psi));
  for (auto& z : psi) z /= n;
  return psi;
}

TBParams reference_params() {
  TBParams p;
  p.ep1A = p.ep2A = p.ep1B = p.ep2B = 1.0;
  TBParams::set_hopping(p.tA_12, p.tA_21, 0.1);
  TBParams::set_hopping(p.tB_12, p.tB_21, 0.1);
  p.ec11 = p.ec12 = p.ec21 = p.ec22 = 0.05;
  return p;
}

TBParams certificate_params() {
  TBParams p;
  p.ep1A = 1.05;
  p.ep2A = 0.95;
  p.ep1B = 1.0;
  p.ep2B = 0.97;
  TBParams::set_hopping(p.tA_12, p.tA_21, 0.1);
  TBParams::set_hopping(p.tB_12, p.tB_21, 0.1);
  p.ec11 = 0.05;
  p.ec12 = 0.1;
  p.ec21 = 0.15;
  p.ec22 = 0.2;
  return p;
}

ComplexVector generic_state() {
  ComplexVector psi = {std::polar(0.6, 0.3), std::polar(0.4, 1.1), std::polar(0.5, -0.7), std::polar(0.3, 2.2)};
  const double n = std::sqrt(norm2(psi));
  for (auto& z : psi) z /= n;
  return psi;
}

double dot2(const RealVector& a, const RealVector& b) { return a[0] * b[0] + a[1] * b[1]; }

double mode_residual(const RealMatrix& m, const CoupledMode& mode) {
  const RealVector mv = m * mode.vec;
  double r = 0.0, n = 0.0;
  for (std::size_t k = 0; k < mv.size(); ++k) {
    r = std::max(r, std::abs(mv[k] - mode.value * mode.vec[k]));
    n = std::max(n, std::abs(mode.vec[k]));
  }
  return r / n;
}

std::vector<Check> c01() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Generator2 s = random_generator(rng);
    const double a = uniform(rng, 0, 1);
    const ProbState2 p0{a, 1 - a};
    const ProbState2 cf = propagate_closed_form(s, p0, 0.0, 1.0);
    const ProbState2 rk = propagate_rk(s, p0, 0.0, 1.0, 1e-4);
    worst = std::max({worst, std::abs(cf.p1 - rk.p1), std::abs(cf.p2 - rk.p2)});
  }
  return {check_le("c01.propagator.closed_form_vs_rk", worst, 1e-8, 1)};
}

std::vector<Check> c02() {
  std::mt19937_64 rng(2);
  double r2 = 0.0, r4 = 0.0, orth = 0.0;
  for (int used = 0; used < 200;) {
    const Generator2 s = random_generator(rng);
    if (!real_spectrum(s, 1e-6)) continue;
    r2 = std::max(r2, frame_residual(s.at(0.0), spectral_frame(s, 0.0)));
    ++used;
  }
  for (int used = 0; used < 100;) {
    const Generator2 s = Generator2::constant(uniform(rng, -1, 1), uniform(rng, 0.05, 1), uniform(rng, 0.05, 1),
                                              uniform(rng, -1, 1));
    const Generator4 g = build_symmetric_generator(s, uniform(rng, 0.0, 0.5));
    CoupledSpectrum sp;
    try {
      sp = coupled_eigenvectors(g, 0.0);
    } catch (const ComplexSpectrumError&) {
      continue;
    }
    for (const auto& mode : sp.modes) r4 = std::max(r4, mode_residual(g.at(0.0), mode));
    ++used;
  }
  for (int k = 0; k < 200; ++k) {
    const double c = uniform(rng, 0.05, 1.0) * (k % 2 ? 1.0 : -1.0);
    const SpectralFrame2 f = spectral_frame(uniform(rng, -1, 1), c, c, uniform(rng, -1, 1));
    orth = std::max(orth, std::abs(dot2(f.v1, f.v2)) / std::sqrt(f.n1 * f.n2));
  }
  const SpectralFrame2 w = spectral_frame(0.0, 0.2, 0.8, 0.0);
  const double witness = std::abs(dot2(w.v1, w.v2)) / std::sqrt(w.n1 * w.n2);
  return {check_le("c02.spectral.residual_2x2", r2, 1e-12, 2), check_le("c02.spectral.residual_4x4", r4, 1e-10, 2),
          check_le("c02.spectral.orthogonality_symmetric", orth, 1e-12, 2),
          check_gt("c02.spectral.nonorthogonal_witness", witness, 1e-6, 2)};
}

std::vector<Check> c03() {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int used = 0; used < 20;) {
    const Generator2 s = random_generator(rng);
    if (!real_spectrum(s, 1e-3)) continue;
    const SpectralFrame2 f = spectral_frame(s, 0.0);
    const EnsembleWeights w0{uniform(rng, 0.1, 1), uniform(rng, 0.1, 1)};
    std::vector<double> ts, ys;
    for (int k = 0; k < 100; ++k) {
      const double t = 0.05 * k;
      const EnsembleWeights w = eigenmode_evolve_const(s, w0, 0.0, t);
      ts.push_back(t);
      ys.push_back(std::log(w.pI / w.pII));
    }
    double mt = 0, my = 0;
    for (int k = 0; k < 100; ++k) {
      mt += ts[k] / 100;
      my += ys[k] / 100;
    }
    double sxy = 0, sxx = 0;
    for (int k = 0; k < 100; ++k) {
      sxy += (ts[k] - mt) * (ys[k] - my);
      sxx += (ts[k] - mt) * (ts[k] - mt);
    }
    worst = std::max(worst, std::abs(sxy / sxx - (f.E1 / f.n1 - f.E2 / f.n2)));
    ++used;
  }
  return {check_le("c03.rabi.ratio_slope", worst, 1e-9, 3)};
}

std::vector<Check> c04() {
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double c = uniform(rng, 0.05, 1.0);
    const SpectralFrame2 f = spectral_frame(uniform(rng, -1, 1), c, c, uniform(rng, -1, 1));
    const ProbState2 p{uniform(rng, 0, 1), uniform(rng, 0, 1)};
    const ProbState2 back = ensemble_reconstruct(ensemble_decompose(p, f), f);
    worst = std::max({worst, std::abs(back.p1 - p.p1), std::abs(back.p2 - p.p2)});
  }
  return {check_le("c04.ensemble.roundtrip", worst, 1e-12, 4)};
}

std::vector<Check> c05() {
  std::mt19937_64 rng(5);
  double worst = 0.0, endpoint = 0.0;
  for (int k = 0; k < 3; ++k) {
    const RealMatrix s = master_generator(rng);
    const RealVector p0 = {0.4, 0.3, 0.2, 0.1};
    const SqrtEvolution ev = evolve_sqrt(Generator4::from_matrix(s), p0, 0.0, 5.0, 1e-4);
    worst = std::max(worst, ev.oracle_gap);
    endpoint = std::max(endpoint, norm_inf(ev.p.states.back() - mat_exp(s * 5.0) * p0));
  }
  return {check_le("c05.sqrt.trajectory_gap", worst, 1e-8, 5), check_le("c05.sqrt.endpoint_vs_expm", endpoint, 1e-8, 5)};
}

std::vector<Check> c06() {
  std::mt19937_64 rng(6);
  double tf = 0.0;
  for (int k = 0; k < 5; ++k) {
    const RealVector p = {0.4, 0.3, 0.2, 0.1};
    tf = std::max(tf, density_eom_residual(Generator4::from_matrix(master_generator(rng)), p, 1e-4).transpose_form);
  }
  RealMatrix sym(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) sym(i, j) = sym(j, i) = uniform(rng, -0.5, 0.5);
  const EomResidual rs = density_eom_residual(Generator4::from_matrix(sym), {0.25, 0.25, 0.25, 0.25}, 1e-4);
  return {check_le("c06.density.transpose_form", tf, 1e-6, 6),
          check_le("c06.density.anticommutator_symmetric", rs.anticommutator, 1e-6, 6)};
}

std::vector<Check> c07() {
  std::mt19937_64 rng(7);
  double sym = 0.0;
  for (int k = 0; k < 200; ++k) {
    const EntropyPair e = pure_entropy_pair(random_state(rng));
    sym = std::max(sym, std::abs(e.sa - e.sb));
  }
  const double r = 1.0 / std::sqrt(2.0);
  const EntropyPair bell = pure_entropy_pair({r, 0.0, 0.0, r});
  const double bell_err = std::max(std::abs(bell.sa - std::log(2.0)), std::abs(bell.sb - std::log(2.0)));
  const ComplexVector prod = {0.6 * 0.8, Complex(0.0, 0.6 * 0.6), 0.8 * 0.8, Complex(0.0, 0.8 * 0.6)};
  const EntropyPair pe = pure_entropy_pair(prod);
  TBParams p = reference_params();
  p.ec11 = p.ec12 = p.ec21 = p.ec22 = 0.0;
  p.ep2A = 1.4;
  p.ep2B = 0.7;
  const auto traj = evolve_schrodinger(build_hamiltonian(p), prod, 0.0, 5.0, 1e-3);
  double evolved = 0.0;
  for (const auto& s : traj.states) evolved = std::max(evolved, pure_entropy_pair(s).sa);
  return {check_le("c07.entropy.pure_symmetry", sym, 1e-9, 7), check_le("c07.entropy.bell_ln2", bell_err, 1e-9, 7),
          check_le("c07.entropy.product_zero", std::max(pe.sa, pe.sb), 1e-9, 7),
          check_le("c07.entropy.noninteracting_evolution", evolved, 1e-9, 7)};
}

std::vector<Check> c08() {
  const ComplexMatrix h = build_hamiltonian(reference_params());
  const ComplexVector psi0 = generic_state();
  const auto traj = evolve_schrodinger(h, psi0, 0.0, 10.0, 1e-3);
  const double e0 = expectation(h, psi0).real();
  double drift = 0.0, energy = 0.0;
  for (const auto& s : traj.states) {
    drift = std::max(drift, std::abs(norm2(s) - 1.0));
    energy = std::max(energy, std::abs(expectation(h, s).real() - e0));
  }
  const ComplexVector ref = mat_exp(h * Complex(0.0, -10.0)) * psi0;
  double gap = 0.0;
  for (std::size_t k = 0; k < 4; ++k) gap = std::max(gap, std::abs(ref[k] - traj.states.back()[k]));
  return {check_le("c08.unitarity.norm_drift", drift, 1e-9, 8), check_le("c08.unitarity.energy_drift", energy, 1e-8, 8),
          check_le("c08.unitarity.expm_gap", gap, 1e-8, 8)};
}

std::vector<Check> c09() {
  const EquivalenceReport r = verify_equivalence(certificate_params(), generic_state(), 0.0, 5.0, 1e-4);
  const ComplexMatrix h2{{0.3, Complex(0.1, 0.05)}, {Complex(0.1, -0.05), -0.2}};
  const ComplexVector q0 = {std::polar(0.8, 0.2), std::polar(0.6, -1.0)};
  const auto q = evolve_schrodinger(h2, q0, 0.0, 5.0, 1e-3);
  const auto x = ode_evolve<double>(real_form_generator(h2), to_real_form(q0), 0.0, 5.0, 1e-3);
  double n2 = 0.0;
  for (std::size_t m = 0; m < q.size(); ++m) {
    const ComplexVector back = from_real_form(x.states[m]);
    for (std::size_t k = 0; k < 2; ++k) n2 = std::max(n2, std::abs(back[k] - q.states[m][k]));
  }
  return {check_le("c09.mapping.s8_residual", r.max_residual, 1e-6, 9),
          check_le("c09.mapping.split_consistency", r.split_error, 1e-10, 9),
          check_le("c09.mapping.real_form_n4", r.real_form_error, 1e-8, 9),
          check_le("c09.mapping.real_form_n2", n2, 1e-8, 9)};
}

std::vector<Check> c10() {
  TBParams d = certificate_params();
  d.hermitian = false;
  for (Complex* e : {&d.ep1A, &d.ep2A, &d.ep1B, &d.ep2B}) *e += Complex(0.0, -0.1);
  const auto traj = evolve_schrodinger(build_hamiltonian(d), generic_state(), 0.0, 5.0, 1e-3);
  double rise = 0.0;
  for (std::size_t m = 1; m < traj.size(); ++m)
    rise = std::max(rise, norm2(traj.states[m]) - norm2(traj.states[m - 1]));
  const double ratio = norm2(traj.states.back()) / norm2(traj.states.front());
  return {check_le("c10.dissipation.max_increase", rise, 0.0, 10),
          check_le("c10.dissipation.final_ratio", ratio, 0.95, 10),
          check_le("c10.dissipation.decay_law", std::abs(ratio - std::exp(-2.0)), 1e-8, 10)};
}

std::vector<Check> c11() {
  const std::array<double, 4> th = {0.1, -0.2, 0.3, 1.4};
  const auto same = apply_aharonov_bohm(th, VectorPotential{});
  double zero = 0.0;
  for (std::size_t k = 0; k < 4; ++k) zero = std::max(zero, std::abs(same[k] - th[k]));
  VectorPotential loc;
  loc.a2A = 0.7;
  const auto ls = apply_aharonov_bohm(th, loc);
  // Only Θ_III and Θ_IV contain site 2A.
  const double untouched = std::max(std::abs(ls[0] - th[0]), std::abs(ls[1] - th[1]));
  const double shifted = std::max(std::abs(ls[2] - th[2] - 0.7), std::abs(ls[3] - th[3] - 0.7));
  VectorPotential g;
  g.a1A = g.a2A = g.a1B = g.a2B = 0.3;
  const ComplexMatrix h = build_hamiltonian(certificate_params());
  const auto base = evolve_schrodinger(h, generic_state(), 0.0, 5.0, 1e-3);
  const auto moved = evolve_schrodinger(h, apply_aharonov_bohm(generic_state(), g), 0.0, 5.0, 1e-3);
  double gap = 0.0;
  for (std::size_t m = 0; m < base.size(); ++m)
    for (std::size_t k = 0; k < 4; ++k)
      gap = std::max(gap, std::abs(std::norm(base.states[m][k]) - std::norm(moved.states[m][k])));
  return {check_le("c11.aharonov_bohm.zero_identity", zero, 0.0, 11),
          check_le("c11.aharonov_bohm.local_untouched", untouched, 0.0, 11),
          check_le("c11.aharonov_bohm.local_shift", shifted, 1e-15, 11),
          check_le("c11.aharonov_bohm.global_invariance", gap, 1e-8, 11)};
}

std::vector<Check> c12() {
  const RealVector p = {0.3, 0.7, 0.4, 0.6};
  const RealVector want[4] = {{1, 0, 0.4, 0.6}, {0, 1, 0.4, 0.6}, {0.3, 0.7, 1, 0}, {0.3, 0.7, 0, 1}};
  const Subsystem all[4] = {Subsystem::A1, Subsystem::A2, Subsystem::B1, Subsystem::B2};
  double proj = 0.0;
  for (int k = 0; k < 4; ++k) proj = std::max(proj, norm_inf(measure_subsystem(p, all[k]) - want[k]));
  const ProbState2 m1 = measure_projective({0.3, 0.7}, 1), m2 = measure_projective({0.3, 0.7}, 2);
  proj = std::max({proj, std::abs(m1.p1 - 1.0), std::abs(m1.p2), std::abs(m2.p1), std::abs(m2.p2 - 1.0)});

  const ProbState2 w = measure_weak({0.3, 0.7}, 1000.0, 250.0, {0.9, 0.1});
  const double weak = std::max(std::abs(w.p1 - (750.0 * 0.3 + 250.0 * 0.9) / 1000.0),
                               std::abs(w.p2 - (750.0 * 0.7 + 250.0 * 0.1) / 1000.0));

  const Generator2 a = Generator2::constant(-0.3, 0.2, 0.3, -0.2);
  const Generator4 g = build_traffic_generator(a, a, CrossRates::uniform(0.15));
  const RealVector p0 = {0.4, 0.6, 0.5, 0.5};
  const RealVector x = propagate_n(g.fn, p0, 0.0, 1.0, 1e-3);
  const RealVector y = propagate_n(g.fn, measure_subsystem(p0, Subsystem::A1), 0.0, 1.0, 1e-3);
  const double div = std::max(std::abs(x[2] - y[2]), std::abs(x[3] - y[3]));
  return {check_le("c12.measurement.projective_after_states", proj, 0.0, 12),
          check_le("c12.measurement.weak_update", weak, 0.0, 12),
          check_gt("c12.measurement.backaction_divergence", div, 1e-6, 12)};
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool contains(const std::string& hay, const std::string& needle) {
  return lower(hay).find(lower(needle)) != std::string::npos;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "closed-form propagator", {"c01.propagator.closed_form_vs_rk"}, c01},
      {2, "spectral fidelity",
       {"c02.spectral.residual_2x2", "c02.spectral.residual_4x4", "c02.spectral.orthogonality_symmetric",
        "c02.spectral.nonorthogonal_witness"},
       c02},
      {3, "rabi ratio law", {"c03.rabi.ratio_slope"}, c03},
      {4, "ensemble roundtrip", {"c04.ensemble.roundtrip"}, c04},
      {5, "sqrt transform exactness", {"c05.sqrt.trajectory_gap", "c05.sqrt.endpoint_vs_expm"}, c05},
      {6, "density equation of motion", {"c06.density.transpose_form", "c06.density.anticommutator_symmetric"}, c06},
      {7, "entanglement entropy",
       {"c07.entropy.pure_symmetry", "c07.entropy.bell_ln2", "c07.entropy.product_zero",
        "c07.entropy.noninteracting_evolution"},
       c07},
      {8, "quantum unitarity and energy",
       {"c08.unitarity.norm_drift", "c08.unitarity.energy_drift", "c08.unitarity.expm_gap"}, c08},
      {9, "2N mapping certificate",
       {"c09.mapping.s8_residual", "c09.mapping.split_consistency", "c09.mapping.real_form_n4",
        "c09.mapping.real_form_n2"},
       c09},
      {10, "dissipation",
       {"c10.dissipation.max_increase", "c10.dissipation.final_ratio", "c10.dissipation.decay_law"}, c10},
      {11, "aharonov-bohm",
       {"c11.aharonov_bohm.zero_identity", "c11.aharonov_bohm.local_untouched", "c11.aharonov_bohm.local_shift",
        "c11.aharonov_bohm.global_invariance"},
       c11},
      {12, "measurement semantics",
       {"c12.measurement.projective_after_states", "c12.measurement.weak_update",
        "c12.measurement.backaction_divergence"},
       c12},
  };
  return list;
}

bool matches(const Criterion& c, const std::string& pattern) {
  if (pattern.empty() || contains(c.title, pattern)) return true;
  return std::any_of(c.checks.begin(), c.checks.end(), [&](const std::string& n) { return contains(n, pattern); });
}

std::vector<Check> run_verify_suite(const std::string& pattern) {
  std::vector<Check> out;
  for (const auto& c : criteria()) {
    if (!matches(c, pattern)) continue;
    const bool whole = pattern.empty() || contains(c.title, pattern);
    std::vector<Check> got;
    try {
      got = c.run();
    } catch (const std::exception& e) {
      Check fail{c.checks.front(), std::nan(""), "error", 0.0, false, c.id, e.what()};
      got = {fail};
    }
    for (auto& chk : got)
      if (whole || contains(chk.name, pattern)) out.push_back(std::move(chk));
  }
  return out;
}

std::string render_table(const std::vector<Check>& checks) {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::string out;
  for (const auto& c : checks) {
    std::string line = c.pass ? "PASS  " : "FAIL  ";
    line += c.name + std::string(width - c.name.size() + 2, ' ');
    line += "value=" + format_short(c.value);
    if (c.relation != "info" && c.relation != "error") line += "  " + c.relation + " " + format_short(c.tolerance);
    if (!c.detail.empty()) line += "  (" + c.detail + ")";
    out += line + "\n";
  }
  return out;
}

}  // namespace epitb::app
