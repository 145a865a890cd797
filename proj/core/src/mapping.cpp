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

#include "epitb/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epitb {

RealVector split_state(const RealVector& p, const RealVector& theta) {
  if (p.size() != theta.size()) throw DimensionError("p and theta differ in length");
  RealVector x(2 * p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < 0.0) throw ValidationError("negative probability");
    const double c = std::cos(theta[k]), s = std::sin(theta[k]);
    x[2 * k] = c * c * p[k];
    x[2 * k + 1] = s * s * p[k];
  }
  return x;
}

RealVector split_state(const ComplexVector& psi) {
  RealVector x(2 * psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) {
    x[2 * k] = psi[k].real() * psi[k].real();
    x[2 * k + 1] = psi[k].imag() * psi[k].imag();
  }
  return x;
}

RecoveredPhases phase_from_split(const RealVector& x) {
  if (x.size() % 2 != 0) throw DimensionError("split state must have even length");
  RecoveredPhases r{RealVector(x.size() / 2), RealVector(x.size() / 2)};
  for (std::size_t k = 0; k < r.p.size(); ++k) {
    const double re = x[2 * k], im = x[2 * k + 1];
    r.p[k] = re + im;
    r.tan2[k] = re < kSplitFloor ? std::numeric_limits<double>::infinity() : im / re;
  }
  return r;
}

RealMatrix real_form_generator(const ComplexMatrix& h) {
  const std::size_t n = h.rows();
  if (h.cols() != n) throw DimensionError("Hamiltonian must be square");
  if (n != 2 && n != 4) throw DimensionError("real form supports N = 2 or 4");
  RealMatrix a(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = h(k, j).real(), im = h(k, j).imag();
      a(2 * k, 2 * j) = im;
      a(2 * k, 2 * j + 1) = re;
      a(2 * k + 1, 2 * j) = -re;
      a(2 * k + 1, 2 * j + 1) = im;
    }
  return a;
}

RealVector to_real_form(const ComplexVector& psi) {
  RealVector x(2 * psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) {
    x[2 * k] = psi[k].real();
    x[2 * k + 1] = psi[k].imag();
  }
  return x;
}

ComplexVector from_real_form(const RealVector& x) {
  if (x.size() % 2 != 0) throw DimensionError("real form must have even length");
  ComplexVector psi(x.size() / 2);
  for (std::size_t k = 0; k < psi.size(); ++k) psi[k] = {x[2 * k], x[2 * k + 1]};
  return psi;
}

RealMatrix build_s8(const ComplexMatrix& h, const ComplexVector& psi, double time) {
  if (psi.size() != h.rows()) throw DimensionError("state and Hamiltonian sizes differ");
  const RealMatrix a = real_form_generator(h);
  const RealVector y = to_real_form(psi);
  for (std::size_t j = 0; j < y.size(); ++j)
    if (y[j] * y[j] < kSplitFloor) throw FloorError("split component below floor", time, static_cast<int>(j));
  RealMatrix s(y.size(), y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s(i, j) = 2.0 * y[i] * a(i, j) / y[j];
  return s;
}

RealMatrix build_s8(const TBParams& params, const ComplexVector& psi, double time) {
  return build_s8(build_hamiltonian(params), psi, time);
}

std::array<double, 4> apply_aharonov_bohm(const std::array<double, 4>& theta, const VectorPotential& v) {
  const double g = v.delta_l * v.e_over_hbar;
  return {theta[0] + (v.a1A + v.a1B) * g, theta[1] + (v.a1A + v.a2B) * g, theta[2] + (v.a2A + v.a1B) * g,
          theta[3] + (v.a2A + v.a2B) * g};
}

ComplexVector apply_aharonov_bohm(const ComplexVector& psi, const VectorPotential& v) {
  if (psi.size() != 4) throw DimensionError("expected a 4-component state");
  const auto shift = apply_aharonov_bohm(std::array<double, 4>{}, v);
  ComplexVector out(4);
  for (std::size_t k = 0; k < 4; ++k) out[k] = psi[k] * std::polar(1.0, shift[k]);
  return out;
}

namespace {

bool is_hermitian(const ComplexMatrix& h) {
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (std::abs(h(i, j) - std::conj(h(j, i))) > 1e-15) return false;
  return true;
}

bool above_floor(const ComplexVector& psi) {
  for (const auto& z : psi)
    if (z.real() * z.real() < kSplitFloor || z.imag() * z.imag() < kSplitFloor) return false;
  return true;
}

}  // namespace

EquivalenceReport verify_equivalence(const ComplexMatrix& h, const ComplexVector& psi0, double t0, double t1,
                                     double dt) {
  EquivalenceReport r;
  r.hermitian = is_hermitian(h);
  const auto traj = evolve_schrodinger(h, psi0, t0, t1, dt);
  const auto polar = polar_split(traj);
  const std::size_t n = traj.size();
  const ComplexMatrix gen = h * Complex(0.0, -1.0);

  std::vector<RealVector> xs(n);
  for (std::size_t m = 0; m < n; ++m) xs[m] = split_state(traj.states[m]);

  r.norm_initial = norm2(traj.states.front());
  r.norm_final = norm2(traj.states.back());
  double prev_norm = r.norm_initial;
  for (std::size_t m = 0; m < n; ++m) {
    const double nm = norm2(traj.states[m]);
    r.norm_drift = std::max(r.norm_drift, std::abs(nm - r.norm_initial));
    if (nm > prev_norm + 1e-15) r.norm_nonincreasing = false;
    prev_norm = nm;

    const auto rec = phase_from_split(xs[m]);
    for (std::size_t k = 0; k < rec.p.size(); ++k) {
      r.split_error = std::max(r.split_error, std::abs(polar.p[m][k] - rec.p[k]));
      if (std::isfinite(rec.tan2[k])) {
        const double t = std::tan(polar.theta[m][k]);
        r.tan2_error = std::max(r.tan2_error, std::abs(rec.tan2[k] - t * t) / std::max(1.0, t * t));
      }
    }
  }

  // Interior samples only: the residual and Θ̇ both use central differences.
  bool open = false;
  double start = 0.0;
  for (std::size_t m = 1; m + 1 < n; ++m) {
    const double tm = traj.times[m];
    const bool ok = above_floor(traj.states[m - 1]) && above_floor(traj.states[m]) && above_floor(traj.states[m + 1]);
    if (!ok) {
      if (!open) start = tm;
      open = true;
      continue;
    }
    if (open) {
      r.excluded.emplace_back(start, traj.times[m - 1]);
      open = false;
    }
    const double h2 = traj.times[m + 1] - traj.times[m - 1];
    const RealMatrix s = build_s8(h, traj.states[m], tm);
    const RealVector sx = s * xs[m];
    for (std::size_t i = 0; i < sx.size(); ++i)
      r.max_residual = std::max(r.max_residual, std::abs((xs[m + 1][i] - xs[m - 1][i]) / h2 - sx[i]));
    const ComplexVector dpsi = gen * traj.states[m];
    for (std::size_t k = 0; k < dpsi.size(); ++k) {
      const double fd = (polar.theta[m + 1][k] - polar.theta[m - 1][k]) / h2;
      r.theta_rate_error = std::max(r.theta_rate_error, std::abs(fd - (dpsi[k] / traj.states[m][k]).imag()));
    }
    ++r.samples_checked;
  }
  if (open) r.excluded.emplace_back(start, traj.times[n >= 2 ? n - 2 : 0]);

  const auto real = ode_evolve<double>(real_form_generator(h), to_real_form(psi0), t0, t1, dt);
  for (std::size_t m = 0; m < n; ++m) {
    const ComplexVector back = from_real_form(real.states[m]);
    for (std::size_t k = 0; k < back.size(); ++k)
      r.real_form_error = std::max(r.real_form_error, std::abs(back[k] - traj.states[m][k]));
  }
  return r;
}

EquivalenceReport verify_equivalence(const TBParams& params, const ComplexVector& psi0, double t0, double t1,
                                     double dt) {
  return verify_equivalence(build_hamiltonian(params), psi0, t0, t1, dt);
}

}  // namespace epitb
