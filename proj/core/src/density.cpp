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

#include "epitb/density.hpp"

#include <algorithm>
#include <cmath>

namespace epitb {
namespace {

RealVector clamp_floor(const RealVector& p, bool regularize, double t) {
  RealVector q = p;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (q[k] < kProbFloor || !std::isfinite(q[k])) {
      if (!regularize || !std::isfinite(q[k])) throw FloorError("probability below floor", t, static_cast<int>(k));
      q[k] = kProbFloor;
    }
  }
  return q;
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) r = std::max(r, std::abs(a.data()[k] - b.data()[k]));
  return r;
}

}  // namespace

RealMatrix sqrt_dynamics_generator(const RealMatrix& s, const RealVector& p, bool regularize) {
  if (!s.square() || s.rows() != p.size()) throw DimensionError("generator and state dimensions differ");
  const RealVector q = clamp_floor(p, regularize, 0.0);
  const std::size_t n = q.size();
  RealMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = (i == j) ? 0.5 * s(i, i) : 0.5 * std::sqrt(q[j] / q[i]) * s(i, j);
  return h;
}

SqrtEvolution evolve_sqrt(const Generator4& s4, const RealVector& p0, double t0, double t, double dt, bool regularize,
                          double gap_limit) {
  if (p0.size() != 4) throw DimensionError("expected a 4-component state");
  RealVector a0(4);
  const RealVector q0 = clamp_floor(p0, regularize, t0);
  for (std::size_t k = 0; k < 4; ++k) a0[k] = std::sqrt(q0[k]);

  std::function<RealVector(double, const RealVector&)> rhs = [&](double tt, const RealVector& a) {
    RealVector p(4);
    for (std::size_t k = 0; k < 4; ++k) p[k] = a[k] * a[k];
    for (std::size_t k = 0; k < 4; ++k)
      if (a[k] * a[k] < kProbFloor && !regularize) throw FloorError("probability below floor", tt, static_cast<int>(k));
    return sqrt_dynamics_generator(s4.at(tt), p, regularize) * a;
  };
  const Trajectory<double> amp = rk4<double>(rhs, a0, t0, t, dt);

  SqrtEvolution out;
  out.p.times = amp.times;
  out.p.states.reserve(amp.size());
  for (const auto& a : amp.states) {
    RealVector p(4);
    for (std::size_t k = 0; k < 4; ++k) p[k] = a[k] * a[k];
    out.p.states.push_back(p);
  }

  const Trajectory<double> ref =
      s4.is_constant() ? ode_evolve<double>(s4.at(t0), p0, t0, t, dt) : ode_evolve<double>(s4.fn, p0, t0, t, dt);
  for (std::size_t n = 0; n < ref.size(); ++n)
    out.oracle_gap = std::max(out.oracle_gap, norm_inf(out.p.states[n] - ref.states[n]));
  if (out.oracle_gap > gap_limit) throw ConvergenceError("sqrt evolution diverged from master equation", out.oracle_gap);
  return out;
}

RealMatrix density_from_state(const RealVector& a) {
  const std::size_t n = a.size();
  RealMatrix rho(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rho(i, j) = a[i] * a[j];
  return rho;
}

EomResidual density_eom_residual(const Generator4& s4, const RealVector& p, double h) {
  if (!s4.is_constant()) throw ValidationError("density EOM check needs a constant generator");
  if (!(h > 0.0)) throw ValidationError("step must be positive");
  const RealMatrix s = s4.at(0.0);
  auto rho_at = [&](double tau) {
    RealVector q = mat_exp(s * tau) * p;
    q = clamp_floor(q, false, tau);
    for (auto& x : q) x = std::sqrt(x);
    return density_from_state(q);
  };
  const RealMatrix drho = (rho_at(h) - rho_at(-h)) * (0.5 / h);
  const RealMatrix hc = sqrt_dynamics_generator(s, p);
  const RealMatrix rho = rho_at(0.0);
  EomResidual r;
  r.transpose_form = max_abs_diff(drho, hc * rho + rho * hc.transpose());
  r.anticommutator = max_abs_diff(drho, hc * rho + rho * hc);
  return r;
}

ComplexMatrix reduced_density(const ComplexMatrix& rho, Party party, PartyOrdering ordering) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("reduced density needs a 4x4 matrix");
  const Complex tr = rho(0, 0) + rho(1, 1) + rho(2, 2) + rho(3, 3);
  if (std::abs(tr) <= 1e-300) throw ValidationError("density has zero trace");
  const bool first = (party == Party::A) == (ordering == PartyOrdering::Standard);
  ComplexMatrix r(2, 2);
  if (first) {
    r(0, 0) = rho(0, 0) + rho(1, 1);
    r(0, 1) = rho(0, 2) + rho(1, 3);
    r(1, 0) = rho(2, 0) + rho(3, 1);
    r(1, 1) = rho(2, 2) + rho(3, 3);
  } else {
    r(0, 0) = rho(0, 0) + rho(2, 2);
    r(0, 1) = rho(0, 1) + rho(2, 3);
    r(1, 0) = rho(1, 0) + rho(3, 2);
    r(1, 1) = rho(1, 1) + rho(3, 3);
  }
  return r * (1.0 / tr);
}

ComplexMatrix reduced_density(const RealMatrix& rho, Party party, PartyOrdering ordering) {
  return reduced_density(to_complex(rho), party, ordering);
}

double von_neumann_entropy(const ComplexMatrix& rho2) {
  if (rho2.rows() != 2 || rho2.cols() != 2) throw DimensionError("entropy needs a 2x2 density");
  const double a = rho2(0, 0).real(), d = rho2(1, 1).real();
  const Complex b = 0.5 * (rho2(0, 1) + std::conj(rho2(1, 0)));
  const double half = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  double s = 0.0;
  for (double lam : {half - rad, half + rad}) {
    if (lam < -1e-8) throw ValidationError("density has a significantly negative eigenvalue");
    if (lam > 0.0) s -= lam * std::log(lam);
  }
  return s;
}

}  // namespace epitb
