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

#include "epitb/epidemic.hpp"

#include <algorithm>
#include <cmath>

namespace epitb {
namespace {

double dot2(const RealVector& a, const RealVector& b) { return a[0] * b[0] + a[1] * b[1]; }

SpectralFrame2 numeric_frame(double s11, double s12, double s21, double s22, double disc) {
  const Spectrum sp = eig(RealMatrix{{s11, s12}, {s21, s22}});
  SpectralFrame2 f;
  f.numeric = true;
  f.discriminant = disc;
  f.E1 = sp.values[0].real();
  f.E2 = sp.values[1].real();
  auto to_real = [](const ComplexVector& v) {
    RealVector r = {v[0].real(), v[1].real()};
    const double sum = r[0] + r[1];
    if (std::abs(sum) > 1e-12) {
      r[0] /= sum;
      r[1] /= sum;
    }
    return r;
  };
  f.v1 = to_real(sp.vectors[0]);
  f.v2 = to_real(sp.vectors[1]);
  f.n1 = dot2(f.v1, f.v1);
  f.n2 = dot2(f.v2, f.v2);
  return f;
}

}  // namespace

SpectralFrame2 spectral_frame(double s11, double s12, double s21, double s22) {
  if (!std::isfinite(s11) || !std::isfinite(s12) || !std::isfinite(s21) || !std::isfinite(s22))
    throw NonFiniteError("non-finite generator entry", 0.0);
  const double d = s11 - s22;
  double disc = d * d + 4.0 * s12 * s21;
  const double scale = std::max({std::abs(s11), std::abs(s12), std::abs(s21), std::abs(s22), 1e-300});
  if (disc < 0.0) {
    if (disc < -1e-14 * scale * scale) throw ComplexSpectrumError(disc);
    disc = 0.0;
  }
  const double r = std::sqrt(disc);
  const double a1 = -r + d;
  const double a2 = r + d;
  const double den1 = 2.0 * s21 + a1;
  const double den2 = 2.0 * s21 + a2;
  const double den_floor = 1e-12 * scale;
  if (std::abs(s21) < kS21Floor || std::abs(den1) < den_floor || std::abs(den2) < den_floor)
    return numeric_frame(s11, s12, s21, s22, disc);

  SpectralFrame2 f;
  f.discriminant = disc;
  f.E1 = 0.5 * (s11 + s22 - r);
  f.E2 = 0.5 * (s11 + s22 + r);
  f.v1 = {a1 / den1, 2.0 * s21 / den1};
  f.v2 = {a2 / den2, 2.0 * s21 / den2};
  f.n1 = dot2(f.v1, f.v1);
  f.n2 = dot2(f.v2, f.v2);
  return f;
}

SpectralFrame2 spectral_frame(const Generator2& s, double t) { return spectral_frame(s.s11(t), s.s12(t), s.s21(t), s.s22(t)); }

double frame_residual(const RealMatrix& s, const SpectralFrame2& f) {
  double worst = 0.0;
  for (int k = 0; k < 2; ++k) {
    const RealVector& v = k == 0 ? f.v1 : f.v2;
    const double e = k == 0 ? f.E1 : f.E2;
    const double nrm = std::sqrt(dot2(v, v));
    const RealVector u = {v[0] / nrm, v[1] / nrm};
    const RealVector su = s * u;
    worst = std::max({worst, std::abs(su[0] - e * u[0]), std::abs(su[1] - e * u[1])});
  }
  return worst;
}

EnsembleWeights ensemble_decompose(const ProbState2& p, const SpectralFrame2& f) {
  if (f.n1 <= 1e-300 || f.n2 <= 1e-300) throw DegenerateFrameError("eigenvector with vanishing norm");
  const RealVector pv = {p.p1, p.p2};
  return {dot2(f.v1, pv) / f.n1, dot2(f.v2, pv) / f.n2};
}

EnsembleWeights ensemble_decompose(const ProbState2& p, const Generator2& s, double t) {
  return ensemble_decompose(p, spectral_frame(s, t));
}

ProbState2 ensemble_reconstruct(const EnsembleWeights& w, const SpectralFrame2& f) {
  return {w.pI * f.v1[0] + w.pII * f.v2[0], w.pI * f.v1[1] + w.pII * f.v2[1]};
}

EnsembleWeights ensemble_coordinates(const ProbState2& p, const SpectralFrame2& f) {
  const double det = f.v1[0] * f.v2[1] - f.v2[0] * f.v1[1];
  if (std::abs(det) < 1e-14 * std::sqrt(f.n1 * f.n2)) throw DegenerateFrameError("eigenvectors are parallel");
  return {(p.p1 * f.v2[1] - f.v2[0] * p.p2) / det, (f.v1[0] * p.p2 - p.p1 * f.v1[1]) / det};
}

IntegratedGenerator2 integrate_generator(const Generator2& s, double t0, double t) {
  if (t < t0) throw ValidationError("integration window must satisfy t >= t0");
  IntegratedGenerator2 g{s.s11.integral(t0, t), s.s12.integral(t0, t), s.s21.integral(t0, t), s.s22.integral(t0, t)};
  if (!std::isfinite(g.S11) || !std::isfinite(g.S12) || !std::isfinite(g.S21) || !std::isfinite(g.S22))
    throw NonFiniteError("non-finite integrated generator", t);
  return g;
}

RealMatrix closed_form_propagator(const IntegratedGenerator2& g) { return exp2_closed_form(g.S11, g.S12, g.S21, g.S22); }

ProbState2 propagate_closed_form(const Generator2& s, const ProbState2& p0, double t0, double t) {
  const RealMatrix u = closed_form_propagator(integrate_generator(s, t0, t));
  const ProbState2 p{u(0, 0) * p0.p1 + u(0, 1) * p0.p2, u(1, 0) * p0.p1 + u(1, 1) * p0.p2};
  if (!std::isfinite(p.p1) || !std::isfinite(p.p2)) throw NonFiniteError("non-finite propagated state", t);
  return p;
}

ProbState2 propagate_rk(const Generator2& s, const ProbState2& p0, double t0, double t, double dt) {
  RealVector y;
  if (s.is_constant()) {
    y = ode_evolve<double>(s.at(t0), RealVector{p0.p1, p0.p2}, t0, t, dt, false).states.back();
  } else {
    std::function<RealMatrix(double)> g = [&s](double tt) { return s.at(tt); };
    y = ode_evolve<double>(g, RealVector{p0.p1, p0.p2}, t0, t, dt, false).states.back();
  }
  return {y[0], y[1]};
}

double propagation_gap(const Generator2& s, const ProbState2& p0, double t0, double t, double dt) {
  const ProbState2 a = propagate_closed_form(s, p0, t0, t);
  const ProbState2 b = propagate_rk(s, p0, t0, t, dt);
  return std::max(std::abs(a.p1 - b.p1), std::abs(a.p2 - b.p2));
}

bool on_simplex(const ProbState2& p, double tol) {
  return p.p1 >= -tol && p.p2 >= -tol && p.p1 <= 1.0 + tol && p.p2 <= 1.0 + tol && p.p1 + p.p2 <= 1.0 + tol;
}

double occupancy_ratio(const Generator2& s, const ProbState2& p0, double t0, double t) {
  const IntegratedGenerator2 g = integrate_generator(s, t0, t);
  const double d = g.S11 - g.S22;
  const auto [sh, ch] = half_sinh_cosh(d * d + 4.0 * g.S12 * g.S21);
  double num = 0.0;
  double den = 0.0;
  if (std::abs(ch) > 1e-8) {
    const double tr = sh / ch;  // tanh(√D/2)/√D
    num = p0.p1 + tr * (d * p0.p1 + 2.0 * g.S12 * p0.p2);
    den = p0.p2 + tr * (2.0 * g.S21 * p0.p1 - d * p0.p2);
  } else {
    num = ch * p0.p1 + sh * (d * p0.p1 + 2.0 * g.S12 * p0.p2);
    den = ch * p0.p2 + sh * (2.0 * g.S21 * p0.p1 - d * p0.p2);
  }
  if (std::abs(den) <= 1e-15 * (std::abs(num) + std::abs(p0.p1) + std::abs(p0.p2)) || den == 0.0)
    throw DegenerateFrameError("occupancy ratio denominator vanishes");
  return num / den;
}

ProbState2 measure_projective(const ProbState2& p, int outcome) {
  if (!(p.p1 + p.p2 > 0.0)) throw ValidationError("measurement needs p1 + p2 > 0");
  if (outcome == 1) return {1.0, 0.0};
  if (outcome == 2) return {0.0, 1.0};
  throw ValidationError("outcome must be 1 or 2");
}

int sample_outcome(const ProbState2& p, std::mt19937_64& rng) {
  const double total = p.p1 + p.p2;
  if (!(total > 0.0) || p.p1 < 0.0 || p.p2 < 0.0) throw ValidationError("sampling needs nonnegative p with p1 + p2 > 0");
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < p.p1 / total ? 1 : 2;
}

ProbState2 measure_weak(const ProbState2& p, double n_total, double n_tested, const ProbState2& p_test) {
  if (!(n_total > 0.0)) throw ValidationError("population must be positive");
  if (n_tested < 0.0 || n_tested > n_total) throw ValidationError("tested count must lie in [0, N]");
  return {((n_total - n_tested) * p.p1 + n_tested * p_test.p1) / n_total,
          ((n_total - n_tested) * p.p2 + n_tested * p_test.p2) / n_total};
}

EnsembleWeights eigenmode_evolve_const(const Generator2& s, const EnsembleWeights& w0, double t0, double t,
                                       RateConvention conv) {
  if (!s.is_constant()) throw ValidationError("eigenmode evolution needs a constant generator");
  const SpectralFrame2 f = spectral_frame(s, t0);
  if (f.n1 <= 1e-300 || f.n2 <= 1e-300) throw DegenerateFrameError("eigenvector with vanishing norm");
  const double r1 = conv == RateConvention::NormScaled ? f.E1 / f.n1 : f.E1;
  const double r2 = conv == RateConvention::NormScaled ? f.E2 / f.n2 : f.E2;
  return {std::exp(r1 * (t - t0)) * w0.pI, std::exp(r2 * (t - t0)) * w0.pII};
}

Connections frame_connections(const Generator2& s, double t, double h) {
  const SpectralFrame2 f = spectral_frame(s, t);
  auto vecs = [&s](double tt) {
    const SpectralFrame2 g = spectral_frame(s, tt);
    return RealVector{g.v1[0], g.v1[1], g.v2[0], g.v2[1]};
  };
  const RealVector dv = numeric_derivative(vecs, t, h);
  const RealVector d1 = {dv[0], dv[1]};
  const RealVector d2 = {dv[2], dv[3]};
  return {dot2(f.v1, d1), dot2(f.v1, d2), dot2(f.v2, d1), dot2(f.v2, d2)};
}

double constant_occupancy_residual(const Generator2& s, double t, double h) {
  const SpectralFrame2 f = spectral_frame(s, t);
  const Connections c = frame_connections(s, t, h);
  return std::abs(c.c12 * c.c21 - (f.E1 - c.c11) * (f.E2 - c.c22));
}

RealMatrix frame_matrix(const Generator2& s, const RateFn& e12, const RateFn& e21, double t, double h) {
  const SpectralFrame2 f = spectral_frame(s, t);
  Connections c;
  if (!s.is_constant()) c = frame_connections(s, t, h);
  return RealMatrix{{f.E1 - c.c11, e21(t) - c.c12}, {e12(t) - c.c21, f.E2 - c.c22}};
}

EnsembleWeights frame_evolve(const Generator2& s, const RateFn& e12, const RateFn& e21, const EnsembleWeights& w0,
                             double t0, double t, double dt, double h) {
  const std::size_t n = step_count(t0, t, dt);
  if (n == 0) return w0;
  RealMatrix g(2, 2);
  RealMatrix prev = frame_matrix(s, e12, e21, t0, h);
  double ta = t0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double tb = k == n ? t : t0 + static_cast<double>(k) * dt;
    const RealMatrix cur = frame_matrix(s, e12, e21, tb, h);
    g += (prev + cur) * (0.5 * (tb - ta));
    prev = cur;
    ta = tb;
  }
  if (!g.all_finite()) throw NonFiniteError("non-finite frame quadrature", t);
  const RealMatrix u = exp2_closed_form(g(0, 0), g(0, 1), g(1, 0), g(1, 1));
  return {u(0, 0) * w0.pI + u(0, 1) * w0.pII, u(1, 0) * w0.pI + u(1, 1) * w0.pII};
}

EnsembleWeights frame_evolve_rk(const Generator2& s, const RateFn& e12, const RateFn& e21,
                                const EnsembleWeights& w0, double t0, double t, double dt, double h) {
  std::function<RealMatrix(double)> m = [&](double tt) { return frame_matrix(s, e12, e21, tt, h); };
  const RealVector y = ode_evolve<double>(m, RealVector{w0.pI, w0.pII}, t0, t, dt, false).states.back();
  return {y[0], y[1]};
}

RealVector propagate_n(const std::function<RealMatrix(double)>& s, const RealVector& p0, double t0, double t,
                       double dt) {
  const RealMatrix s0 = s(t0);
  if (!s0.square() || s0.rows() != p0.size()) throw DimensionError("generator and state dimensions differ");
  if (p0.size() > 16) throw DimensionError("propagate_n supports N <= 16");
  return ode_evolve<double>(s, p0, t0, t, dt, false).states.back();
}

}  // namespace epitb
