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

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "epitb/matrix.hpp"

namespace epitb {

template <class T>
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<T>> states;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
};

RealMatrix mat_exp(const RealMatrix& m);
ComplexMatrix mat_exp(const ComplexMatrix& m);

/// sinh(√D/2)/√D and cosh(√D/2), continued analytically to D < 0.
struct HalfSinhCosh {
  double sinhc = 0.5;
  double cosh = 1.0;
};
HalfSinhCosh half_sinh_cosh(double disc);

/// Closed-form exponential of [[a, b], [c, d]] valid for either sign of the discriminant.
RealMatrix exp2_closed_form(double a, double b, double c, double d);

/// Eigenpairs sorted by real part, then imaginary part; unit-norm vectors with
/// the first nonzero component positive real.
struct Spectrum {
  ComplexVector values;
  std::vector<ComplexVector> vectors;
  double max_residual = 0.0;
};

Spectrum eig(const RealMatrix& m);
Spectrum eig(const ComplexMatrix& m);

namespace detail {

inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

template <class T>
bool all_finite(const std::vector<T>& v) {
  for (const auto& x : v)
    if (!finite(x)) return false;
  return true;
}

template <class T>
void axpy(std::vector<T>& y, double a, const std::vector<T>& x) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}

}  // namespace detail

/// Number of fixed steps covering [t0, t1]; the last one may be shortened.
inline std::size_t step_count(double t0, double t1, double dt) {
  if (!(dt > 0.0)) throw ValidationError("step must be positive");
  if (t1 < t0) throw ValidationError("t1 must not precede t0");
  const double n = (t1 - t0) / dt;
  return static_cast<std::size_t>(std::ceil(n - 1e-9));
}

/// Classical RK4 for dy/dt = f(t, y) on a fixed grid.
template <class T>
Trajectory<T> rk4(const std::function<std::vector<T>(double, const std::vector<T>&)>& f,
                  std::vector<T> y0, double t0, double t1, double dt, bool dense = true) {
  const std::size_t n = step_count(t0, t1, dt);
  Trajectory<T> traj;
  if (dense) {
    traj.times.reserve(n + 1);
    traj.states.reserve(n + 1);
  }
  if (!detail::all_finite(y0)) throw NonFiniteError("non-finite initial state", t0);
  traj.times.push_back(t0);
  traj.states.push_back(y0);
  std::vector<T> y = std::move(y0);
  std::vector<T> tmp(y.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    const double tn = (k + 1 == n) ? t1 : t0 + static_cast<double>(k + 1) * dt;
    const double h = tn - t;
    const auto k1 = f(t, y);
    tmp = y;
    detail::axpy(tmp, 0.5 * h, k1);
    const auto k2 = f(t + 0.5 * h, tmp);
    tmp = y;
    detail::axpy(tmp, 0.5 * h, k2);
    const auto k3 = f(t + 0.5 * h, tmp);
    tmp = y;
    detail::axpy(tmp, h, k3);
    const auto k4 = f(tn, tmp);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!detail::all_finite(y)) throw NonFiniteError("non-finite state", tn);
    if (dense || k + 1 == n) {
      traj.times.push_back(tn);
      traj.states.push_back(y);
    }
  }
  return traj;
}

/// RK4 trajectory of the linear system dy/dt = G(t)·y.
template <class T>
Trajectory<T> ode_evolve(const std::function<Matrix<T>(double)>& generator, std::vector<T> y0,
                         double t0, double t1, double dt, bool dense = true) {
  std::function<std::vector<T>(double, const std::vector<T>&)> f =
      [&generator](double t, const std::vector<T>& y) { return generator(t) * y; };
  return rk4<T>(f, std::move(y0), t0, t1, dt, dense);
}

/// Constant-generator overload; the matrix is captured once.
template <class T>
Trajectory<T> ode_evolve(const Matrix<T>& g, std::vector<T> y0, double t0, double t1, double dt,
                         bool dense = true) {
  std::function<std::vector<T>(double, const std::vector<T>&)> f =
      [&g](double, const std::vector<T>& y) { return g * y; };
  return rk4<T>(f, std::move(y0), t0, t1, dt, dense);
}

/// Central difference (f(t+h) - f(t-h)) / 2h.
RealVector numeric_derivative(const std::function<RealVector(double)>& f, double t, double h);

}  // namespace epitb
