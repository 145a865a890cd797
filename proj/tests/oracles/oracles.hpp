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

// Independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "epitb/matrix.hpp"

namespace oracle {

using epitb::Complex;
using epitb::ComplexMatrix;
using epitb::Matrix;
using epitb::RealMatrix;

/// Uniform draw on [lo, hi) from a 64-bit engine.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Plain power series without scaling; fine for norms up to a few units.
template <class T>
Matrix<T> series_exp(const Matrix<T>& m, int terms = 30) {
  const std::size_t n = m.rows();
  Matrix<T> sum(n, n), term(n, n);
  for (std::size_t i = 0; i < n; ++i) sum(i, i) = term(i, i) = T{1};
  for (int k = 1; k < terms; ++k) {
    Matrix<T> next(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        T acc{};
        for (std::size_t l = 0; l < n; ++l) acc += term(i, l) * m(l, j);
        next(i, j) = acc / static_cast<double>(k);
      }
    term = next;
    for (std::size_t q = 0; q < n * n; ++q) sum.data()[q] += term.data()[q];
  }
  return sum;
}

/// Characteristic polynomial coefficients c[0..n] of det(λI − M), c[n] = 1,
/// by the Faddeev–LeVerrier recursion.
inline std::vector<Complex> char_poly(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<Complex> c(n + 1);
  c[n] = 1.0;
  ComplexMatrix mk(n, n);
  ComplexMatrix id = ComplexMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    ComplexMatrix inner = mk;
    for (std::size_t i = 0; i < n; ++i) inner(i, i) += c[n - k + 1];
    mk = m * inner;
    Complex tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += mk(i, i);
    c[n - k] = -tr / static_cast<double>(k);
  }
  return c;
}

/// All roots of a monic polynomial by Durand–Kerner iteration.
inline std::vector<Complex> poly_roots(const std::vector<Complex>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<Complex> z(n);
  const Complex seed(0.4, 0.9);
  double bound = 1.0;
  for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, 1.0 + std::abs(c[k]));
  for (std::size_t k = 0; k < n; ++k) z[k] = bound * std::pow(seed, static_cast<double>(k));
  auto eval = [&](Complex x) {
    Complex acc = c[n];
    for (std::size_t k = n; k-- > 0;) acc = acc * x + c[k];
    return acc;
  };
  for (int it = 0; it < 2000; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      const Complex step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15 * bound) break;
  }
  return z;
}

/// Fixed-step RK4 for a constant linear system, endpoint only.
template <class T>
std::vector<T> rk4_linear(const Matrix<T>& g, std::vector<T> y, double t, double dt) {
  const int steps = static_cast<int>(std::lround(t / dt));
  const double h = t / steps;
  const std::size_t n = y.size();
  auto f = [&](const std::vector<T>& x) {
    std::vector<T> r(n, T{});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i] += g(i, j) * x[j];
    return r;
  };
  for (int s = 0; s < steps; ++s) {
    auto k1 = f(y);
    std::vector<T> tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    auto k2 = f(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    auto k3 = f(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    auto k4 = f(tmp);
    for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return y;
}

/// Schmidt coefficients² of a two-qubit amplitude vector from the invariants
/// of its 2x2 reshape: s1 + s2 = ||C||², s1·s2 = |det C|².
inline std::pair<double, double> schmidt_weights(const std::vector<Complex>& psi) {
  double fro = 0.0;
  for (const auto& a : psi) fro += std::norm(a);
  const double det2 = std::norm(psi[0] * psi[3] - psi[1] * psi[2]) / (fro * fro);
  const double disc = std::sqrt(std::max(0.0, 0.25 - det2));
  return {0.5 + disc, 0.5 - disc};
}

inline double shannon(double a, double b) {
  double s = 0.0;
  if (a > 0) s -= a * std::log(a);
  if (b > 0) s -= b * std::log(b);
  return s;
}

}  // namespace oracle
