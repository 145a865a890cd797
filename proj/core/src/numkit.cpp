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

#include "epitb/numkit.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace epitb {
namespace {

constexpr std::size_t kMaxExpDim = 16;
constexpr std::size_t kMaxEigDim = 16;

template <class T>
void check_exp_input(const Matrix<T>& m) {
  if (!m.square()) throw DimensionError("mat_exp requires a square matrix");
  if (m.rows() > kMaxExpDim) throw DimensionError("mat_exp supports dimension <= 16");
  if (!m.all_finite()) throw NonFiniteError("mat_exp input has non-finite entries", 0.0);
}

template <class T>
Matrix<T> exp_impl(const Matrix<T>& m) {
  check_exp_input(m);
  const std::size_t n = m.rows();
  const double norm = m.norm_inf();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const double scale = std::ldexp(1.0, -squarings);
  const Matrix<T> a = m * T{scale};

  Matrix<T> sum = Matrix<T>::identity(n);
  Matrix<T> term = Matrix<T>::identity(n);
  for (int k = 1; k < 64; ++k) {
    term = (term * a) * T{1.0 / k};
    sum += term;
    if (term.max_abs() < 1e-18 * std::max(1.0, sum.max_abs())) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double scale_of(const ComplexMatrix& m) { return std::max(m.norm_inf(), std::numeric_limits<double>::min()); }

void normalize_phase(ComplexVector& v) {
  double nrm = 0.0;
  for (const auto& x : v) nrm += std::norm(x);
  nrm = std::sqrt(nrm);
  if (nrm == 0.0) return;
  for (auto& x : v) x /= nrm;
  double biggest = 0.0;
  for (const auto& x : v) biggest = std::max(biggest, std::abs(x));
  for (const auto& x : v) {
    if (std::abs(x) > 1e-12 * biggest) {
      const Complex phase = std::conj(x) / std::abs(x);
      for (auto& y : v) y *= phase;
      break;
    }
  }
}

Spectrum eig2(const ComplexMatrix& m) {
  const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const Complex half_tr = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  Spectrum s;
  s.values = {half_tr - disc, half_tr + disc};
  for (int k = 0; k < 2; ++k) {
    const Complex lam = s.values[k];
    ComplexVector u = {b, lam - a};
    ComplexVector w = {lam - d, c};
    const double nu = std::abs(u[0]) + std::abs(u[1]);
    const double nw = std::abs(w[0]) + std::abs(w[1]);
    ComplexVector v;
    if (std::max(nu, nw) <= 1e-300)
      v = k == 0 ? ComplexVector{1.0, 0.0} : ComplexVector{0.0, 1.0};
    else
      v = nu >= nw ? u : w;
    s.vectors.push_back(v);
  }
  return s;
}

bool is_hermitian(const ComplexMatrix& m) {
  const double tol = 1e-14 * scale_of(m);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

Spectrum eig_jacobi(ComplexMatrix a) {
  const std::size_t n = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = scale_of(a);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= 1e-300) continue;
        const Complex ph = std::conj(a(p, q)) / g;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpp = c, jpq = s, jqp = -s * ph, jqq = c * ph;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * jpp + aiq * jqp;
          a(i, q) = aip * jpq + aiq * jqq;
          const Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * jpp + viq * jqp;
          v(i, q) = vip * jpq + viq * jqq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const Complex apj = a(p, j), aqj = a(q, j);
          a(p, j) = std::conj(jpp) * apj + std::conj(jqp) * aqj;
          a(q, j) = std::conj(jpq) * apj + std::conj(jqq) * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  Spectrum s;
  for (std::size_t k = 0; k < n; ++k) {
    s.values.push_back(a(k, k).real());
    ComplexVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, k);
    s.vectors.push_back(col);
  }
  return s;
}

// Householder reduction to Hessenberg form, then shifted QR to Schur form.
Spectrum eig_schur(ComplexMatrix h) {
  const std::size_t n = h.rows();
  ComplexMatrix z = ComplexMatrix::identity(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha2 += std::norm(h(i, k));
    const double alpha = std::sqrt(alpha2);
    if (alpha <= 1e-300) continue;
    ComplexVector u(n, 0.0);
    const Complex x0 = h(k + 1, k);
    const Complex ph = std::abs(x0) > 0 ? x0 / std::abs(x0) : Complex(1.0);
    for (std::size_t i = k + 1; i < n; ++i) u[i] = h(i, k);
    u[k + 1] += ph * alpha;
    double un2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) un2 += std::norm(u[i]);
    if (un2 <= 1e-300) continue;
    // h <- P h P with P = I - 2 u u^H / |u|^2.
    for (std::size_t j = 0; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(u[i]) * h(i, j);
      dot *= 2.0 / un2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= u[i] * dot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * u[j];
      dot *= 2.0 / un2;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(u[j]);
      Complex dz = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dz += z(i, j) * u[j];
      dz *= 2.0 / un2;
      for (std::size_t j = k + 1; j < n; ++j) z(i, j) -= dz * std::conj(u[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = scale_of(h);
  std::size_t hi = n - 1;
  int iter = 0;
  int since_deflation = 0;
  std::vector<Complex> gc(n), gs(n);
  while (hi > 0) {
    std::size_t l = hi;
    while (l > 0) {
      const double sub = std::abs(h(l, l - 1));
      const double diag = std::abs(h(l, l)) + std::abs(h(l - 1, l - 1));
      if (sub <= eps * (diag > 0 ? diag : scale)) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == hi) {
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++iter > 200 * static_cast<int>(n)) throw ConvergenceError("QR iteration did not converge", std::abs(h(hi, hi - 1)));
    ++since_deflation;

    Complex mu;
    if (since_deflation % 11 == 10) {
      mu = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.25 * std::abs(h(hi, hi - 1)));
    } else {
      const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
      const Complex half = 0.5 * (a - d);
      const Complex root = std::sqrt(half * half + b * c);
      const Complex m1 = 0.5 * (a + d) + root, m2 = 0.5 * (a + d) - root;
      mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }

    for (std::size_t k = l; k <= hi; ++k) h(k, k) -= mu;
    for (std::size_t k = l; k < hi; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      Complex c = 1.0, s = 0.0;
      if (r > 0) {
        c = x / r;
        s = y / r;
      }
      gc[k] = c;
      gs[k] = s;
      for (std::size_t j = k; j < n; ++j) {
        const Complex hk = h(k, j), hk1 = h(k + 1, j);
        h(k, j) = std::conj(c) * hk + std::conj(s) * hk1;
        h(k + 1, j) = -s * hk + c * hk1;
      }
    }
    for (std::size_t k = l; k < hi; ++k) {
      const Complex c = gc[k], s = gs[k];
      const std::size_t top = std::min(k + 2, hi);
      for (std::size_t i = 0; i <= top; ++i) {
        const Complex hk = h(i, k), hk1 = h(i, k + 1);
        h(i, k) = hk * c + hk1 * s;
        h(i, k + 1) = -hk * std::conj(s) + hk1 * std::conj(c);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Complex zk = z(i, k), zk1 = z(i, k + 1);
        z(i, k) = zk * c + zk1 * s;
        z(i, k + 1) = -zk * std::conj(s) + zk1 * std::conj(c);
      }
    }
    for (std::size_t k = l; k <= hi; ++k) h(k, k) += mu;
  }

  Spectrum s;
  const double tiny = eps * scale;
  for (std::size_t k = 0; k < n; ++k) {
    s.values.push_back(h(k, k));
    ComplexVector y(n, 0.0);
    y[k] = 1.0;
    for (std::size_t ii = k; ii-- > 0;) {
      Complex acc = 0.0;
      for (std::size_t j = ii + 1; j <= k; ++j) acc += h(ii, j) * y[j];
      Complex den = h(ii, ii) - h(k, k);
      if (std::abs(den) < tiny) den = tiny;
      y[ii] = -acc / den;
    }
    s.vectors.push_back(z * y);
  }
  return s;
}

Spectrum finalize(Spectrum s, const ComplexMatrix& m, bool real_input) {
  const double scale = scale_of(m);
  const std::size_t n = s.values.size();
  if (real_input)
    for (auto& v : s.values)
      if (std::abs(v.imag()) <= 1e-13 * std::max(1.0, scale)) v.imag(0.0);
  for (auto& v : s.vectors) normalize_phase(v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const double tie = 1e-12 * std::max(1.0, scale);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const Complex a = s.values[i], b = s.values[j];
    if (std::abs(a.real() - b.real()) > tie) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  Spectrum out;
  for (auto k : order) {
    out.values.push_back(s.values[k]);
    out.vectors.push_back(s.vectors[k]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexVector mv = m * out.vectors[k];
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(mv[i] - out.values[k] * out.vectors[k][i]));
    out.max_residual = std::max(out.max_residual, r);
  }
  if (out.max_residual > 1e-8 * std::max(1.0, scale))
    throw ConvergenceError("eigenpair residual too large", out.max_residual);
  return out;
}

Spectrum eig_impl(const ComplexMatrix& m, bool real_input) {
  if (!m.square()) throw DimensionError("eig requires a square matrix");
  if (m.rows() == 0) return {};
  if (m.rows() > kMaxEigDim) throw DimensionError("eig supports dimension <= 16");
  if (!m.all_finite()) throw NonFiniteError("eig input has non-finite entries", 0.0);
  Spectrum s;
  if (m.rows() == 1)
    s = Spectrum{{m(0, 0)}, {{Complex(1.0)}}, 0.0};
  else if (m.rows() == 2)
    s = eig2(m);
  else if (is_hermitian(m))
    s = eig_jacobi(m);
  else
    s = eig_schur(m);
  return finalize(std::move(s), m, real_input);
}

}  // namespace

RealMatrix mat_exp(const RealMatrix& m) { return exp_impl(m); }
ComplexMatrix mat_exp(const ComplexMatrix& m) { return exp_impl(m); }

HalfSinhCosh half_sinh_cosh(double disc) {
  HalfSinhCosh out;
  if (std::abs(disc) < 1e-12) {
    out.sinhc = 0.5 + disc / 48.0 + disc * disc / 3840.0 + disc * disc * disc / 645120.0;
    out.cosh = 1.0 + disc / 8.0 + disc * disc / 384.0 + disc * disc * disc / 46080.0;
  } else if (disc > 0) {
    const double r = std::sqrt(disc);
    out.sinhc = std::sinh(0.5 * r) / r;
    out.cosh = std::cosh(0.5 * r);
  } else {
    const double r = std::sqrt(-disc);
    out.sinhc = std::sin(0.5 * r) / r;
    out.cosh = std::cos(0.5 * r);
  }
  return out;
}

RealMatrix exp2_closed_form(double a, double b, double c, double d) {
  const auto [sh, ch] = half_sinh_cosh((a - d) * (a - d) + 4.0 * b * c);
  const double g = std::exp(0.5 * (a + d));
  RealMatrix u(2, 2);
  u(0, 0) = g * (ch + (a - d) * sh);
  u(0, 1) = g * 2.0 * b * sh;
  u(1, 0) = g * 2.0 * c * sh;
  u(1, 1) = g * (ch - (a - d) * sh);
  return u;
}

Spectrum eig(const RealMatrix& m) { return eig_impl(to_complex(m), true); }
Spectrum eig(const ComplexMatrix& m) { return eig_impl(m, false); }

RealVector numeric_derivative(const std::function<RealVector(double)>& f, double t, double h) {
  if (!(h > 0.0)) throw ValidationError("derivative step must be positive");
  const RealVector fp = f(t + h);
  const RealVector fm = f(t - h);
  if (fp.size() != fm.size()) throw DimensionError("derivative stencil size mismatch");
  RealVector d(fp.size());
  for (std::size_t k = 0; k < fp.size(); ++k) {
    d[k] = (fp[k] - fm[k]) / (2.0 * h);
    if (!std::isfinite(d[k])) throw NonFiniteError("non-finite derivative", t);
  }
  return d;
}

}  // namespace epitb
