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

#include "epitb/coupled.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace epitb {
namespace {

bool rates_constant(std::initializer_list<const RateFn*> rates) {
  return std::all_of(rates.begin(), rates.end(), [](const RateFn* r) { return r->is_constant(); });
}

void check_state4(const RealVector& p) {
  if (p.size() != 4) throw DimensionError("expected a 4-component state");
}

double rayleigh(const RealMatrix& m, const RealVector& v) {
  const RealVector mv = m * v;
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    num += v[k] * mv[k];
    den += v[k] * v[k];
  }
  return num / den;
}

bool mixed_signs(const RealVector& v) {
  bool pos = false, neg = false;
  for (double x : v) {
    pos |= x > 0.0;
    neg |= x < 0.0;
  }
  return pos && neg;
}

}  // namespace

Generator4 Generator4::from_matrix(const RealMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw DimensionError("Generator4 needs a 4x4 matrix");
  Generator4 g;
  g.fn = [m](double) { return m; };
  g.constant = true;
  return g;
}

Generator4 build_traffic_generator(const Generator2& a, const Generator2& b, const CrossRates& c) {
  Generator4 g;
  g.form = Generator4::Form::Traffic;
  g.constant = a.is_constant() && b.is_constant() &&
               rates_constant({&c.s_1A2B, &c.s_2A2B, &c.s_2A1B, &c.s_1A1B});
  g.fn = [a, b, c](double t) {
    RealMatrix m(4, 4);
    m(0, 0) = a.s11(t);
    m(0, 1) = a.s12(t);
    m(1, 0) = a.s21(t);
    m(1, 1) = a.s22(t);
    m(2, 2) = b.s11(t);
    m(2, 3) = b.s12(t);
    m(3, 2) = b.s21(t);
    m(3, 3) = b.s22(t);
    m(0, 3) = c.s_1A2B(t);
    m(1, 2) = c.s_2A2B(t);
    m(2, 1) = c.s_2A1B(t);
    m(3, 0) = c.s_1A1B(t);
    return m;
  };
  return g;
}

Generator4 build_symmetric_generator(const Generator2& s, const RateFn& coupling) {
  Generator4 g = build_traffic_generator(s, s, CrossRates::uniform(coupling));
  g.form = Generator4::Form::Symmetric;
  g.base = s;
  g.coupling = coupling;
  return g;
}

CoupledSpectrum coupled_eigenvectors(const Generator4& s4, double t) {
  if (s4.form != Generator4::Form::Symmetric)
    throw ValidationError("closed-form coupled eigenvectors need the symmetric form");
  const double s11 = s4.base.s11(t), s12 = s4.base.s12(t), s21 = s4.base.s21(t), s22 = s4.base.s22(t);
  const double c = s4.coupling(t);
  const RealMatrix m = s4.at(t);
  const double d = s11 - s22;
  const double dm = 4.0 * (c - s12) * (c - s21) + d * d;
  const double dp = 4.0 * (c + s12) * (c + s21) + d * d;
  const double den_m = 2.0 * (c - s21);
  const double den_p = 2.0 * (c + s21);
  const double scale = std::max({std::abs(s11), std::abs(s12), std::abs(s21), std::abs(s22), std::abs(c), 1e-300});

  CoupledSpectrum out;
  if (std::abs(den_m) < 1e-10 * scale || std::abs(den_p) < 1e-10 * scale || dm < 0.0 || dp < 0.0) {
    const Spectrum sp = eig(m);
    for (std::size_t k = 0; k < 4; ++k) {
      if (std::abs(sp.values[k].imag()) > 1e-12 * scale) throw ComplexSpectrumError(std::min(dm, dp));
      RealVector v(4);
      for (std::size_t i = 0; i < 4; ++i) v[i] = sp.vectors[k][i].real();
      out.modes[k] = {sp.values[k].real(), v, mixed_signs(v)};
    }
    out.numeric = true;
    return out;
  }
  const double rm = std::sqrt(dm), rp = std::sqrt(dp);
  const double x1 = (-rm + d) / den_m, x2 = (rm + d) / den_m;
  const double y3 = (-rp + d) / den_p, y4 = (rp + d) / den_p;
  const std::array<RealVector, 4> vecs = {RealVector{x1, -1.0, -x1, 1.0}, RealVector{x2, -1.0, -x2, 1.0},
                                          RealVector{y3, 1.0, y3, 1.0}, RealVector{y4, 1.0, y4, 1.0}};
  for (std::size_t k = 0; k < 4; ++k) out.modes[k] = {rayleigh(m, vecs[k]), vecs[k], k < 2};
  return out;
}

Subsystem parse_subsystem(const std::string& label) {
  std::string l;
  for (char ch : label) l.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  if (l == "1A") return Subsystem::A1;
  if (l == "2A") return Subsystem::A2;
  if (l == "1B") return Subsystem::B1;
  if (l == "2B") return Subsystem::B2;
  throw ValidationError("unknown measurement target '" + label + "'");
}

std::string to_string(Subsystem s) {
  switch (s) {
    case Subsystem::A1: return "1A";
    case Subsystem::A2: return "2A";
    case Subsystem::B1: return "1B";
    case Subsystem::B2: return "2B";
  }
  return "?";
}

RealMatrix subsystem_projector(Subsystem target) {
  RealMatrix p = RealMatrix::identity(4);
  switch (target) {
    case Subsystem::A1: p(1, 1) = 0.0; break;
    case Subsystem::A2: p(0, 0) = 0.0; break;
    case Subsystem::B1: p(3, 3) = 0.0; break;
    case Subsystem::B2: p(2, 2) = 0.0; break;
  }
  return p;
}

RealVector measure_subsystem(const RealVector& p, Subsystem target) {
  check_state4(p);
  RealVector q = subsystem_projector(target) * p;
  switch (target) {
    case Subsystem::A1: q[0] = 1.0; break;
    case Subsystem::A2: q[1] = 1.0; break;
    case Subsystem::B1: q[2] = 1.0; break;
    case Subsystem::B2: q[3] = 1.0; break;
  }
  return q;
}

Generator4 kron_sum_generator(const Generator2& a, const Generator2& b) {
  Generator4 g;
  g.form = Generator4::Form::KronSum;
  g.constant = a.is_constant() && b.is_constant();
  g.fn = [a, b](double t) {
    const RealMatrix id = RealMatrix::identity(2);
    return kron(a.at(t), id) + kron(id, b.at(t));
  };
  return g;
}

double factorization_defect(const RealVector& q) {
  check_state4(q);
  return std::abs(q[0] * q[3] - q[1] * q[2]);
}

RealVector traffic_to_product(const RealVector& p) {
  check_state4(p);
  return {p[0] * p[2], p[0] * p[3], p[1] * p[2], p[1] * p[3]};
}

RealVector product_to_traffic(const RealVector& q) {
  check_state4(q);
  return {q[0] + q[1], q[2] + q[3], q[0] + q[2], q[1] + q[3]};
}

RealMatrix interaction_eigenbasis_matrix(const InteractionSpec& spec, double t) {
  RealMatrix m(4, 4);
  for (std::size_t k = 0; k < 4; ++k) m(k, k) = spec.energy[k](t);
  for (std::size_t src = 0; src < 4; ++src)
    for (std::size_t tgt = 0; tgt < 4; ++tgt)
      if (src != tgt) m(tgt, src) = spec.coupling[src][tgt](t);
  return m;
}

Generator4 interaction_generator(const InteractionSpec& spec) {
  for (const RealMatrix* f : {&spec.frame_a, &spec.frame_b}) {
    if (f->rows() != 2 || f->cols() != 2) throw DimensionError("frames must be 2x2");
    const RealMatrix g = f->transpose() * *f;
    if (std::abs(g(0, 0) - 1.0) > 1e-10 || std::abs(g(1, 1) - 1.0) > 1e-10 || std::abs(g(0, 1)) > 1e-10)
      throw ValidationError("frames must be orthonormal");
  }
  const RealMatrix v = kron(spec.frame_a, spec.frame_b);
  const RealMatrix vt = v.transpose();
  bool constant = true;
  for (const auto& e : spec.energy) constant = constant && e.is_constant();
  for (const auto& row : spec.coupling)
    for (const auto& e : row) constant = constant && e.is_constant();
  Generator4 g;
  g.form = Generator4::Form::Interaction;
  g.constant = constant;
  g.fn = [spec, v, vt](double t) { return v * interaction_eigenbasis_matrix(spec, t) * vt; };
  return g;
}

}  // namespace epitb
