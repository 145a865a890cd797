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

#include "epitb/quantum.hpp"

#include <cmath>
#include <numbers>

#include "epitb/density.hpp"

namespace epitb {

void TBParams::validate() const {
  if (!hermitian) return;
  const double tol = 1e-15;
  for (const Complex& e : {ep1A, ep2A, ep1B, ep2B})
    if (std::abs(e.imag()) > tol) throw ValidationError("Hermitian mode needs real on-site energies");
  if (std::abs(tA_21 - std::conj(tA_12)) > tol || std::abs(tB_21 - std::conj(tB_12)) > tol)
    throw ValidationError("Hermitian mode needs t(2→1) = conj(t(1→2))");
}

double coulomb_energy(double charge, double distance, double k) {
  if (!(distance > 0.0)) throw ValidationError("distance must be positive");
  return k * charge * charge / distance;
}

ComplexMatrix build_hamiltonian(const TBParams& p) {
  p.validate();
  ComplexMatrix h(4, 4);
  h(0, 0) = p.ep1A + p.ep1B + p.ec11;
  h(1, 1) = p.ep1A + p.ep2B + p.ec12;
  h(2, 2) = p.ep2A + p.ep1B + p.ec21;
  h(3, 3) = p.ep2A + p.ep2B + p.ec22;
  h(0, 1) = p.tB_21;
  h(1, 0) = p.tB_12;
  h(2, 3) = p.tB_21;
  h(3, 2) = p.tB_12;
  h(0, 2) = p.tA_21;
  h(2, 0) = p.tA_12;
  h(1, 3) = p.tA_21;
  h(3, 1) = p.tA_12;
  return h;
}

Trajectory<Complex> evolve_schrodinger(const std::function<ComplexMatrix(double)>& h, const ComplexVector& psi0,
                                       double t0, double t, double dt, double hbar) {
  if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
  const Complex f = Complex(0.0, -1.0 / hbar);
  std::function<ComplexMatrix(double)> g = [&](double tt) { return h(tt) * f; };
  return ode_evolve<Complex>(g, psi0, t0, t, dt);
}

Trajectory<Complex> evolve_schrodinger(const ComplexMatrix& h, const ComplexVector& psi0, double t0, double t,
                                       double dt, double hbar) {
  if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
  return ode_evolve<Complex>(h * Complex(0.0, -1.0 / hbar), psi0, t0, t, dt);
}

PolarTrajectory polar_split(const Trajectory<Complex>& psi) {
  PolarTrajectory out;
  out.times = psi.times;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const ComplexVector& g = psi.states[n];
    RealVector p(g.size()), th(g.size());
    std::array<bool, 4> held{};
    for (std::size_t k = 0; k < g.size(); ++k) {
      p[k] = std::norm(g[k]);
      const bool have_prev = n > 0;
      const double prev = have_prev ? out.theta.back()[k] : 0.0;
      if (p[k] < kPhaseFloor) {
        th[k] = prev;
        if (k < 4) held[k] = true;
        continue;
      }
      double raw = std::arg(g[k]);
      if (have_prev) raw += two_pi * std::round((prev - raw) / two_pi);
      th[k] = raw;
    }
    out.p.push_back(std::move(p));
    out.theta.push_back(std::move(th));
    out.held.push_back(held);
  }
  return out;
}

EntropyPair pure_entropy_pair(const ComplexVector& psi) {
  if (psi.size() != 4) throw DimensionError("expected a 4-component state");
  if (!(norm2(psi) > 0.0)) throw ValidationError("state has zero norm");
  ComplexMatrix rho(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
  return {von_neumann_entropy(reduced_density(rho, Party::A)), von_neumann_entropy(reduced_density(rho, Party::B))};
}

double norm2(const ComplexVector& psi) {
  double s = 0.0;
  for (const auto& z : psi) s += std::norm(z);
  return s;
}

Complex expectation(const ComplexMatrix& h, const ComplexVector& psi) {
  const ComplexVector hp = h * psi;
  Complex s = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) s += std::conj(psi[k]) * hp[k];
  return s;
}

}  // namespace epitb
