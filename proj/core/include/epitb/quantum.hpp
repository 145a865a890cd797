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

#include <array>
#include <functional>

#include "epitb/matrix.hpp"
#include "epitb/numkit.hpp"

namespace epitb {

/// Two electrostatically coupled two-site qubits in the basis
/// (1A1B, 1A2B, 2A1B, 2A2B). Energies are in units with ħ = 1 unless a scale
/// is passed to the evolution.
struct TBParams {
  Complex ep1A = 0.0, ep2A = 0.0, ep1B = 0.0, ep2B = 0.0;
  Complex tA_12 = 0.0, tA_21 = 0.0;  // t_s(1A→2A), t_s(2A→1A)
  Complex tB_12 = 0.0, tB_21 = 0.0;  // t_s(1B→2B), t_s(2B→1B)
  double ec11 = 0.0, ec12 = 0.0, ec21 = 0.0, ec22 = 0.0;
  bool hermitian = true;

  /// Throws ValidationError if the Hermitian flag is set but violated.
  void validate() const;

  /// Sets both hopping directions of a qubit to t and conj(t).
  static void set_hopping(Complex& forward, Complex& backward, Complex t) {
    forward = t;
    backward = std::conj(t);
  }
};

/// k·q²/d.
double coulomb_energy(double charge, double distance, double k = 1.0);

ComplexMatrix build_hamiltonian(const TBParams& params);

/// RK4 trajectory of dψ/dt = −(i/ħ)·H(t)·ψ.
Trajectory<Complex> evolve_schrodinger(const std::function<ComplexMatrix(double)>& h, const ComplexVector& psi0,
                                       double t0, double t, double dt, double hbar = 1.0);
Trajectory<Complex> evolve_schrodinger(const ComplexMatrix& h, const ComplexVector& psi0, double t0, double t,
                                       double dt, double hbar = 1.0);

inline constexpr double kPhaseFloor = 1e-14;

struct PolarTrajectory {
  std::vector<double> times;
  std::vector<RealVector> p;
  std::vector<RealVector> theta;             // unwrapped phases
  std::vector<std::array<bool, 4>> held;     // phase held because p < floor
};

PolarTrajectory polar_split(const Trajectory<Complex>& psi);

struct EntropyPair {
  double sa = 0.0;
  double sb = 0.0;
};

/// Entropies of the two reduced densities of ψψ†/||ψ||².
EntropyPair pure_entropy_pair(const ComplexVector& psi);

double norm2(const ComplexVector& psi);
Complex expectation(const ComplexMatrix& h, const ComplexVector& psi);

}  // namespace epitb
