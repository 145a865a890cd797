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
#include <utility>
#include <vector>

#include "epitb/matrix.hpp"
#include "epitb/quantum.hpp"

namespace epitb {

inline constexpr double kSplitFloor = 1e-12;

/// (p₁cos²Θ₁, p₁sin²Θ₁, p₂cos²Θ₂, ...).
RealVector split_state(const RealVector& p, const RealVector& theta);

/// Split state of an amplitude vector: (Re γ)², (Im γ)² interleaved.
RealVector split_state(const ComplexVector& psi);

/// Recovers pₖ and tan²Θₖ. Only |Θ| mod π survives the encoding.
/// tan² is +infinity when the Re slot is below the floor.
struct RecoveredPhases {
  RealVector p;
  RealVector tan2;
};
RecoveredPhases phase_from_split(const RealVector& x);

/// Real generator A with dx/dt = A·x on x = (Re γ₁, Im γ₁, Re γ₂, ...)
/// equivalent to dψ/dt = −i·H·ψ. N must be 2 or 4.
RealMatrix real_form_generator(const ComplexMatrix& h);
RealVector to_real_form(const ComplexVector& psi);
ComplexVector from_real_form(const RealVector& x);

/// S with d/dt split_state(ψ) = S·split_state(ψ) at the current ψ,
/// S_ij = 2·y_i·A_ij / y_j on the signed real form y. Throws FloorError when
/// a split component is below the floor.
RealMatrix build_s8(const ComplexMatrix& h, const ComplexVector& psi, double time = 0.0);
RealMatrix build_s8(const TBParams& params, const ComplexVector& psi, double time = 0.0);

struct VectorPotential {
  double a1A = 0.0, a2A = 0.0, a1B = 0.0, a2B = 0.0;
  double delta_l = 1.0;
  double e_over_hbar = 1.0;
};

std::array<double, 4> apply_aharonov_bohm(const std::array<double, 4>& theta, const VectorPotential& v);

/// Multiplies each amplitude by the phase factor of its shift.
ComplexVector apply_aharonov_bohm(const ComplexVector& psi, const VectorPotential& v);

struct EquivalenceReport {
  double max_residual = 0.0;          // ||dx/dt − S·x||∞ over non-excluded samples
  std::size_t samples_checked = 0;
  std::vector<std::pair<double, double>> excluded;
  double split_error = 0.0;           // max |pₖ − (x_{2k−1} + x_{2k})|
  double tan2_error = 0.0;            // relative, against tan²Θ from polar_split
  double theta_rate_error = 0.0;      // central-difference Θ̇ against Im(γ̇/γ)
  double real_form_error = 0.0;       // ψ rebuilt from the real-form flow
  double norm_initial = 0.0;
  double norm_final = 0.0;
  double norm_drift = 0.0;            // max |Σp(t) − Σp(t0)|
  bool norm_nonincreasing = true;
  bool hermitian = true;
};

EquivalenceReport verify_equivalence(const ComplexMatrix& h, const ComplexVector& psi0, double t0, double t1,
                                     double dt);
EquivalenceReport verify_equivalence(const TBParams& params, const ComplexVector& psi0, double t0, double t1,
                                     double dt);

}  // namespace epitb
