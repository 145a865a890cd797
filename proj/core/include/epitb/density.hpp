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

#include "epitb/coupled.hpp"
#include "epitb/matrix.hpp"
#include "epitb/numkit.hpp"

namespace epitb {

inline constexpr double kProbFloor = 1e-12;

/// ½·D(p)⁻¹·S·D(p) with D = diag(√p): entry (i, j) = ½·√(pj/pi)·sij.
RealMatrix sqrt_dynamics_generator(const RealMatrix& s, const RealVector& p, bool regularize = false);

struct SqrtEvolution {
  Trajectory<double> p;     // squared amplitudes at every step
  double oracle_gap = 0.0;  // max |p − master-equation RK| over the samples
};

/// RK4 on d√p/dt = H(t, p)·√p. Throws FloorError if any p drops below the
/// floor, and ConvergenceError if the oracle gap exceeds gap_limit.
SqrtEvolution evolve_sqrt(const Generator4& s4, const RealVector& p0, double t0, double t, double dt,
                          bool regularize = false, double gap_limit = 1e-6);

/// ρ = a·aᵀ.
RealMatrix density_from_state(const RealVector& a);

struct EomResidual {
  double transpose_form = 0.0;   // ||Δρ/Δt − (Hρ + ρHᵀ)||∞
  double anticommutator = 0.0;   // ||Δρ/Δt − (Hρ + ρH)||∞
};

/// Central-difference check of the density equation of motion at p, using the
/// exact flow of a constant generator for ρ(±h).
EomResidual density_eom_residual(const Generator4& s4, const RealVector& p, double h);

enum class Party { A, B };
/// Standard: A takes the index sets {1,2},{3,4}; Swapped exchanges the roles.
enum class PartyOrdering { Standard, Swapped };

ComplexMatrix reduced_density(const ComplexMatrix& rho, Party party, PartyOrdering ordering = PartyOrdering::Standard);
ComplexMatrix reduced_density(const RealMatrix& rho, Party party, PartyOrdering ordering = PartyOrdering::Standard);

/// −Σ λ ln λ in nats over the eigenvalues of a 2x2 Hermitian density.
double von_neumann_entropy(const ComplexMatrix& rho2);

}  // namespace epitb
