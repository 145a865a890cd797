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
#include <string>

#include "epitb/epidemic.hpp"
#include "epitb/matrix.hpp"
#include "epitb/rate.hpp"

namespace epitb {

/// 4×4 rate matrix of two coupled two-level systems.
struct Generator4 {
  enum class Form { Custom, Traffic, Symmetric, KronSum, Interaction };

  Form form = Form::Custom;
  std::function<RealMatrix(double)> fn;
  bool constant = false;
  // Populated for the symmetric form only.
  Generator2 base;
  RateFn coupling;

  RealMatrix at(double t) const { return fn(t); }
  bool is_constant() const noexcept { return constant; }

  static Generator4 from_matrix(const RealMatrix& m);
};

/// Cross rates of the traffic form, placed on the anti-diagonal:
/// (1,4) = s_1A2B, (2,3) = s_2A2B, (3,2) = s_2A1B, (4,1) = s_1A1B.
struct CrossRates {
  RateFn s_1A2B, s_2A2B, s_2A1B, s_1A1B;

  static CrossRates uniform(const RateFn& s) { return {s, s, s, s}; }
};

/// Traffic basis (pA1, pA2, pB1, pB2).
Generator4 build_traffic_generator(const Generator2& a, const Generator2& b, const CrossRates& cross);
/// Two identical systems coupled by a common rate s(t).
Generator4 build_symmetric_generator(const Generator2& s, const RateFn& coupling);

struct CoupledMode {
  double value = 0.0;
  RealVector vec;  // unnormalized closed form
  bool sign_indefinite = false;
};

struct CoupledSpectrum {
  std::array<CoupledMode, 4> modes;
  bool numeric = false;
};

/// V1, V2 = (x, −1, −x, 1) and V3, V4 = (y, 1, y, 1) with eigenvalues from the
/// Rayleigh quotient.
CoupledSpectrum coupled_eigenvectors(const Generator4& s4, double t);

enum class Subsystem { A1, A2, B1, B2 };
Subsystem parse_subsystem(const std::string& label);
std::string to_string(Subsystem s);

RealMatrix subsystem_projector(Subsystem target);
/// Applies the projector and sets the measured component to 1.
RealVector measure_subsystem(const RealVector& p, Subsystem target);

/// SA ⊗ I + I ⊗ SB in the product basis (1A1B, 1A2B, 2A1B, 2A2B).
Generator4 kron_sum_generator(const Generator2& a, const Generator2& b);

/// |pI·pIV − pII·pIII|; zero exactly for outer products.
double factorization_defect(const RealVector& q);

RealVector traffic_to_product(const RealVector& p);
RealVector product_to_traffic(const RealVector& q);

/// Interaction generator assembled in the product eigenbasis.
struct InteractionSpec {
  std::array<RateFn, 4> energy;                    // E_IQ .. E_IVQ
  std::array<std::array<RateFn, 4>, 4> coupling;   // coupling[source][target]
  RealMatrix frame_a = RealMatrix::identity(2);    // columns are eigenvectors of A
  RealMatrix frame_b = RealMatrix::identity(2);
};

/// M(t) with M[target][source] = e_{source→target} and the energies on the diagonal.
RealMatrix interaction_eigenbasis_matrix(const InteractionSpec& spec, double t);
/// V·M(t)·Vᵀ with V columns kron(frame_a[:, i], frame_b[:, j]).
Generator4 interaction_generator(const InteractionSpec& spec);

}  // namespace epitb
