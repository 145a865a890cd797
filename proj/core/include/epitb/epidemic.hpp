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

#include <cstdint>
#include <functional>
#include <random>

#include "epitb/matrix.hpp"
#include "epitb/numkit.hpp"
#include "epitb/rate.hpp"

namespace epitb {

/// Two-level rate matrix [[s11, s12], [s21, s22]] with dp/dt = S·p.
struct Generator2 {
  RateFn s11, s12, s21, s22;

  static Generator2 constant(double s11, double s12, double s21, double s22) {
    return Generator2{s11, s12, s21, s22};
  }

  RealMatrix at(double t) const { return RealMatrix{{s11(t), s12(t)}, {s21(t), s22(t)}}; }
  bool is_constant() const noexcept {
    return s11.is_constant() && s12.is_constant() && s21.is_constant() && s22.is_constant();
  }
  /// c·S(c·t).
  Generator2 rescaled(double c) const {
    return Generator2{s11.rescaled(c), s12.rescaled(c), s21.rescaled(c), s22.rescaled(c)};
  }
};

struct ProbState2 {
  double p1 = 0.0;
  double p2 = 0.0;
};

/// Eigenvalues E1 <= E2 with the unnormalized closed-form eigenvectors.
struct SpectralFrame2 {
  double E1 = 0.0;
  double E2 = 0.0;
  RealVector v1;
  RealVector v2;
  double n1 = 0.0;  // <v1|v1>
  double n2 = 0.0;  // <v2|v2>
  double discriminant = 0.0;
  bool numeric = false;  // closed form was singular, numeric eig used instead
};

struct EnsembleWeights {
  double pI = 0.0;
  double pII = 0.0;
};

struct IntegratedGenerator2 {
  double S11 = 0.0;
  double S12 = 0.0;
  double S21 = 0.0;
  double S22 = 0.0;
};

/// Effective eigen-ensemble growth rate: E/n as in the projector form, or E.
enum class RateConvention { NormScaled, Exact };

inline constexpr double kS21Floor = 1e-10;

SpectralFrame2 spectral_frame(double s11, double s12, double s21, double s22);
SpectralFrame2 spectral_frame(const Generator2& s, double t);

/// max_k ||S·v̂k − Ek·v̂k||∞ with v̂k the unit-norm eigenvectors.
double frame_residual(const RealMatrix& s, const SpectralFrame2& f);

EnsembleWeights ensemble_decompose(const ProbState2& p, const SpectralFrame2& f);
EnsembleWeights ensemble_decompose(const ProbState2& p, const Generator2& s, double t);
ProbState2 ensemble_reconstruct(const EnsembleWeights& w, const SpectralFrame2& f);
/// Exact expansion coefficients of p in the (v1, v2) basis.
EnsembleWeights ensemble_coordinates(const ProbState2& p, const SpectralFrame2& f);

IntegratedGenerator2 integrate_generator(const Generator2& s, double t0, double t);
RealMatrix closed_form_propagator(const IntegratedGenerator2& g);

ProbState2 propagate_closed_form(const Generator2& s, const ProbState2& p0, double t0, double t);
ProbState2 propagate_rk(const Generator2& s, const ProbState2& p0, double t0, double t, double dt);
/// ||closed form − RK||∞; nonzero for non-commuting time-dependent generators.
double propagation_gap(const Generator2& s, const ProbState2& p0, double t0, double t, double dt);
bool on_simplex(const ProbState2& p, double tol = 0.0);

double occupancy_ratio(const Generator2& s, const ProbState2& p0, double t0, double t);

ProbState2 measure_projective(const ProbState2& p, int outcome);
/// Draws outcome 1 or 2 with probabilities (p1, p2)/(p1+p2).
int sample_outcome(const ProbState2& p, std::mt19937_64& rng);
ProbState2 measure_weak(const ProbState2& p, double n_total, double n_tested, const ProbState2& p_test);

EnsembleWeights eigenmode_evolve_const(const Generator2& s, const EnsembleWeights& w0, double t0, double t,
                                       RateConvention conv = RateConvention::NormScaled);

/// <vi|d/dt vj> from central differences of the closed-form eigenvectors.
struct Connections {
  double c11 = 0.0, c12 = 0.0, c21 = 0.0, c22 = 0.0;
};
Connections frame_connections(const Generator2& s, double t, double h);

double constant_occupancy_residual(const Generator2& s, double t, double h);

/// [[E1 − c11, e21 − c12], [e12 − c21, E2 − c22]].
RealMatrix frame_matrix(const Generator2& s, const RateFn& e12, const RateFn& e21, double t, double h);

EnsembleWeights frame_evolve(const Generator2& s, const RateFn& e12, const RateFn& e21, const EnsembleWeights& w0,
                             double t0, double t, double dt = 1e-3, double h = 1e-5);
/// RK reference for the same frame equation.
EnsembleWeights frame_evolve_rk(const Generator2& s, const RateFn& e12, const RateFn& e21,
                                const EnsembleWeights& w0, double t0, double t, double dt = 1e-3, double h = 1e-5);

RealVector propagate_n(const std::function<RealMatrix(double)>& s, const RealVector& p0, double t0, double t,
                       double dt);

}  // namespace epitb
