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

#include "doctest.h"

#include <cmath>
#include <random>

#include "epitb/epidemic.hpp"
#include "oracles/oracles.hpp"

using namespace epitb;

namespace {

double dot(const RealVector& a, const RealVector& b) { return a[0] * b[0] + a[1] * b[1]; }

Generator2 random_generator(std::mt19937_64& rng) {
  return Generator2::constant(oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1),
                              oracle::uniform(rng, -1, 1));
}

}  // namespace

TEST_CASE("spectral_frame closed-form values") {
  const SpectralFrame2 f = spectral_frame(Generator2::constant(0, 1, 1, 0), 0.0);
  CHECK(f.E1 == doctest::Approx(-1.0));
  CHECK(f.E2 == doctest::Approx(1.0));

  const Generator2 s = Generator2::constant(2.0, 0.5, 0.5, 0.0);
  const SpectralFrame2 g = spectral_frame(s, 0.0);
  CHECK(!g.numeric);
  CHECK(g.E1 == doctest::Approx(1.0 - std::sqrt(1.25)).epsilon(1e-14));
  CHECK(g.E2 == doctest::Approx(1.0 + std::sqrt(1.25)).epsilon(1e-14));
  const Spectrum ref = eig(s.at(0.0));
  CHECK(std::abs(g.E1 - ref.values[0].real()) <= 1e-14);
  CHECK(std::abs(g.E2 - ref.values[1].real()) <= 1e-14);
  CHECK(frame_residual(s.at(0.0), g) <= 1e-12);
  CHECK(g.n1 == dot(g.v1, g.v1));
  CHECK(g.n2 == dot(g.v2, g.v2));
  CHECK(g.v1[0] + g.v1[1] == doctest::Approx(1.0));
}

TEST_CASE("spectral_frame errors and numeric fallback") {
  CHECK_THROWS_AS(spectral_frame(0.0, 1.0, -1.0, 0.0), ComplexSpectrumError);
  try {
    spectral_frame(0.0, 1.0, -1.0, 0.0);
  } catch (const ComplexSpectrumError& e) {
    CHECK(e.discriminant() == doctest::Approx(-4.0));
  }
  const SpectralFrame2 tiny = spectral_frame(0.3, 0.4, 1e-12, -0.2);
  CHECK(tiny.numeric);
  CHECK(frame_residual(RealMatrix{{0.3, 0.4}, {1e-12, -0.2}}, tiny) <= 1e-12);
  CHECK(tiny.E1 <= tiny.E2);
  // s11 = s22 with s12 = s21 > 0 makes the −√ branch prefactor vanish.
  const SpectralFrame2 sym = spectral_frame(0.0, 1.0, 1.0, 0.0);
  CHECK(sym.numeric);
  CHECK(frame_residual(RealMatrix{{0.0, 1.0}, {1.0, 0.0}}, sym) <= 1e-12);
}

TEST_CASE("closed-form eigen-residual over seeded generators") {
  std::mt19937_64 rng(101);
  int used = 0;
  while (used < 1000) {
    const Generator2 s = random_generator(rng);
    const RealMatrix m = s.at(0.0);
    const double disc = (m(0, 0) - m(1, 1)) * (m(0, 0) - m(1, 1)) + 4 * m(0, 1) * m(1, 0);
    if (disc <= 0.0) continue;
    const SpectralFrame2 f = spectral_frame(s, 0.0);
    CHECK(frame_residual(m, f) <= 1e-12);
    CHECK(f.E1 <= f.E2);
    ++used;
  }
}

TEST_CASE("orthogonality holds for symmetric coupling only") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const double c = oracle::uniform(rng, 0.05, 1.0) * (k % 2 ? 1.0 : -1.0);
    const double a = oracle::uniform(rng, -1, 1), d = oracle::uniform(rng, -1, 1);
    const SpectralFrame2 f = spectral_frame(a, c, c, d);
    CHECK(std::abs(dot(f.v1, f.v2)) / std::sqrt(f.n1 * f.n2) <= 1e-12);
  }
  const SpectralFrame2 w = spectral_frame(0.0, 0.2, 0.8, 0.0);
  CHECK(std::abs(dot(w.v1, w.v2)) > 1e-6);
}

TEST_CASE("ensemble decomposition") {
  const Generator2 s = Generator2::constant(1.0, 0.3, 0.3, 0.2);
  const SpectralFrame2 f = spectral_frame(s, 0.0);
  const EnsembleWeights e1 = ensemble_decompose({f.v1[0], f.v1[1]}, f);
  CHECK(e1.pI == doctest::Approx(1.0));
  CHECK(std::abs(e1.pII) <= 1e-14);
  const EnsembleWeights e12 = ensemble_decompose({f.v1[0] + f.v2[0], f.v1[1] + f.v2[1]}, f);
  CHECK(e12.pI == doctest::Approx(1.0));
  CHECK(e12.pII == doctest::Approx(1.0));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    const ProbState2 p{oracle::uniform(rng, 0, 1), oracle::uniform(rng, 0, 1)};
    const ProbState2 r = ensemble_reconstruct(ensemble_decompose(p, s, 0.0), f);
    CHECK(std::max(std::abs(r.p1 - p.p1), std::abs(r.p2 - p.p2)) <= 1e-12);
  }
}

TEST_CASE("ensemble_coordinates is exact for asymmetric frames where projection is not") {
  const SpectralFrame2 f = spectral_frame(0.0, 0.2, 0.8, 0.0);
  const ProbState2 p{0.3, 0.7};
  const ProbState2 exact = ensemble_reconstruct(ensemble_coordinates(p, f), f);
  CHECK(std::abs(exact.p1 - p.p1) <= 1e-14);
  CHECK(std::abs(exact.p2 - p.p2) <= 1e-14);
  const ProbState2 proj = ensemble_reconstruct(ensemble_decompose(p, f), f);
  CHECK(std::abs(proj.p1 - p.p1) + std::abs(proj.p2 - p.p2) > 1e-6);
}

TEST_CASE("integrate_generator") {
  Generator2 s = Generator2::constant(2.0, 0.0, 0.0, 0.0);
  CHECK(integrate_generator(s, 0.5, 2.0).S11 == doctest::Approx(3.0));
  const IntegratedGenerator2 z = integrate_generator(s, 1.0, 1.0);
  CHECK(z.S11 == 0.0);
  CHECK(z.S22 == 0.0);
  s.s12 = RateFn::table({{0.0, 0.0}, {1.0, 1.0}});
  CHECK(integrate_generator(s, 0.0, 1.0).S12 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(integrate_generator(s, 0.0, 2.0).S12 == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(integrate_generator(s, -1.0, 0.5).S12 == doctest::Approx(0.125).epsilon(1e-15));
  CHECK_THROWS_AS(integrate_generator(s, 1.0, 0.0), ValidationError);
}

TEST_CASE("propagate_closed_form") {
  const Generator2 s = Generator2::constant(0.0, 0.4, 0.6, -0.2);
  const ProbState2 p0{0.25, 0.75};
  const ProbState2 same = propagate_closed_form(s, p0, 1.0, 1.0);
  CHECK(same.p1 == p0.p1);
  CHECK(same.p2 == p0.p2);
  const ProbState2 d = propagate_closed_form(Generator2::constant(0.3, 0.0, 0.0, -0.7), p0, 0.0, 1.5);
  CHECK(d.p1 == doctest::Approx(std::exp(0.45) * 0.25).epsilon(1e-14));
  CHECK(d.p2 == doctest::Approx(std::exp(-1.05) * 0.75).epsilon(1e-14));
  const ProbState2 cf = propagate_closed_form(s, p0, 0.0, 1.0);
  const RealVector rk = oracle::rk4_linear(s.at(0.0), RealVector{p0.p1, p0.p2}, 1.0, 1e-4);
  CHECK(std::abs(cf.p1 - rk[0]) <= 1e-8);
  CHECK(std::abs(cf.p2 - rk[1]) <= 1e-8);
  const RealVector ex = mat_exp(s.at(0.0)) * RealVector{p0.p1, p0.p2};
  CHECK(std::abs(cf.p1 - ex[0]) <= 1e-12);
  CHECK(std::abs(cf.p2 - ex[1]) <= 1e-12);
}

TEST_CASE("propagation gap is reported for non-commuting time-dependent generators") {
  Generator2 s = Generator2::constant(-0.5, 0.3, 0.2, 0.1);
  s.s12 = RateFn::table({{0.0, 0.0}, {2.0, 1.0}});
  const double gap = propagation_gap(s, {0.5, 0.5}, 0.0, 2.0, 1e-3);
  CHECK(std::isfinite(gap));
  CHECK(gap > 1e-6);
  CHECK(propagation_gap(Generator2::constant(-0.5, 0.3, 0.2, 0.1), {0.5, 0.5}, 0.0, 2.0, 1e-3) <= 1e-10);
}

TEST_CASE("simplex flag") {
  CHECK(on_simplex({0.4, 0.6}));
  CHECK(!on_simplex({-0.1, 0.6}));
  CHECK(!on_simplex({0.9, 0.6}));
}

TEST_CASE("occupancy_ratio") {
  const ProbState2 p0{0.2, 0.5};
  CHECK(occupancy_ratio(Generator2::constant(0.1, 0.3, 0.2, -0.1), p0, 1.0, 1.0) == doctest::Approx(0.4));
  CHECK(occupancy_ratio(Generator2::constant(0.5, 0.0, 0.0, -0.1), p0, 0.0, 2.0) ==
        doctest::Approx(0.4 * std::exp(1.2)).epsilon(1e-13));
  const Generator2 s = Generator2::constant(0.1, 0.3, 0.2, -0.1);
  const ProbState2 p = propagate_closed_form(s, p0, 0.0, 2.0);
  CHECK(std::abs(occupancy_ratio(s, p0, 0.0, 2.0) - p.p1 / p.p2) <= 1e-10);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    const Generator2 g = random_generator(rng);
    const ProbState2 q = propagate_closed_form(g, p0, 0.0, 1.3);
    if (std::abs(q.p2) < 1e-3) continue;
    CHECK(std::abs(occupancy_ratio(g, p0, 0.0, 1.3) - q.p1 / q.p2) <= 1e-10 * std::max(1.0, std::abs(q.p1 / q.p2)));
  }
}

TEST_CASE("projective and weak measurement") {
  const ProbState2 a = measure_projective({0.3, 0.7}, 1);
  CHECK(a.p1 == 1.0);
  CHECK(a.p2 == 0.0);
  const ProbState2 b = measure_projective({0.3, 0.7}, 2);
  CHECK(b.p1 == 0.0);
  CHECK(b.p2 == 1.0);
  CHECK_THROWS_AS(measure_projective({0.0, 0.0}, 1), ValidationError);
  CHECK_THROWS_AS(measure_projective({0.5, 0.5}, 3), ValidationError);

  std::mt19937_64 rng(12345);
  int ones = 0;
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) ones += sample_outcome({0.3, 0.7}, rng) == 1;
  CHECK(std::abs(static_cast<double>(ones) / draws - 0.3) <= 0.01);

  const ProbState2 p{0.5, 0.5};
  const ProbState2 none = measure_weak(p, 100, 0, {1.0, 0.0});
  CHECK(none.p1 == 0.5);
  const ProbState2 all = measure_weak(p, 100, 100, {1.0, 0.0});
  CHECK(all.p1 == 1.0);
  CHECK(all.p2 == 0.0);
  const ProbState2 w = measure_weak(p, 100, 20, {1.0, 0.0});
  CHECK(w.p1 == (80.0 * 0.5 + 20.0 * 1.0) / 100.0);
  CHECK(w.p1 == doctest::Approx(0.6));
  CHECK(w.p2 == doctest::Approx(0.4));
  CHECK_THROWS_AS(measure_weak(p, 10, 11, {1.0, 0.0}), ValidationError);
}

TEST_CASE("eigenmode_evolve_const") {
  const Generator2 s = Generator2::constant(1.0, 0.5, 0.5, 0.2);
  const EnsembleWeights w0{0.4, 0.9};
  const EnsembleWeights same = eigenmode_evolve_const(s, w0, 0.5, 0.5);
  CHECK(same.pI == w0.pI);
  CHECK(same.pII == w0.pII);

  const SpectralFrame2 f = spectral_frame(s, 0.0);
  const EnsembleWeights w = eigenmode_evolve_const(s, w0, 0.0, 1.0);
  const double expected = w0.pI / w0.pII * std::exp(f.E1 / f.n1 - f.E2 / f.n2);
  CHECK(std::abs(w.pI / w.pII - expected) <= 1e-12 * expected);

  // Exact-rate convention agrees with decompose-after-propagate.
  const ProbState2 p0 = ensemble_reconstruct(w0, f);
  const ProbState2 p1 = propagate_closed_form(s, p0, 0.0, 1.0);
  const EnsembleWeights ref = ensemble_decompose(p1, f);
  const EnsembleWeights ex = eigenmode_evolve_const(s, w0, 0.0, 1.0, RateConvention::Exact);
  CHECK(std::abs(ex.pI - ref.pI) <= 1e-8);
  CHECK(std::abs(ex.pII - ref.pII) <= 1e-8);
  // The norm-scaled rates do not, since n1, n2 differ from 1 here.
  CHECK(std::abs(w.pI - ref.pI) + std::abs(w.pII - ref.pII) > 1e-3);

  // Equal effective rates keep the ratio fixed.
  const Generator2 diag = Generator2::constant(0.3, 0.0, 0.0, 0.3);
  const EnsembleWeights r0 = eigenmode_evolve_const(diag, w0, 0.0, 0.0);
  const EnsembleWeights r3 = eigenmode_evolve_const(diag, w0, 0.0, 3.0);
  CHECK(r3.pI / r3.pII == doctest::Approx(r0.pI / r0.pII));
}

TEST_CASE("closed-form eigenvector derivative for S(t) = [[0, t], [t, 0]]") {
  Generator2 s;
  s.s12 = RateFn::table({{0.0, 0.0}, {4.0, 4.0}});
  s.s21 = s.s12;
  // Upper branch is (2t, 2t)/(4t) = (1/2, 1/2), constant in t.
  const RealVector dv = numeric_derivative(
      [&s](double t) {
        const SpectralFrame2 f = spectral_frame(s, t);
        return f.v2;
      },
      1.0, 1e-5);
  CHECK(spectral_frame(s, 1.0).numeric);
  CHECK(norm_inf(dv) <= 1e-10);
}

TEST_CASE("constant_occupancy_residual") {
  const Generator2 c = Generator2::constant(0.4, 0.3, 0.3, -0.1);
  const SpectralFrame2 f = spectral_frame(c, 0.0);
  CHECK(constant_occupancy_residual(c, 0.0, 1e-4) == doctest::Approx(std::abs(f.E1 * f.E2)).epsilon(1e-14));

  Generator2 s;
  s.s12 = RateFn::table({{0.0, 0.5}, {10.0, 1.5}});
  s.s21 = s.s12;
  s.s11 = RateFn::table({{0.0, 0.6}, {10.0, 0.1}});
  const double r1 = constant_occupancy_residual(s, 2.0, 1e-3);
  const double r2 = constant_occupancy_residual(s, 2.0, 5e-4);
  CHECK(std::isfinite(r1));
  CHECK(std::abs(r1 - r2) <= 1e-5 * std::max(1.0, r1));

  for (double k : {0.5, 2.0, 3.0}) {
    const double rk = constant_occupancy_residual(s.rescaled(k), 2.0 / k, 1e-4 / k);
    CHECK(rk == doctest::Approx(k * k * constant_occupancy_residual(s, 2.0, 1e-4)).epsilon(1e-6));
  }
}

TEST_CASE("frame_evolve") {
  const Generator2 c = Generator2::constant(0.3, 0.2, 0.2, -0.4);
  const EnsembleWeights w0{0.6, 0.3};
  const EnsembleWeights same = frame_evolve(c, 0.0, 0.0, w0, 1.0, 1.0);
  CHECK(same.pI == w0.pI);
  const EnsembleWeights fe = frame_evolve(c, 0.0, 0.0, w0, 0.0, 1.5);
  const EnsembleWeights em = eigenmode_evolve_const(c, w0, 0.0, 1.5, RateConvention::Exact);
  CHECK(std::abs(fe.pI - em.pI) <= 1e-10);
  CHECK(std::abs(fe.pII - em.pII) <= 1e-10);

  Generator2 s;
  s.s11 = RateFn::table({{0.0, 0.3}, {10.0, 0.4}});
  s.s12 = RateFn::table({{0.0, 0.2}, {10.0, 0.1}});
  s.s21 = RateFn::table({{0.0, 0.2}, {10.0, 0.3}});
  s.s22 = RateFn::table({{0.0, -0.4}, {10.0, -0.5}});
  const EnsembleWeights a = frame_evolve(s, 0.0, 0.0, w0, 1.0, 1.2, 1e-3);
  const EnsembleWeights b = frame_evolve_rk(s, 0.0, 0.0, w0, 1.0, 1.2, 1e-3);
  CHECK(std::abs(a.pI - b.pI) <= 1e-6);
  CHECK(std::abs(a.pII - b.pII) <= 1e-6);

  // exp(∫M) differs from the time-ordered flow at third order in the window.
  auto gap = [&](double len) {
    const EnsembleWeights x = frame_evolve(s, 0.0, 0.0, w0, 1.0, 1.0 + len, 1e-3);
    const EnsembleWeights y = frame_evolve_rk(s, 0.0, 0.0, w0, 1.0, 1.0 + len, 1e-3);
    return std::max(std::abs(x.pI - y.pI), std::abs(x.pII - y.pII));
  };
  const double ratio = gap(1.0) / gap(0.5);
  CHECK(ratio > 6.0);
  CHECK(ratio < 10.0);
}

TEST_CASE("propagate_n") {
  const Generator2 s = Generator2::constant(0.0, 0.4, 0.6, -0.2);
  const RealVector pn = propagate_n([&s](double t) { return s.at(t); }, {0.25, 0.75}, 0.0, 1.0, 1e-3);
  const ProbState2 cf = propagate_closed_form(s, {0.25, 0.75}, 0.0, 1.0);
  CHECK(std::abs(pn[0] - cf.p1) <= 1e-8);
  CHECK(std::abs(pn[1] - cf.p2) <= 1e-8);
  const RealVector z = propagate_n([](double) { return RealMatrix(3, 3); }, {0.1, 0.2, 0.7}, 0.0, 1.0, 0.1);
  CHECK(z == RealVector{0.1, 0.2, 0.7});

  std::mt19937_64 rng(8);
  RealMatrix g(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != j) col += g(i, j) = oracle::uniform(rng, 0, 1);
    g(j, j) = -col;
  }
  const RealVector p = propagate_n([&g](double) { return g; }, {0.1, 0.2, 0.3, 0.4}, 0.0, 10.0, 1e-3);
  CHECK(std::abs(p[0] + p[1] + p[2] + p[3] - 1.0) <= 1e-10);
  CHECK_THROWS_AS(propagate_n([](double) { return RealMatrix(3, 3); }, {1.0, 0.0}, 0.0, 1.0, 0.1), DimensionError);
}
