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

#include "app/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "app/version.hpp"
#include "epitb/density.hpp"

namespace epitb::app {

Check check_le(std::string name, double value, double tol, int criterion) {
  return {std::move(name), value, "<=", tol, value <= tol, criterion, {}};
}

Check check_gt(std::string name, double value, double bound, int criterion) {
  return {std::move(name), value, ">", bound, value > bound, criterion, {}};
}

Check check_info(std::string name, double value, int criterion) {
  return {std::move(name), value, "info", 0.0, true, criterion, {}};
}

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string RunReport::render() const {
  std::string out = "epitb report\n";
  out += "version: " + std::string(kVersion) + "\n";
  out += "scenario: " + scenario + "\n";
  out += "model: " + model + "\n";
  out += "digest: " + digest + "\n";
  out += "config: " + config + "\n";
  for (const auto& n : notes) out += "note: " + n + "\n";
  out += "checks:\n";
  for (const auto& c : checks) {
    out += "  " + c.name + " value=" + format_short(c.value);
    if (c.relation == "info")
      out += " info\n";
    else
      out += " " + c.relation + " " + format_short(c.tolerance) + (c.pass ? " PASS\n" : " FAIL\n");
  }
  out += std::string("result: ") + (passed() ? "PASS" : "FAIL") + "\n";
  return out;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool wants(const Scenario& s, const char* group) {
  return std::find(s.outputs.begin(), s.outputs.end(), group) != s.outputs.end();
}

RunReport base_report(const Scenario& s) {
  RunReport r;
  r.scenario = s.name;
  r.model = to_string(s.model);
  r.digest = digest(s);
  r.config = canonical_text(s);
  return r;
}

double draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Integrates segment by segment, applying events at their times. A row is
/// emitted before and after every event.
template <class T, class Evolve, class Apply>
Trajectory<T> segmented(const Scenario& s, std::vector<T> y0, Evolve evolve, Apply apply) {
  Trajectory<T> out;
  double ta = s.t0;
  std::size_t next = 0;
  std::vector<T> y = std::move(y0);
  while (true) {
    const double tb = next < s.events.size() ? s.events[next].time : s.t1;
    const Trajectory<T> seg = evolve(y, ta, tb);
    out.times.insert(out.times.end(), seg.times.begin(), seg.times.end());
    out.states.insert(out.states.end(), seg.states.begin(), seg.states.end());
    y = seg.states.back();
    if (next >= s.events.size()) break;
    y = apply(s.events[next], y, tb);
    ta = tb;
    ++next;
  }
  return out;
}

std::vector<double> weak_update(const Event& e, const std::vector<double>& p) {
  std::vector<double> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    out[k] = ((e.n_total - e.n_tested) * p[k] + e.n_tested * e.p_test[k]) / e.n_total;
  return out;
}

RunResult run_epidemic2(const Scenario& s) {
  RunResult res;
  res.report = base_report(s);
  std::mt19937_64 rng(s.seed.value_or(0));
  const auto gen = [&s](double t) { return s.gen2.at(t); };
  auto evolve = [&](const RealVector& y, double ta, double tb) {
    return ode_evolve<double>(std::function<RealMatrix(double)>(gen), y, ta, tb, s.dt);
  };
  auto apply = [&](const Event& e, const RealVector& y, double) -> RealVector {
    const ProbState2 p{y[0], y[1]};
    if (e.kind == Event::Kind::Weak) return weak_update(e, y);
    const int outcome = e.target ? std::stoi(*e.target) : sample_outcome(p, rng);
    const ProbState2 q = measure_projective(p, outcome);
    return {q.p1, q.p2};
  };
  const auto traj = segmented<double>(s, s.p0, evolve, apply);

  Series& out = res.series;
  out.columns = {"t"};
  if (wants(s, "probabilities")) out.columns.insert(out.columns.end(), {"p1", "p2"});
  if (wants(s, "ensemble")) out.columns.insert(out.columns.end(), {"pI", "pII"});
  if (wants(s, "ratio")) out.columns.push_back("r12");
  std::size_t complex_frames = 0;
  for (std::size_t m = 0; m < traj.size(); ++m) {
    const double t = traj.times[m];
    const RealVector& p = traj.states[m];
    std::vector<double> row = {t};
    if (wants(s, "probabilities")) row.insert(row.end(), {p[0], p[1]});
    if (wants(s, "ensemble")) {
      try {
        const EnsembleWeights w = ensemble_decompose({p[0], p[1]}, s.gen2, t);
        row.insert(row.end(), {w.pI, w.pII});
      } catch (const epitb::ComplexSpectrumError&) {
        row.insert(row.end(), {kNaN, kNaN});
        ++complex_frames;
      }
    }
    if (wants(s, "ratio")) row.push_back(p[0] / p[1]);
    out.rows.push_back(std::move(row));
  }
  if (complex_frames) res.report.notes.push_back("ensemble weights undefined (complex spectrum) at " +
                                                 std::to_string(complex_frames) + " samples");

  const RealVector& end = traj.states.back();
  if (s.events.empty()) {
    const ProbState2 p0{s.p0[0], s.p0[1]};
    const ProbState2 cf = propagate_closed_form(s.gen2, p0, s.t0, s.t1);
    const double gap = std::max(std::abs(cf.p1 - end[0]), std::abs(cf.p2 - end[1]));
    const double r = occupancy_ratio(s.gen2, p0, s.t0, s.t1);
    const double rgap = std::abs(r - end[0] / end[1]) / std::max(1.0, std::abs(r));
    if (s.gen2.is_constant()) {
      res.report.checks.push_back(check_le("propagator.closed_form_vs_rk", gap, 1e-8));
      res.report.checks.push_back(check_le("ratio.closed_form_vs_trajectory", rgap, 1e-8));
    } else {
      res.report.notes.push_back("time-dependent generator: closed forms are exact only for commuting S(t)");
      res.report.checks.push_back(check_info("propagator.closed_form_vs_rk", gap));
      res.report.checks.push_back(check_info("ratio.closed_form_vs_trajectory", rgap));
    }
  }
  res.report.checks.push_back(check_info("final.p1", end[0]));
  res.report.checks.push_back(check_info("final.p2", end[1]));
  return res;
}

RunResult run_epidemicN(const Scenario& s) {
  RunResult res;
  res.report = base_report(s);
  const std::size_t n = s.genN.size();
  std::function<RealMatrix(double)> gen = [&s, n](double t) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = s.genN[i][j](t);
    return m;
  };
  auto evolve = [&](const RealVector& y, double ta, double tb) { return ode_evolve<double>(gen, y, ta, tb, s.dt); };
  std::mt19937_64 rng(s.seed.value_or(0));
  auto apply = [&](const Event& e, const RealVector& y, double) -> RealVector {
    if (e.kind == Event::Kind::Weak) return weak_update(e, y);
    std::size_t k = 0;
    if (e.target) {
      k = static_cast<std::size_t>(std::stoi(*e.target)) - 1;
    } else {
      double total = 0.0;
      for (double v : y) total += v;
      const double u = draw(rng) * total;
      double acc = 0.0;
      for (k = 0; k + 1 < y.size(); ++k) {
        acc += y[k];
        if (u < acc) break;
      }
    }
    RealVector q(y.size(), 0.0);
    q[k] = 1.0;
    return q;
  };
  const auto traj = segmented<double>(s, s.p0, evolve, apply);
  res.series.columns = {"t"};
  for (std::size_t k = 0; k < n; ++k) res.series.columns.push_back("p" + std::to_string(k + 1));
  for (std::size_t m = 0; m < traj.size(); ++m) {
    std::vector<double> row = {traj.times[m]};
    row.insert(row.end(), traj.states[m].begin(), traj.states[m].end());
    res.series.rows.push_back(std::move(row));
  }
  double total = 0.0;
  for (double v : traj.states.back()) total += v;
  res.report.checks.push_back(check_info("final.sum_p", total));
  return res;
}

RunResult run_coupled4(const Scenario& s) {
  RunResult res;
  res.report = base_report(s);
  const Generator4 g = build_traffic_generator(s.gen_a, s.gen_b, s.cross);
  auto evolve = [&](const RealVector& y, double ta, double tb) { return ode_evolve<double>(g.fn, y, ta, tb, s.dt); };
  std::mt19937_64 rng(s.seed.value_or(0));
  auto apply = [&](const Event& e, const RealVector& y, double) -> RealVector {
    if (e.kind == Event::Kind::Weak) return weak_update(e, y);
    Subsystem target;
    if (e.target) {
      target = parse_subsystem(*e.target);
    } else {
      const std::size_t off = *e.party == "A" ? 0 : 2;
      const ProbState2 pair{y[off], y[off + 1]};
      const int outcome = sample_outcome(pair, rng);
      target = off == 0 ? (outcome == 1 ? Subsystem::A1 : Subsystem::A2)
                        : (outcome == 1 ? Subsystem::B1 : Subsystem::B2);
    }
    return measure_subsystem(y, target);
  };
  const auto traj = segmented<double>(s, s.p0, evolve, apply);
  res.series.columns = {"t"};
  if (wants(s, "probabilities")) res.series.columns.insert(res.series.columns.end(), {"p1A", "p2A", "p1B", "p2B"});
  if (wants(s, "product")) res.series.columns.insert(res.series.columns.end(), {"q11", "q12", "q21", "q22"});
  for (std::size_t m = 0; m < traj.size(); ++m) {
    std::vector<double> row = {traj.times[m]};
    if (wants(s, "probabilities")) row.insert(row.end(), traj.states[m].begin(), traj.states[m].end());
    if (wants(s, "product")) {
      const RealVector q = traffic_to_product(traj.states[m]);
      row.insert(row.end(), q.begin(), q.end());
    }
    res.series.rows.push_back(std::move(row));
  }
  const RealVector& end = traj.states.back();
  res.report.checks.push_back(check_info("final.sum_A", end[0] + end[1]));
  res.report.checks.push_back(check_info("final.sum_B", end[2] + end[3]));
  return res;
}

const std::size_t kSlots[4][2] = {{0, 1}, {2, 3}, {0, 2}, {1, 3}};  // A1, A2, B1, B2

RunResult run_quantum(const Scenario& s) {
  RunResult res;
  res.report = base_report(s);
  const ComplexMatrix h = build_hamiltonian(s.ham);
  ComplexVector psi0 = s.psi0;
  const double n0 = std::sqrt(norm2(psi0));
  if (std::abs(n0 - 1.0) > 1e-12) res.report.notes.push_back("initial state normalized");
  for (auto& z : psi0) z /= n0;

  std::mt19937_64 rng(s.seed.value_or(0));
  auto evolve = [&](const ComplexVector& y, double ta, double tb) {
    return evolve_schrodinger(h, y, ta, tb, s.dt, s.hbar);
  };
  auto apply = [&](const Event& e, const ComplexVector& y, double) -> ComplexVector {
    if (e.kind == Event::Kind::AharonovBohm) return apply_aharonov_bohm(y, e.potential);
    Subsystem target;
    if (e.target) {
      target = parse_subsystem(*e.target);
    } else {
      const bool a = *e.party == "A";
      const auto* one = kSlots[a ? 0 : 2];
      const double p1 = (std::norm(y[one[0]]) + std::norm(y[one[1]])) / norm2(y);
      const bool first = draw(rng) < p1;
      target = a ? (first ? Subsystem::A1 : Subsystem::A2) : (first ? Subsystem::B1 : Subsystem::B2);
    }
    const auto* keep = kSlots[static_cast<int>(target)];
    ComplexVector q(4, 0.0);
    q[keep[0]] = y[keep[0]];
    q[keep[1]] = y[keep[1]];
    const double nq = std::sqrt(norm2(q));
    if (!(nq > 0.0)) throw ValidationError("projective outcome has zero probability");
    for (auto& z : q) z /= nq;
    return q;
  };
  const auto traj = segmented<Complex>(s, psi0, evolve, apply);
  const auto polar = polar_split(traj);

  Series& out = res.series;
  out.columns = {"t"};
  if (wants(s, "probabilities")) out.columns.insert(out.columns.end(), {"pI", "pII", "pIII", "pIV"});
  if (wants(s, "entropy")) out.columns.insert(out.columns.end(), {"SA", "SB"});
  if (wants(s, "phases")) out.columns.insert(out.columns.end(), {"thetaI", "thetaII", "thetaIII", "thetaIV"});
  if (wants(s, "norm")) out.columns.push_back("norm");

  double sym = 0.0, drift = 0.0, energy = 0.0, e_ref = 0.0;
  const double norm_ref = 1.0;
  for (std::size_t m = 0; m < traj.size(); ++m) {
    const ComplexVector& psi = traj.states[m];
    const EntropyPair ent = pure_entropy_pair(psi);
    sym = std::max(sym, std::abs(ent.sa - ent.sb));
    drift = std::max(drift, std::abs(norm2(psi) - norm_ref));
    const double em = expectation(h, psi).real() / norm2(psi);
    if (m == 0 || traj.times[m] == traj.times[m - 1]) e_ref = em;
    energy = std::max(energy, std::abs(em - e_ref));
    std::vector<double> row = {traj.times[m]};
    if (wants(s, "probabilities")) row.insert(row.end(), polar.p[m].begin(), polar.p[m].end());
    if (wants(s, "entropy")) row.insert(row.end(), {ent.sa, ent.sb});
    if (wants(s, "phases")) row.insert(row.end(), polar.theta[m].begin(), polar.theta[m].end());
    if (wants(s, "norm")) row.push_back(norm2(psi));
    out.rows.push_back(std::move(row));
  }
  res.report.checks.push_back(check_le("entropy.symmetry", sym, 1e-9));
  if (s.ham.hermitian) {
    res.report.checks.push_back(check_le("norm.drift", drift, 1e-9));
    res.report.checks.push_back(check_le("energy.drift", energy, 1e-8));
  } else {
    res.report.checks.push_back(check_info("norm.final", norm2(traj.states.back())));
  }
  return res;
}

}  // namespace

RunResult run_mapping(const Scenario& s) {
  if (s.model != Model::Mapping && s.model != Model::Quantum2Q)
    throw ConfigError("map needs a mapping or quantum2q scenario");
  if (!s.events.empty()) throw ConfigError("map does not take events");
  RunResult res;
  res.report = base_report(s);
  ComplexMatrix h = build_hamiltonian(s.ham);
  h = h * Complex(1.0 / s.hbar);
  ComplexVector psi0 = s.psi0;
  const double n0 = std::sqrt(norm2(psi0));
  if (std::abs(n0 - 1.0) > 1e-12) res.report.notes.push_back("initial state normalized");
  for (auto& z : psi0) z /= n0;

  const EquivalenceReport eq = verify_equivalence(h, psi0, s.t0, s.t1, s.dt);
  auto& c = res.report.checks;
  c.push_back(check_le("mapping.max_residual", eq.max_residual, 1e-6));
  c.push_back(check_le("mapping.split_error", eq.split_error, 1e-10));
  c.push_back(check_le("mapping.real_form_error", eq.real_form_error, 1e-8));
  c.push_back(check_info("mapping.tan2_error", eq.tan2_error));
  c.push_back(check_info("mapping.theta_rate_error", eq.theta_rate_error));
  c.push_back(check_info("mapping.samples_checked", static_cast<double>(eq.samples_checked)));
  c.push_back(check_info("mapping.excluded_intervals", static_cast<double>(eq.excluded.size())));
  if (eq.hermitian) {
    c.push_back(check_le("mapping.norm_drift", eq.norm_drift, 1e-9));
  } else {
    c.push_back(check_info("mapping.norm_final", eq.norm_final));
    c.push_back(check_info("mapping.norm_nonincreasing", eq.norm_nonincreasing ? 1.0 : 0.0));
  }
  for (const auto& [a, b] : eq.excluded)
    res.report.notes.push_back("excluded interval [" + format_double(a) + ", " + format_double(b) + "]");

  const auto traj = evolve_schrodinger(h, psi0, s.t0, s.t1, s.dt);
  Series& out = res.series;
  out.columns = {"t"};
  if (wants(s, "probabilities")) out.columns.insert(out.columns.end(), {"pI", "pII", "pIII", "pIV"});
  if (wants(s, "split"))
    for (const char* k : {"I", "II", "III", "IV"}) {
      out.columns.push_back(std::string("Re_p") + k);
      out.columns.push_back(std::string("Im_p") + k);
    }
  if (wants(s, "tan2")) out.columns.insert(out.columns.end(), {"tan2I", "tan2II", "tan2III", "tan2IV"});
  for (std::size_t m = 0; m < traj.size(); ++m) {
    const RealVector x = split_state(traj.states[m]);
    const auto rec = phase_from_split(x);
    std::vector<double> row = {traj.times[m]};
    if (wants(s, "probabilities")) row.insert(row.end(), rec.p.begin(), rec.p.end());
    if (wants(s, "split")) row.insert(row.end(), x.begin(), x.end());
    if (wants(s, "tan2")) row.insert(row.end(), rec.tan2.begin(), rec.tan2.end());
    out.rows.push_back(std::move(row));
  }
  return res;
}

RunResult run_scenario(const Scenario& s) {
  switch (s.model) {
    case Model::Epidemic2: return run_epidemic2(s);
    case Model::EpidemicN: return run_epidemicN(s);
    case Model::Coupled4: return run_coupled4(s);
    case Model::Quantum2Q: return run_quantum(s);
    case Model::Mapping: return run_mapping(s);
  }
  throw ConfigError("unknown model");
}

void write_outputs(const RunResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  emit_series(r.series, dir / "series.csv", r.report.digest);
  std::ofstream f(dir / "report.txt", std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (dir / "report.txt").string());
  f << r.report.render();
}

}  // namespace epitb::app
