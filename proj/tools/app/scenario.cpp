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

#include "app/scenario.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "app/version.hpp"

namespace epitb::app {

std::string to_string(Model m) {
  switch (m) {
    case Model::Epidemic2: return "epidemic2";
    case Model::EpidemicN: return "epidemicN";
    case Model::Coupled4: return "coupled4";
    case Model::Quantum2Q: return "quantum2q";
    case Model::Mapping: return "mapping";
  }
  return "?";
}

std::vector<std::string> output_groups(Model m) {
  switch (m) {
    case Model::Epidemic2: return {"probabilities", "ensemble", "ratio"};
    case Model::EpidemicN: return {"probabilities"};
    case Model::Coupled4: return {"probabilities", "product"};
    case Model::Quantum2Q: return {"probabilities", "entropy", "phases", "norm"};
    case Model::Mapping: return {"probabilities", "split", "tan2"};
  }
  return {};
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) fail(where + ": unknown key '" + k + "'");
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where + ": not finite");
  return v;
}

double number_or(const Json& j, const char* key, double dflt, const std::string& where) {
  return j.contains(key) ? number(j.at(key), where + "." + key) : dflt;
}

RateFn rate(const Json& j, const std::string& where) {
  if (j.is_number()) return RateFn(number(j, where));
  if (!j.is_array() || j.empty()) fail(where + ": expected a number or [[t, v], ...]");
  std::vector<std::pair<double, double>> nodes;
  for (const auto& node : j) {
    if (!node.is_array() || node.size() != 2) fail(where + ": table nodes are [t, v] pairs");
    nodes.emplace_back(number(node[0], where), number(node[1], where));
  }
  try {
    return RateFn::table(std::move(nodes));
  } catch (const epitb::Error& e) {
    fail(where + ": " + e.what());
  }
}

Json rate_json(const RateFn& r) {
  if (r.is_constant()) return r.constant_value();
  Json arr = Json::array();
  for (const auto& [t, v] : r.nodes()) arr.push_back({t, v});
  return arr;
}

Complex complex_value(const Json& j, const std::string& where) {
  if (j.is_number()) return number(j, where);
  if (!j.is_array() || j.size() != 2) fail(where + ": expected a number or [re, im]");
  return {number(j[0], where), number(j[1], where)};
}

Json complex_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

Generator2 generator2(const Json& j, const std::string& where) {
  check_keys(j, where, {"s11", "s12", "s21", "s22"});
  Generator2 g;
  for (const char* k : {"s11", "s12", "s21", "s22"})
    if (!j.contains(k)) fail(where + ": missing '" + k + "'");
  g.s11 = rate(j.at("s11"), where + ".s11");
  g.s12 = rate(j.at("s12"), where + ".s12");
  g.s21 = rate(j.at("s21"), where + ".s21");
  g.s22 = rate(j.at("s22"), where + ".s22");
  return g;
}

Json generator2_json(const Generator2& g) {
  return {{"s11", rate_json(g.s11)}, {"s12", rate_json(g.s12)}, {"s21", rate_json(g.s21)}, {"s22", rate_json(g.s22)}};
}

std::vector<double> real_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(number(x, where));
  return v;
}

bool valid_target(Model m, const std::string& t, std::size_t n) {
  switch (m) {
    case Model::Epidemic2: return t == "1" || t == "2";
    case Model::EpidemicN: {
      try {
        std::size_t used = 0;
        const int k = std::stoi(t, &used);
        return used == t.size() && k >= 1 && static_cast<std::size_t>(k) <= n;
      } catch (const std::exception&) {
        return false;
      }
    }
    case Model::Coupled4:
    case Model::Quantum2Q:
      try {
        parse_subsystem(t);
        return true;
      } catch (const epitb::Error&) {
        return false;
      }
    case Model::Mapping: return false;
  }
  return false;
}

Event event(const Json& j, const Scenario& s, std::size_t idx) {
  const std::string where = "events[" + std::to_string(idx) + "]";
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) fail(where + ": missing 'type'");
  if (!j.contains("time")) fail(where + ": missing 'time'");
  Event e;
  e.time = number(j.at("time"), where + ".time");
  const std::string type = j.at("type").get<std::string>();
  const std::size_t dim = s.model == Model::Quantum2Q ? 4 : s.p0.size();
  if (type == "projective") {
    check_keys(j, where, {"type", "time", "target", "party"});
    e.kind = Event::Kind::Projective;
    if (s.model == Model::Mapping) fail(where + ": mapping scenarios take no events");
    if (j.contains("target")) {
      if (!j.at("target").is_string() && !j.at("target").is_number_integer()) fail(where + ".target: expected a label");
      e.target = j.at("target").is_string() ? j.at("target").get<std::string>()
                                            : std::to_string(j.at("target").get<int>());
      if (!valid_target(s.model, *e.target, dim)) fail(where + ".target: invalid '" + *e.target + "'");
      if (s.model == Model::Coupled4 || s.model == Model::Quantum2Q) e.target = to_string(parse_subsystem(*e.target));
    } else {
      if (!s.seed) fail(where + ": sampled measurement needs a 'seed'");
      if (s.model == Model::Coupled4 || s.model == Model::Quantum2Q) {
        if (!j.contains("party") || !j.at("party").is_string()) fail(where + ": sampled measurement needs 'party'");
        std::string p = j.at("party").get<std::string>();
        std::transform(p.begin(), p.end(), p.begin(), ::toupper);
        if (p != "A" && p != "B") fail(where + ".party: expected A or B");
        e.party = p;
      } else if (j.contains("party")) {
        fail(where + ": 'party' only applies to two-qubit models");
      }
    }
  } else if (type == "weak") {
    check_keys(j, where, {"type", "time", "N", "N1", "p_test"});
    e.kind = Event::Kind::Weak;
    if (s.model == Model::Quantum2Q || s.model == Model::Mapping) fail(where + ": weak measurement is classical only");
    if (!j.contains("N") || !j.contains("N1") || !j.contains("p_test")) fail(where + ": needs N, N1 and p_test");
    e.n_total = number(j.at("N"), where + ".N");
    e.n_tested = number(j.at("N1"), where + ".N1");
    e.p_test = real_vector(j.at("p_test"), where + ".p_test");
    if (!(e.n_total > 0.0) || e.n_tested < 0.0 || e.n_tested > e.n_total) fail(where + ": need 0 <= N1 <= N, N > 0");
    if (e.p_test.size() != dim) fail(where + ".p_test: wrong length");
  } else if (type == "aharonov_bohm") {
    check_keys(j, where, {"type", "time", "potential", "delta_l", "e_over_hbar"});
    e.kind = Event::Kind::AharonovBohm;
    if (s.model != Model::Quantum2Q) fail(where + ": aharonov_bohm needs a quantum2q scenario");
    if (!j.contains("potential")) fail(where + ": missing 'potential'");
    const Json& p = j.at("potential");
    check_keys(p, where + ".potential", {"1A", "2A", "1B", "2B"});
    e.potential.a1A = number_or(p, "1A", 0.0, where);
    e.potential.a2A = number_or(p, "2A", 0.0, where);
    e.potential.a1B = number_or(p, "1B", 0.0, where);
    e.potential.a2B = number_or(p, "2B", 0.0, where);
    e.potential.delta_l = number_or(j, "delta_l", 1.0, where);
    e.potential.e_over_hbar = number_or(j, "e_over_hbar", 1.0, where);
  } else {
    fail(where + ": unknown event type '" + type + "'");
  }
  return e;
}

Json event_json(const Event& e) {
  Json j;
  j["time"] = e.time;
  switch (e.kind) {
    case Event::Kind::Projective:
      j["type"] = "projective";
      if (e.target) j["target"] = *e.target;
      if (e.party) j["party"] = *e.party;
      break;
    case Event::Kind::Weak:
      j["type"] = "weak";
      j["N"] = e.n_total;
      j["N1"] = e.n_tested;
      j["p_test"] = e.p_test;
      break;
    case Event::Kind::AharonovBohm:
      j["type"] = "aharonov_bohm";
      j["potential"] = {{"1A", e.potential.a1A}, {"2A", e.potential.a2A}, {"1B", e.potential.a1B},
                        {"2B", e.potential.a2B}};
      j["delta_l"] = e.potential.delta_l;
      j["e_over_hbar"] = e.potential.e_over_hbar;
      break;
  }
  return j;
}

TBParams hamiltonian(const Json& j) {
  const std::string w = "hamiltonian";
  check_keys(j, w, {"ep1A", "ep2A", "ep1B", "ep2B", "tA", "tB", "tA_12", "tA_21", "tB_12", "tB_21", "ec11", "ec12",
                    "ec21", "ec22", "hermitian"});
  TBParams p;
  auto cx = [&](const char* k, Complex d) { return j.contains(k) ? complex_value(j.at(k), w + "." + k) : d; };
  p.ep1A = cx("ep1A", 0.0);
  p.ep2A = cx("ep2A", 0.0);
  p.ep1B = cx("ep1B", 0.0);
  p.ep2B = cx("ep2B", 0.0);
  if (j.contains("tA")) {
    if (j.contains("tA_12") || j.contains("tA_21")) fail(w + ": give tA or tA_12/tA_21, not both");
    TBParams::set_hopping(p.tA_12, p.tA_21, cx("tA", 0.0));
  } else {
    p.tA_12 = cx("tA_12", 0.0);
    p.tA_21 = cx("tA_21", 0.0);
  }
  if (j.contains("tB")) {
    if (j.contains("tB_12") || j.contains("tB_21")) fail(w + ": give tB or tB_12/tB_21, not both");
    TBParams::set_hopping(p.tB_12, p.tB_21, cx("tB", 0.0));
  } else {
    p.tB_12 = cx("tB_12", 0.0);
    p.tB_21 = cx("tB_21", 0.0);
  }
  p.ec11 = number_or(j, "ec11", 0.0, w);
  p.ec12 = number_or(j, "ec12", 0.0, w);
  p.ec21 = number_or(j, "ec21", 0.0, w);
  p.ec22 = number_or(j, "ec22", 0.0, w);
  if (j.contains("hermitian")) {
    if (!j.at("hermitian").is_boolean()) fail(w + ".hermitian: expected a boolean");
    p.hermitian = j.at("hermitian").get<bool>();
  }
  try {
    p.validate();
  } catch (const epitb::Error& e) {
    fail(w + ": " + e.what());
  }
  return p;
}

Json hamiltonian_json(const TBParams& p) {
  return {{"ep1A", complex_json(p.ep1A)}, {"ep2A", complex_json(p.ep2A)}, {"ep1B", complex_json(p.ep1B)},
          {"ep2B", complex_json(p.ep2B)}, {"tA_12", complex_json(p.tA_12)}, {"tA_21", complex_json(p.tA_21)},
          {"tB_12", complex_json(p.tB_12)}, {"tB_21", complex_json(p.tB_21)}, {"ec11", p.ec11},
          {"ec12", p.ec12}, {"ec21", p.ec21}, {"ec22", p.ec22}, {"hermitian", p.hermitian}};
}

}  // namespace

Scenario parse_scenario(const Json& j) {
  check_keys(j, "config", {"schema_version", "name", "model", "t0", "t1", "dt", "hbar", "seed", "generator",
                           "hamiltonian", "initial", "events", "outputs"});
  Scenario s;
  if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer())
    fail("config: missing integer 'schema_version'");
  s.schema_version = j.at("schema_version").get<int>();
  if (s.schema_version != kSchemaVersion) fail("config: unsupported schema_version " + std::to_string(s.schema_version));
  if (j.contains("name")) {
    if (!j.at("name").is_string()) fail("config.name: expected a string");
    s.name = j.at("name").get<std::string>();
  }
  if (!j.contains("model") || !j.at("model").is_string()) fail("config: missing 'model'");
  const std::string model = j.at("model").get<std::string>();
  if (model == "epidemic2") s.model = Model::Epidemic2;
  else if (model == "epidemicN") s.model = Model::EpidemicN;
  else if (model == "coupled4") s.model = Model::Coupled4;
  else if (model == "quantum2q") s.model = Model::Quantum2Q;
  else if (model == "mapping") s.model = Model::Mapping;
  else fail("config: unknown model '" + model + "'");

  for (const char* k : {"t0", "t1", "dt"})
    if (!j.contains(k)) fail(std::string("config: missing '") + k + "'");
  s.t0 = number(j.at("t0"), "t0");
  s.t1 = number(j.at("t1"), "t1");
  s.dt = number(j.at("dt"), "dt");
  if (!(s.t0 < s.t1)) fail("config: need t0 < t1");
  if (!(s.dt > 0.0)) fail("config: need dt > 0");
  if ((s.t1 - s.t0) / s.dt > 5e7) fail("config: too many steps");
  s.hbar = number_or(j, "hbar", 1.0, "config");
  if (!(s.hbar > 0.0)) fail("config: need hbar > 0");
  if (j.contains("seed")) {
    const Json& seed = j.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0))
      fail("config.seed: expected a non-negative integer");
    s.seed = seed.get<std::uint64_t>();
  }

  const bool quantum = s.model == Model::Quantum2Q || s.model == Model::Mapping;
  if (quantum) {
    if (j.contains("generator")) fail("config: quantum models take 'hamiltonian', not 'generator'");
    if (!j.contains("hamiltonian")) fail("config: missing 'hamiltonian'");
    s.ham = hamiltonian(j.at("hamiltonian"));
  } else {
    if (j.contains("hamiltonian")) fail("config: classical models take 'generator', not 'hamiltonian'");
    if (!j.contains("generator")) fail("config: missing 'generator'");
    const Json& g = j.at("generator");
    if (s.model == Model::Epidemic2) {
      s.gen2 = generator2(g, "generator");
    } else if (s.model == Model::EpidemicN) {
      check_keys(g, "generator", {"matrix"});
      if (!g.contains("matrix") || !g.at("matrix").is_array()) fail("generator: missing 'matrix'");
      const Json& m = g.at("matrix");
      const std::size_t n = m.size();
      if (n < 1 || n > 16) fail("generator.matrix: dimension must be 1..16");
      for (std::size_t i = 0; i < n; ++i) {
        if (!m[i].is_array() || m[i].size() != n) fail("generator.matrix: must be square");
        std::vector<RateFn> row;
        for (std::size_t k = 0; k < n; ++k)
          row.push_back(rate(m[i][k], "generator.matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        s.genN.push_back(std::move(row));
      }
    } else {
      check_keys(g, "generator", {"a", "b", "cross"});
      if (!g.contains("a") || !g.contains("b")) fail("generator: coupled4 needs 'a' and 'b'");
      s.gen_a = generator2(g.at("a"), "generator.a");
      s.gen_b = generator2(g.at("b"), "generator.b");
      if (g.contains("cross")) {
        const Json& c = g.at("cross");
        check_keys(c, "generator.cross", {"s_1A2B", "s_2A2B", "s_2A1B", "s_1A1B"});
        auto r = [&](const char* k) { return c.contains(k) ? rate(c.at(k), std::string("cross.") + k) : RateFn(0.0); };
        s.cross = {r("s_1A2B"), r("s_2A2B"), r("s_2A1B"), r("s_1A1B")};
      }
    }
  }

  if (!j.contains("initial")) fail("config: missing 'initial'");
  const Json& init = j.at("initial");
  if (quantum) {
    if (!init.is_array() || init.size() != 4) fail("initial: expected 4 amplitudes");
    for (std::size_t k = 0; k < 4; ++k) s.psi0.push_back(complex_value(init[k], "initial"));
    if (!(norm2(s.psi0) > 0.0)) fail("initial: zero state");
  } else {
    s.p0 = real_vector(init, "initial");
    const std::size_t want = s.model == Model::Epidemic2 ? 2 : s.model == Model::Coupled4 ? 4 : s.genN.size();
    if (s.p0.size() != want) fail("initial: expected " + std::to_string(want) + " values");
  }

  if (j.contains("events")) {
    if (!j.at("events").is_array()) fail("events: expected an array");
    for (std::size_t k = 0; k < j.at("events").size(); ++k) s.events.push_back(event(j.at("events")[k], s, k));
  }
  for (std::size_t k = 0; k < s.events.size(); ++k) {
    if (s.events[k].time < s.t0 || s.events[k].time > s.t1) fail("events: time outside [t0, t1]");
    if (k && s.events[k].time < s.events[k - 1].time) fail("events: not sorted by time");
  }

  const auto groups = output_groups(s.model);
  if (j.contains("outputs")) {
    if (!j.at("outputs").is_array()) fail("outputs: expected an array");
    std::set<std::string> want;
    for (const auto& o : j.at("outputs")) {
      if (!o.is_string()) fail("outputs: expected strings");
      const std::string name = o.get<std::string>();
      if (std::find(groups.begin(), groups.end(), name) == groups.end())
        fail("outputs: '" + name + "' not available for " + model);
      want.insert(name);
    }
    for (const auto& g : groups)
      if (want.count(g)) s.outputs.push_back(g);
  } else {
    s.outputs = groups;
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  return parse_scenario(j);
}

Json to_json(const Scenario& s) {
  Json j;
  j["schema_version"] = s.schema_version;
  j["name"] = s.name;
  j["model"] = to_string(s.model);
  j["t0"] = s.t0;
  j["t1"] = s.t1;
  j["dt"] = s.dt;
  j["hbar"] = s.hbar;
  if (s.seed) j["seed"] = *s.seed;
  switch (s.model) {
    case Model::Epidemic2: j["generator"] = generator2_json(s.gen2); break;
    case Model::EpidemicN: {
      Json m = Json::array();
      for (const auto& row : s.genN) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(rate_json(v));
        m.push_back(r);
      }
      j["generator"] = {{"matrix", m}};
      break;
    }
    case Model::Coupled4:
      j["generator"] = {{"a", generator2_json(s.gen_a)},
                        {"b", generator2_json(s.gen_b)},
                        {"cross",
                         {{"s_1A2B", rate_json(s.cross.s_1A2B)},
                          {"s_2A2B", rate_json(s.cross.s_2A2B)},
                          {"s_2A1B", rate_json(s.cross.s_2A1B)},
                          {"s_1A1B", rate_json(s.cross.s_1A1B)}}}};
      break;
    case Model::Quantum2Q:
    case Model::Mapping: j["hamiltonian"] = hamiltonian_json(s.ham); break;
  }
  if (s.model == Model::Quantum2Q || s.model == Model::Mapping) {
    Json init = Json::array();
    for (const auto& z : s.psi0) init.push_back(complex_json(z));
    j["initial"] = init;
  } else {
    j["initial"] = s.p0;
  }
  Json ev = Json::array();
  for (const auto& e : s.events) ev.push_back(event_json(e));
  j["events"] = ev;
  j["outputs"] = s.outputs;
  return j;
}

std::string canonical_text(const Scenario& s) { return to_json(s).dump(); }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 15];
  }
  return out;
}

std::string digest(const Scenario& s) { return "sha256:" + sha256_hex(canonical_text(s)); }

}  // namespace epitb::app
