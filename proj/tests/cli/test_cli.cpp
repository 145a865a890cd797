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

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app/runner.hpp"
#include "app/scenario.hpp"
#include "app/series.hpp"
#include "app/verify.hpp"

using namespace epitb::app;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = EPITB_SCENARIO_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("epitb_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(EPITB_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

Json base_epidemic2() {
  return Json::parse(R"({"schema_version": 1, "model": "epidemic2", "t0": 0, "t1": 1, "dt": 0.01,
    "generator": {"s11": -0.3, "s12": 0.2, "s21": 0.3, "s22": -0.2}, "initial": [0.7, 0.3]})");
}

}  // namespace

TEST_CASE("csv formatting") {
  Series s{{"t", "x"}, {{0.0, 0.1}, {0.5, 1.0 / 3.0}, {1.0, -2.5e-300}}};
  const std::string text = render_csv(s);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  CHECK(text.rfind("t,x\r\n", 0) == 0);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  const Series back = parse_csv(text);
  CHECK(back.columns == s.columns);
  REQUIRE(back.rows.size() == 3);
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t c = 0; c < 2; ++c) CHECK(back.rows[m][c] == s.rows[m][c]);

  CHECK(render_csv(Series{{"t", "p1"}, {}}) == "t,p1\r\n");
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(parse_csv("\"a,b\",c\r\n1,2\r\n").columns == std::vector<std::string>{"a,b", "c"});
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_short(0.1) == "0.1");

  const fs::path dir = scratch("csv");
  emit_series(s, dir / "s.csv", "sha256:x");
  CHECK(slurp(dir / "s.csv") == text);
  const Json meta = Json::parse(slurp(dir / "s.csv.meta.json"));
  CHECK(meta.at("digest") == "sha256:x");
  CHECK(meta.at("rows") == 3);
  CHECK_THROWS(emit_series(s, dir / "missing" / "s.csv", "d"));
}

TEST_CASE("scenario validation") {
  CHECK_NOTHROW(parse_scenario(base_epidemic2()));
  auto broken = [](auto edit) {
    Json j = base_epidemic2();
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) { j.erase("schema_version"); })), ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) { j["schema_version"] = 7; })), ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) { j["t1"] = 0.0; })), ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) { j["dt"] = -1.0; })), ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) { j["model"] = "epidemic3"; })), ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) { j["typo"] = 1; })), ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) { j["initial"] = {1.0}; })), ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) { j["generator"]["s11"] = {{1.0, 0.0}, {0.5, 1.0}}; })),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) { j["outputs"] = {"entropy"}; })), ConfigError);
  CHECK_THROWS_AS(
      parse_scenario(broken([](Json& j) { j["events"] = Json::parse(R"([{"time": 0.5, "type": "projective"}])"); })),
      ConfigError);
  CHECK_NOTHROW(parse_scenario(broken([](Json& j) {
    j["seed"] = 4;
    j["events"] = Json::parse(R"([{"time": 0.5, "type": "projective"}])");
  })));
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) {
                    j["events"] = Json::parse(
                        R"([{"time": 0.6, "type": "projective", "target": 1}, {"time": 0.5, "type": "projective", "target": 2}])");
                  })),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) {
                    j["events"] = Json::parse(R"([{"time": 2.0, "type": "projective", "target": 1}])");
                  })),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) {
                    j["events"] = Json::parse(R"([{"time": 0.5, "type": "weak", "N": 10, "N1": 20, "p_test": [1, 0]}])");
                  })),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario(broken([](Json& j) {
                    j["events"] = Json::parse(R"([{"time": 0.5, "type": "aharonov_bohm", "potential": {}}])");
                  })),
                  ConfigError);

  Json q = Json::parse(slurp(kScenarios / "quantum2q_entropy.json"));
  q["hamiltonian"]["ep1A"] = {1.0, -0.1};
  CHECK_THROWS_AS(parse_scenario(q), ConfigError);
  q["hamiltonian"]["hermitian"] = false;
  CHECK_NOTHROW(parse_scenario(q));
  q["hamiltonian"]["tA_12"] = 0.3;
  CHECK_THROWS_AS(parse_scenario(q), ConfigError);
}

TEST_CASE("canonical config round trip") {
  for (const auto& entry : fs::directory_iterator(kScenarios)) {
    CAPTURE(entry.path().string());
    const Scenario s = load_scenario(entry.path().string());
    const std::string canon = canonical_text(s);
    const Scenario again = parse_scenario(Json::parse(canon));
    CHECK(canonical_text(again) == canon);
    CHECK(digest(again) == digest(s));
  }
  Json a = base_epidemic2(), b = base_epidemic2();
  b["outputs"] = {"ratio", "probabilities", "ensemble"};
  CHECK(digest(parse_scenario(a)) == digest(parse_scenario(b)));
  b["initial"] = {0.6, 0.4};
  CHECK(digest(parse_scenario(a)) != digest(parse_scenario(b)));
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("scenario outputs") {
  const RunResult e2 = run_scenario(load_scenario((kScenarios / "epidemic2_constant.json").string()));
  CHECK(e2.series.columns == std::vector<std::string>{"t", "p1", "p2", "pI", "pII", "r12"});
  CHECK(e2.series.rows.size() == 2001);
  CHECK(e2.report.passed());

  const RunResult q = run_scenario(load_scenario((kScenarios / "quantum2q_entropy.json").string()));
  CHECK(q.series.columns == std::vector<std::string>{"t", "pI", "pII", "pIII", "pIV", "SA", "SB"});
  double worst = 0.0;
  for (const auto& row : q.series.rows) worst = std::max(worst, std::abs(row[5] - row[6]));
  CHECK(worst <= 1e-9);
  CHECK(q.report.render().find("entropy.symmetry") != std::string::npos);
  CHECK(q.report.passed());

  const RunResult m = run_scenario(load_scenario((kScenarios / "mapping_certificate.json").string()));
  const auto it = std::find_if(m.report.checks.begin(), m.report.checks.end(),
                               [](const Check& c) { return c.name == "mapping.max_residual"; });
  REQUIRE(it != m.report.checks.end());
  CHECK(it->value <= 1e-6);
  CHECK(m.series.columns.size() == 13);

  // Events emit a row before and after.
  const RunResult ev = run_scenario(load_scenario((kScenarios / "coupled4_witness.json").string()));
  std::size_t at_event = 0;
  for (const auto& row : ev.series.rows) at_event += row[0] == 1.0;
  CHECK(at_event == 2);
  const auto post = std::find_if(ev.series.rows.begin(), ev.series.rows.end(), [](const auto& r) { return r[0] == 1.0; }) + 1;
  CHECK((*post)[1] == 1.0);
  CHECK((*post)[2] == 0.0);

  const RunResult d = run_scenario(load_scenario((kScenarios / "quantum2q_dissipative.json").string()));
  bool falling = true;
  for (std::size_t k = 1; k < d.series.rows.size(); ++k) falling = falling && d.series.rows[k].back() <= d.series.rows[k - 1].back();
  CHECK(falling);
}

TEST_CASE("verify filter") {
  std::size_t selected = 0;
  for (const auto& c : criteria()) selected += matches(c, "RaBi");
  CHECK(selected == 1);
  const auto rabi = run_verify_suite("rabi");
  REQUIRE(rabi.size() == 1);
  CHECK(rabi[0].name == "c03.rabi.ratio_slope");
  CHECK(rabi[0].pass);
  const auto ab = run_verify_suite("aharonov");
  CHECK(ab.size() == 4);
  CHECK(run_verify_suite("no-such-check").empty());
  CHECK(run_verify_suite("c09.mapping.split").size() == 1);
}

TEST_CASE("command line exit codes and determinism") {
  const fs::path dir = scratch("exit");
  const fs::path log = dir / "log.txt";
  const std::string cfg = (kScenarios / "epidemic2_events.json").string();

  CHECK(cli("simulate --config " + cfg + " --out-dir " + (dir / "a").string(), log) == 0);
  CHECK(cli("simulate --config " + cfg + " --out-dir " + (dir / "b").string(), log) == 0);
  for (const char* f : {"series.csv", "series.csv.meta.json", "report.txt"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  CHECK(slurp(dir / "a" / "report.txt").find("wall") == std::string::npos);

  CHECK(cli("map --config " + (kScenarios / "mapping_certificate.json").string() + " --out-dir " +
                (dir / "m").string(),
            log) == 0);
  CHECK(slurp(dir / "m" / "report.txt").find("mapping.max_residual") != std::string::npos);
  CHECK(cli("map --config " + cfg + " --out-dir " + (dir / "m2").string(), log) == 2);

  CHECK(cli("verify --filter rabi", log) == 0);
  CHECK(slurp(log).find("c03.rabi.ratio_slope") != std::string::npos);
  CHECK(slurp(log).find("c01") == std::string::npos);
  CHECK(cli("verify --filter zzz", log) == 2);
  CHECK(slurp(log).find("no check matches") != std::string::npos);

  CHECK(cli("simulate --config " + (dir / "nope.json").string() + " --out-dir " + dir.string(), log) == 2);
  CHECK(cli("simulate --config " + write_config(dir, "{not json").string() + " --out-dir " + dir.string(), log) == 2);
  CHECK(cli("simulate --config " + cfg, log) == 2);
  CHECK(cli("frobnicate", log) == 2);

  Json unseeded = base_epidemic2();
  unseeded["events"] = Json::parse(R"([{"time": 0.5, "type": "projective"}])");
  CHECK(cli("simulate --config " + write_config(dir, unseeded.dump()).string() + " --out-dir " + dir.string(), log) ==
        2);

  Json blowup = base_epidemic2();
  blowup["generator"]["s11"] = 1e300;
  CHECK(cli("simulate --config " + write_config(dir, blowup.dump()).string() + " --out-dir " + dir.string(), log) ==
        3);

  Json coarse = base_epidemic2();
  coarse["dt"] = 0.5;
  coarse["t1"] = 40.0;
  coarse["generator"]["s11"] = 1.5;
  CHECK(cli("simulate --config " + write_config(dir, coarse.dump()).string() + " --out-dir " + dir.string(), log) ==
        1);
  CHECK(slurp(dir / "report.txt").find("FAIL") != std::string::npos);
}
