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

#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "app/runner.hpp"
#include "app/scenario.hpp"
#include "app/verify.hpp"
#include "app/version.hpp"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kBadInput = 2, kNumeric = 3 };

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const epitb::app::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const epitb::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kBadInput;
  } catch (const epitb::DimensionError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kBadInput;
  } catch (const epitb::Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
}

int run(const std::string& config, const std::string& out_dir, bool certificate) {
  using namespace epitb::app;
  const auto start = std::chrono::steady_clock::now();
  const Scenario s = load_scenario(config);
  const RunResult r = certificate ? run_mapping(s) : run_scenario(s);
  write_outputs(r, out_dir);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << r.report.render() << "wall_time_s: " << secs << '\n';
  return r.report.passed() ? kOk : kCheckFailed;
}

int verify(const std::string& filter) {
  using namespace epitb::app;
  const auto& all = criteria();
  if (!filter.empty() && std::none_of(all.begin(), all.end(), [&](const Criterion& c) { return matches(c, filter); })) {
    std::cerr << "error: no check matches filter '" << filter << "'\n";
    return kBadInput;
  }
  const auto start = std::chrono::steady_clock::now();
  const auto checks = run_verify_suite(filter);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << render_table(checks);
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
  std::cout << checks.size() - failed << "/" << checks.size() << " checks passed in " << secs << " s\n";
  return failed ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical and quantum two-qubit dynamics with certified mappings"};
  app.set_version_flag("--version", epitb::app::kVersion);
  app.require_subcommand(1);

  std::string config, out_dir, filter;
  auto* sim = app.add_subcommand("simulate", "Run a scenario and write series.csv and report.txt");
  sim->add_option("--config", config, "Scenario JSON")->required();
  sim->add_option("--out-dir", out_dir, "Output directory")->required();
  auto* map = app.add_subcommand("map", "Run the quantum-to-classical mapping certificate");
  map->add_option("--config", config, "Scenario JSON")->required();
  map->add_option("--out-dir", out_dir, "Output directory")->required();
  auto* ver = app.add_subcommand("verify", "Run the acceptance checks");
  ver->add_option("--filter", filter, "Case-insensitive substring of a check or criterion name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  if (*sim) return guarded([&] { return run(config, out_dir, false); });
  if (*map) return guarded([&] { return run(config, out_dir, true); });
  return guarded([&] { return verify(filter); });
}
