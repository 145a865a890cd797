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

#include <filesystem>
#include <string>
#include <vector>

#include "app/scenario.hpp"
#include "app/series.hpp"

namespace epitb::app {

struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=", ">" or "info"
  double tolerance = 0.0;
  bool pass = true;
  int criterion = 0;     // acceptance criterion number, 0 for scenario checks
  std::string detail;
};

Check check_le(std::string name, double value, double tol, int criterion = 0);
Check check_gt(std::string name, double value, double bound, int criterion = 0);
Check check_info(std::string name, double value, int criterion = 0);

struct RunReport {
  std::string scenario;
  std::string model;
  std::string digest;
  std::string config;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool passed() const;
  /// Deterministic text; no timings.
  std::string render() const;
};

struct RunResult {
  Series series;
  RunReport report;
};

/// Runs the scenario. Mapping scenarios produce the certificate report.
RunResult run_scenario(const Scenario& s);

/// Certificate mode; accepts quantum2q and mapping scenarios without events.
RunResult run_mapping(const Scenario& s);

/// series.csv, series.csv.meta.json and report.txt under dir.
void write_outputs(const RunResult& r, const std::filesystem::path& dir);

}  // namespace epitb::app
