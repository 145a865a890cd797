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

#include <functional>
#include <string>
#include <vector>

#include "app/runner.hpp"

namespace epitb::app {

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<std::string> checks;  // names the run function reports
  std::function<std::vector<Check>()> run;
};

const std::vector<Criterion>& criteria();

/// True if the case-insensitive pattern occurs in the title or a check name.
bool matches(const Criterion& c, const std::string& pattern);

/// Runs every criterion with a match and keeps only the matching checks
/// (all of them when the title matches). Empty pattern selects everything.
std::vector<Check> run_verify_suite(const std::string& pattern);

std::string render_table(const std::vector<Check>& checks);

}  // namespace epitb::app
