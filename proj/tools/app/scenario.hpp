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
#include <optional>
#include <string>
#include <vector>

#include "epitb/coupled.hpp"
#include "epitb/epidemic.hpp"
#include "epitb/mapping.hpp"
#include "epitb/quantum.hpp"
#include "json.hpp"

namespace epitb::app {

using Json = nlohmann::json;

enum class Model { Epidemic2, EpidemicN, Coupled4, Quantum2Q, Mapping };

std::string to_string(Model m);

struct Event {
  enum class Kind { Projective, Weak, AharonovBohm };
  double time = 0.0;
  Kind kind = Kind::Projective;
  std::optional<std::string> target;  // "1", "2", "1A", ... ; absent means sample
  std::optional<std::string> party;   // "A" or "B" when sampling a coupled measurement
  double n_total = 0.0;
  double n_tested = 0.0;
  std::vector<double> p_test;
  VectorPotential potential;
};

struct Scenario {
  int schema_version = 1;
  std::string name;
  Model model = Model::Epidemic2;
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = 1e-3;
  double hbar = 1.0;
  std::optional<std::uint64_t> seed;

  Generator2 gen2;                            // epidemic2
  std::vector<std::vector<RateFn>> genN;      // epidemicN
  Generator2 gen_a, gen_b;                    // coupled4
  CrossRates cross;
  TBParams ham;                               // quantum2q, mapping

  std::vector<double> p0;
  ComplexVector psi0;
  std::vector<Event> events;
  std::vector<std::string> outputs;
};

/// Config error; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scenario parse_scenario(const Json& j);
Scenario load_scenario(const std::string& path);
Json to_json(const Scenario& s);

/// Canonical config text: sorted keys, defaults filled, no whitespace.
std::string canonical_text(const Scenario& s);
std::string sha256_hex(const std::string& data);
std::string digest(const Scenario& s);

/// Series groups a model can emit, in output order.
std::vector<std::string> output_groups(Model m);

}  // namespace epitb::app
