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

#include <utility>
#include <vector>

namespace epitb {

/// A scalar rate s(t): either a constant or a piecewise-linear table that is
/// held constant outside its first and last node.
class RateFn {
 public:
  RateFn(double value = 0.0);  // NOLINT(google-explicit-constructor)

  static RateFn table(std::vector<std::pair<double, double>> nodes);

  double operator()(double t) const;
  /// Exact definite integral over [t0, t].
  double integral(double t0, double t) const;

  bool is_constant() const noexcept { return nodes_.empty(); }
  double constant_value() const noexcept { return value_; }
  const std::vector<std::pair<double, double>>& nodes() const noexcept { return nodes_; }

  /// c·s(c·t); used for time-rescaled families.
  RateFn rescaled(double c) const;

 private:
  double antiderivative(double t) const;

  double value_ = 0.0;
  std::vector<std::pair<double, double>> nodes_;
  std::vector<double> cumulative_;
};

}  // namespace epitb
