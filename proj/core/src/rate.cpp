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

#include "epitb/rate.hpp"

#include <algorithm>
#include <cmath>

#include "epitb/errors.hpp"

namespace epitb {

RateFn::RateFn(double value) : value_(value) {
  if (!std::isfinite(value)) throw ValidationError("rate must be finite");
}

RateFn RateFn::table(std::vector<std::pair<double, double>> nodes) {
  if (nodes.empty()) throw ValidationError("rate table needs at least one node");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (!std::isfinite(nodes[k].first) || !std::isfinite(nodes[k].second))
      throw ValidationError("rate table entries must be finite");
    if (k > 0 && !(nodes[k].first > nodes[k - 1].first))
      throw ValidationError("rate table times must be strictly increasing");
  }
  RateFn r;
  if (nodes.size() == 1) {
    r.value_ = nodes.front().second;
    return r;
  }
  r.value_ = nodes.front().second;
  r.nodes_ = std::move(nodes);
  r.cumulative_.assign(r.nodes_.size(), 0.0);
  for (std::size_t k = 1; k < r.nodes_.size(); ++k) {
    const auto& [ta, va] = r.nodes_[k - 1];
    const auto& [tb, vb] = r.nodes_[k];
    r.cumulative_[k] = r.cumulative_[k - 1] + 0.5 * (va + vb) * (tb - ta);
  }
  return r;
}

double RateFn::operator()(double t) const {
  if (nodes_.empty()) return value_;
  if (t <= nodes_.front().first) return nodes_.front().second;
  if (t >= nodes_.back().first) return nodes_.back().second;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                             [](double x, const std::pair<double, double>& n) { return x < n.first; });
  const auto& [tb, vb] = *it;
  const auto& [ta, va] = *(it - 1);
  return va + (vb - va) * (t - ta) / (tb - ta);
}

double RateFn::antiderivative(double t) const {
  const double t_first = nodes_.front().first;
  const double t_last = nodes_.back().first;
  if (t <= t_first) return (t - t_first) * nodes_.front().second;
  if (t >= t_last) return cumulative_.back() + (t - t_last) * nodes_.back().second;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                             [](double x, const std::pair<double, double>& n) { return x < n.first; });
  const std::size_t k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  const auto& [ta, va] = nodes_[k];
  return cumulative_[k] + 0.5 * (va + (*this)(t)) * (t - ta);
}

double RateFn::integral(double t0, double t) const {
  if (nodes_.empty()) return value_ * (t - t0);
  return antiderivative(t) - antiderivative(t0);
}

RateFn RateFn::rescaled(double c) const {
  if (!(c > 0.0)) throw ValidationError("rescale factor must be positive");
  if (nodes_.empty()) return RateFn(c * value_);
  std::vector<std::pair<double, double>> n;
  n.reserve(nodes_.size());
  for (const auto& [t, v] : nodes_) n.emplace_back(t / c, c * v);
  return table(std::move(n));
}

}  // namespace epitb
