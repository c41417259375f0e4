// Copyright 2026 The trafficqaoa Authors
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

#include "trafficqaoa/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace trafficqaoa {

void QuadraticForm::add_linear(std::size_t u, double value) {
  if (u >= n_vars) throw std::out_of_range("linear term index out of range");
  linear[u] += value;
}

void QuadraticForm::add_quadratic(std::size_t u, std::size_t v, double value) {
  if (u >= n_vars || v >= n_vars) throw std::out_of_range("quadratic term index out of range");
  if (u == v) {
    linear[u] += value;
    return;
  }
  quadratic[{std::min(u, v), std::max(u, v)}] += value;
}

QuadraticForm& QuadraticForm::operator+=(const QuadraticForm& other) {
  n_vars = std::max(n_vars, other.n_vars);
  for (const auto& [u, a] : other.linear) linear[u] += a;
  for (const auto& [uv, b] : other.quadratic) quadratic[uv] += b;
  constant += other.constant;
  return *this;
}

QuadraticForm QuadraticForm::scaled(double factor) const {
  QuadraticForm out = *this;
  for (auto& [u, a] : out.linear) a *= factor;
  for (auto& [uv, b] : out.quadratic) b *= factor;
  out.constant *= factor;
  return out;
}

double QuadraticForm::evaluate(Bitstring state) const {
  double value = constant;
  for (const auto& [u, a] : linear)
    if ((state >> u) & 1U) value += a;
  for (const auto& [uv, b] : quadratic)
    if (((state >> uv.first) & 1U) && ((state >> uv.second) & 1U)) value += b;
  return value;
}

double QuadraticForm::evaluate(std::span<const std::uint8_t> bits) const {
  if (bits.size() != n_vars)
    throw std::invalid_argument("assignment length " + std::to_string(bits.size()) +
                                " does not match " + std::to_string(n_vars) + " variables");
  double value = constant;
  for (const auto& [u, a] : linear)
    if (bits[u]) value += a;
  for (const auto& [uv, b] : quadratic)
    if (bits[uv.first] && bits[uv.second]) value += b;
  return value;
}

std::size_t QuboModel::index_of(std::size_t car, std::size_t route) const {
  if (car >= routes_per_car.size() || route >= routes_per_car[car])
    throw std::out_of_range("no variable for this (car, route)");
  std::size_t u = 0;
  for (std::size_t i = 0; i < car; ++i) u += routes_per_car[i];
  return u + route;
}

std::vector<VariableLabel> variable_labels(const TrafficInstance& inst) {
  std::vector<VariableLabel> labels;
  for (std::size_t i = 0; i < inst.cars.size(); ++i)
    for (std::size_t j = 0; j < inst.cars[i].size(); ++j) labels.push_back({i, j});
  return labels;
}

namespace {

// Keys used by one route, each at most once.
std::set<CongestionKey> route_keys(const TrafficInstance& inst, const Route& r) {
  std::set<CongestionKey> keys;
  for (std::size_t s = 0; s < r.segments.size(); ++s) {
    int dir = 0;
    if (inst.directed_congestion) {
      const Segment& seg = inst.network.segment(r.segments[s]);
      dir = (seg.u == r.nodes[s]) ? 1 : -1;
    }
    keys.insert({r.segments[s], dir});
  }
  return keys;
}

}  // namespace

std::vector<CongestionKey> congestion_keys(const TrafficInstance& inst) {
  std::set<CongestionKey> keys;
  for (const auto& routes : inst.cars)
    for (const auto& r : routes) {
      auto k = route_keys(inst, r);
      keys.insert(k.begin(), k.end());
    }
  return {keys.begin(), keys.end()};
}

QuadraticForm segment_cost_terms(const TrafficInstance& inst, const CongestionKey& key) {
  QuadraticForm form;
  form.n_vars = inst.num_variables();
  const double d = inst.network.segment(key.segment).weight;
  std::vector<std::size_t> users;
  std::size_t u = 0;
  for (const auto& routes : inst.cars)
    for (const auto& r : routes) {
      if (route_keys(inst, r).count(key)) users.push_back(u);
      ++u;
    }
  for (std::size_t a = 0; a < users.size(); ++a) {
    form.add_linear(users[a], d);
    for (std::size_t b = a + 1; b < users.size(); ++b)
      form.add_quadratic(users[a], users[b], 2.0 * d);
  }
  return form;
}

QuadraticForm segment_cost_terms(const TrafficInstance& inst, SegmentId segment) {
  if (inst.directed_congestion)
    throw std::invalid_argument("directed instances need a directed congestion key");
  return segment_cost_terms(inst, CongestionKey{segment, 0});
}

QuadraticForm congestion_terms(const TrafficInstance& inst) {
  QuadraticForm total;
  total.n_vars = inst.num_variables();
  for (const auto& key : congestion_keys(inst)) total += segment_cost_terms(inst, key);
  return total;
}

QuadraticForm constraint_terms(const TrafficInstance& inst) {
  QuadraticForm form;
  form.n_vars = inst.num_variables();
  std::size_t base = 0;
  for (const auto& routes : inst.cars) {
    const std::size_t m = routes.size();
    form.constant += 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      form.add_linear(base + j, -1.0);
      for (std::size_t k = j + 1; k < m; ++k) form.add_quadratic(base + j, base + k, 2.0);
    }
    base += m;
  }
  return form;
}

LambdaCalibration calibrate_lambda(const QuadraticForm& congestion,
                                   const QuadraticForm& constraint,
                                   std::span<const std::size_t> routes_per_car,
                                   LambdaMode mode) {
  for (const auto& [u, a] : congestion.linear)
    if (a < 0) throw std::invalid_argument("congestion form has a negative coefficient");
  for (const auto& [uv, b] : congestion.quadratic)
    if (b < 0) throw std::invalid_argument("congestion form has a negative coefficient");

  const std::size_t n = congestion.n_vars;
  const Bitstring all_ones = (n >= 64) ? ~Bitstring{0} : ((Bitstring{1} << n) - 1);

  // Nonnegative coefficients: A is minimised by all-zeros, maximised by all-ones.
  LambdaCalibration out;
  out.range_a = congestion.evaluate(all_ones) - congestion.evaluate(Bitstring{0});

  if (mode == LambdaMode::TrueRange) {
    // Per car, (1 - k)^2 over k chosen routes: minimum 0 (k = 1), maximum
    // max(1, (m - 1)^2) at k = 0 or k = m.
    double max_b = 0.0;
    for (std::size_t m : routes_per_car) {
      const double dm = static_cast<double>(m);
      max_b += std::max(1.0, (dm - 1.0) * (dm - 1.0));
    }
    out.range_b = max_b;
  } else {
    out.range_b = constraint.evaluate(all_ones) - constraint.evaluate(Bitstring{0});
  }

  if (!(out.range_b > 0.0) || !std::isfinite(out.range_b)) {
    out.lambda = 1.0;
    out.warning = "constraint range is " + std::to_string(out.range_b) +
                  "; penalty weight defaults to 1";
    return out;
  }
  out.lambda = out.range_a / out.range_b;
  if (!(out.lambda > 0.0)) {
    out.lambda = 1.0;
    out.warning = "congestion range is not positive; penalty weight defaults to 1";
  }
  return out;
}

QuboModel build_qubo(const TrafficInstance& inst, LambdaMode mode) {
  QuboModel q;
  q.labels = variable_labels(inst);
  for (const auto& routes : inst.cars) {
    if (routes.empty()) throw std::invalid_argument("every car needs at least one route");
    q.routes_per_car.push_back(routes.size());
  }
  q.congestion = congestion_terms(inst);
  q.constraint = constraint_terms(inst);
  auto cal = calibrate_lambda(q.congestion, q.constraint, q.routes_per_car, mode);
  q.lambda = cal.lambda;
  q.lambda_warning = cal.warning;
  q.cost = q.congestion;
  q.cost += q.constraint.scaled(q.lambda);
  return q;
}

}  // namespace trafficqaoa
