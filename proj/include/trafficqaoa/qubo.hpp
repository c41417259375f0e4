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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trafficqaoa/common.hpp"
#include "trafficqaoa/roadnet.hpp"

namespace trafficqaoa {

using VarPair = std::pair<std::size_t, std::size_t>;  // always first < second

// Sparse quadratic pseudo-Boolean polynomial over n binary variables.
struct QuadraticForm {
  std::size_t n_vars = 0;
  std::map<std::size_t, double> linear;
  std::map<VarPair, double> quadratic;
  double constant = 0.0;

  void add_linear(std::size_t u, double value);
  // Adds value * q_u * q_v; u == v folds into the linear term (q^2 = q).
  void add_quadratic(std::size_t u, std::size_t v, double value);
  QuadraticForm& operator+=(const QuadraticForm& other);
  QuadraticForm scaled(double factor) const;

  double evaluate(Bitstring state) const;
  // Throws std::invalid_argument when bits.size() != n_vars.
  double evaluate(std::span<const std::uint8_t> bits) const;
};

// Congestion key for one segment. direction is 0 for undirected counting and
// +1/-1 for traversal along/against (u -> v) when counting directionally.
struct CongestionKey {
  SegmentId segment;
  int direction = 0;
  auto operator<=>(const CongestionKey&) const = default;
};

struct VariableLabel {
  std::size_t car;
  std::size_t route;
};

enum class LambdaMode {
  TrueRange,     // exact ranges of A and B
  CornerRange,  // A(1..1)-A(0..0) over B(1..1)-B(0..0)
};

struct LambdaCalibration {
  double lambda = 1.0;
  double range_a = 0.0;
  double range_b = 0.0;
  std::optional<std::string> warning;
};

struct QuboModel {
  QuadraticForm congestion;  // A
  QuadraticForm constraint;  // B
  QuadraticForm cost;        // C = A + lambda * B
  double lambda = 1.0;
  std::optional<std::string> lambda_warning;
  std::vector<VariableLabel> labels;  // u -> (car, route)
  std::vector<std::size_t> routes_per_car;

  std::size_t n_vars() const { return cost.n_vars; }
  std::size_t n_cars() const { return routes_per_car.size(); }
  std::size_t index_of(std::size_t car, std::size_t route) const;

  double evaluate(Bitstring state) const { return cost.evaluate(state); }
  double evaluate(std::span<const std::uint8_t> bits) const { return cost.evaluate(bits); }
};

// Variable index u for (car i, route j): j runs fastest, then i.
std::vector<VariableLabel> variable_labels(const TrafficInstance& inst);

std::vector<CongestionKey> congestion_keys(const TrafficInstance& inst);

// d_k * (sum of q_ij over routes using the key)^2, expanded with q^2 = q.
QuadraticForm segment_cost_terms(const TrafficInstance& inst, const CongestionKey& key);
// Convenience for undirected counting.
QuadraticForm segment_cost_terms(const TrafficInstance& inst, SegmentId segment);

QuadraticForm congestion_terms(const TrafficInstance& inst);
// sum_i (1 - sum_j q_ij)^2, expanded.
QuadraticForm constraint_terms(const TrafficInstance& inst);

// Penalty weight that equates the value range of lambda*B with that of A.
// Falls back to lambda = 1 with a warning if the B range is not positive.
LambdaCalibration calibrate_lambda(const QuadraticForm& congestion,
                                   const QuadraticForm& constraint,
                                   std::span<const std::size_t> routes_per_car,
                                   LambdaMode mode = LambdaMode::TrueRange);

QuboModel build_qubo(const TrafficInstance& inst, LambdaMode mode = LambdaMode::TrueRange);

}  // namespace trafficqaoa
