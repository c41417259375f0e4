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

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace trafficqaoa {

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  static Bounds unbounded(std::size_t n) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {std::vector<double>(n, -inf), std::vector<double>(n, inf)};
  }
};

struct OptimizerOptions {
  int max_iterations = 150;
  double gradient_tolerance = 1e-8;   // on the projected gradient, inf-norm
  double function_tolerance = 2.2e-9; // relative decrease per iteration
  double fd_step = 1e-6;
  int history = 10;
  int max_line_search = 40;
};

struct Iterate {
  std::vector<double> x;
  double value;
};

struct MinimizeResult {
  std::vector<Iterate> iterates;  // iterates[0] is the (projected) start
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
  std::string stop_reason;

  const Iterate& final() const { return iterates.back(); }
};

// Projected limited-memory BFGS with finite-difference gradients and an
// Armijo backtracking search along the projected path. Every accepted step
// strictly decreases the objective. Throws std::runtime_error if the
// objective returns a non-finite value.
MinimizeResult minimize_box(const std::function<double(std::span<const double>)>& f,
                            std::vector<double> x0, const Bounds& bounds,
                            const OptimizerOptions& options = {});

}  // namespace trafficqaoa
