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

#include "trafficqaoa/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace trafficqaoa {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Pair {
  std::vector<double> s, y;
  double rho;
};

}  // namespace

MinimizeResult minimize_box(const std::function<double(std::span<const double>)>& f,
                            std::vector<double> x, const Bounds& bounds,
                            const OptimizerOptions& options) {
  const std::size_t n = x.size();
  if (bounds.lower.size() != n || bounds.upper.size() != n)
    throw std::invalid_argument("bounds do not match the parameter count");
  if (options.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  for (std::size_t i = 0; i < n; ++i) {
    if (bounds.lower[i] > bounds.upper[i]) throw std::invalid_argument("empty box");
    x[i] = std::clamp(x[i], bounds.lower[i], bounds.upper[i]);
  }

  MinimizeResult res;
  auto eval = [&](std::span<const double> p) {
    ++res.evaluations;
    const double v = f(p);
    if (!std::isfinite(v)) throw std::runtime_error("objective returned a non-finite value");
    return v;
  };
  auto grad = [&](const std::vector<double>& p) {
    std::vector<double> g(n), probe = p;
    const double h = options.fd_step;
    for (std::size_t i = 0; i < n; ++i) {
      probe[i] = p[i] + h;
      const double up = eval(probe);
      probe[i] = p[i] - h;
      const double down = eval(probe);
      probe[i] = p[i];
      g[i] = (up - down) / (2.0 * h);
    }
    return g;
  };
  auto project = [&](std::vector<double>& p) {
    for (std::size_t i = 0; i < n; ++i) p[i] = std::clamp(p[i], bounds.lower[i], bounds.upper[i]);
  };
  // Variables pinned at a bound with the gradient pushing outwards.
  auto active = [&](const std::vector<double>& p, const std::vector<double>& g, std::size_t i) {
    return (p[i] <= bounds.lower[i] && g[i] > 0.0) || (p[i] >= bounds.upper[i] && g[i] < 0.0);
  };

  double fx = eval(x);
  std::vector<double> g = grad(x);
  res.iterates.push_back({x, fx});
  std::deque<Pair> memory;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double pg_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (!active(x, g, i)) pg_norm = std::max(pg_norm, std::abs(g[i]));
    if (pg_norm <= options.gradient_tolerance) {
      res.converged = true;
      res.stop_reason = "projected gradient below tolerance";
      break;
    }

    // Two-loop recursion on the free subspace.
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = active(x, g, i) ? 0.0 : g[i];
    std::vector<double> alpha(memory.size());
    for (std::size_t k = memory.size(); k-- > 0;) {
      alpha[k] = memory[k].rho * dot(memory[k].s, q);
      for (std::size_t i = 0; i < n; ++i) q[i] -= alpha[k] * memory[k].y[i];
    }
    if (!memory.empty()) {
      const auto& last = memory.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (double& v : q) v *= gamma;
    }
    for (std::size_t k = 0; k < memory.size(); ++k) {
      const double beta = memory[k].rho * dot(memory[k].y, q);
      for (std::size_t i = 0; i < n; ++i) q[i] += (alpha[k] - beta) * memory[k].s[i];
    }
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = active(x, g, i) ? 0.0 : -q[i];
    if (dot(d, g) >= 0.0) {
      memory.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = active(x, g, i) ? 0.0 : -g[i];
    }

    double step = 1.0;
    if (memory.empty()) {
      // First step or reset: cap the initial move length.
      double dn = 0.0;
      for (double v : d) dn = std::max(dn, std::abs(v));
      if (dn > 0.0) step = std::min(1.0, 0.1 / dn);
    }

    std::vector<double> trial(n);
    double ft = fx;
    bool accepted = false;
    for (int ls = 0; ls < options.max_line_search; ++ls) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + step * d[i];
      project(trial);
      double decrease = 0.0;
      for (std::size_t i = 0; i < n; ++i) decrease += g[i] * (trial[i] - x[i]);
      if (trial == x) break;
      ft = eval(trial);
      if (ft <= fx + 1e-4 * decrease && ft < fx) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.stop_reason = "line search made no progress";
      res.converged = pg_norm <= 1e3 * options.gradient_tolerance;
      break;
    }

    std::vector<double> g_new = grad(trial);
    Pair pr;
    pr.s.resize(n);
    pr.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      pr.s[i] = trial[i] - x[i];
      pr.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(pr.s, pr.y);
    if (sy > 1e-10 * std::sqrt(dot(pr.s, pr.s) * dot(pr.y, pr.y))) {
      pr.rho = 1.0 / sy;
      memory.push_back(std::move(pr));
      if (static_cast<int>(memory.size()) > options.history) memory.pop_front();
    }

    const double rel = (fx - ft) / std::max({std::abs(fx), std::abs(ft), 1.0});
    x = trial;
    fx = ft;
    g = std::move(g_new);
    res.iterations = iter + 1;
    res.iterates.push_back({x, fx});
    if (rel <= options.function_tolerance) {
      res.converged = true;
      res.stop_reason = "relative decrease below tolerance";
      break;
    }
  }
  if (res.stop_reason.empty()) res.stop_reason = "iteration limit";
  return res;
}

}  // namespace trafficqaoa
