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

#include "trafficqaoa/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace trafficqaoa {

namespace {
constexpr double kPi = std::numbers::pi;
}

ParamVector init_random(int p, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  Rng rng(seed);
  std::vector<double> gammas(static_cast<std::size_t>(p)), betas(static_cast<std::size_t>(p));
  for (int l = 0; l < p; ++l) {
    gammas[static_cast<std::size_t>(l)] = -kPi + 2.0 * kPi * uniform_unit(rng);
    betas[static_cast<std::size_t>(l)] = -kPi / 2 + kPi * uniform_unit(rng);
  }
  return ParamVector::standard(gammas, betas);
}

ParamVector init_tqa(int p, double dt) {
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("TQA time step must be positive");
  std::vector<double> gammas, betas;
  for (int j = 1; j <= p; ++j) {
    const double s = static_cast<double>(j) / p;
    gammas.push_back(s * dt);
    betas.push_back((1.0 - s) * dt);
  }
  return ParamVector::standard(gammas, betas);
}

std::vector<double> linspace_half_open(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / count);
  return out;
}

namespace {

std::vector<double> resample(std::span<const double> values) {
  const std::size_t p = values.size();
  std::vector<double> out(p + 1);
  for (std::size_t m = 0; m <= p; ++m) {
    const double y = (static_cast<double>(m) + 0.5) / static_cast<double>(p + 1);
    // y in sample-index units: x_l = (l + 1/2)/p  =>  l = y p - 1/2
    const double pos = y * static_cast<double>(p) - 0.5;
    if (pos <= 0.0) {
      out[m] = values.front();
    } else if (pos >= static_cast<double>(p - 1)) {
      out[m] = values.back();
    } else {
      const auto lo = static_cast<std::size_t>(std::floor(pos));
      const double t = pos - static_cast<double>(lo);
      out[m] = (1.0 - t) * values[lo] + t * values[lo + 1];
    }
  }
  return out;
}

double kernel(FourierKernel k, std::size_t idx_k, std::size_t idx_i, int p) {
  const double arg = (static_cast<double>(idx_k) + 0.5) * (static_cast<double>(idx_i) + 0.5) * kPi /
                     static_cast<double>(p);
  return k == FourierKernel::Sin ? std::sin(arg) : std::cos(arg);
}

}  // namespace

ParamVector init_interp(const ParamVector& prev) {
  if (prev.mode != ParamMode::Standard || prev.p < 1)
    throw std::invalid_argument("INTERP needs a standard-mode schedule");
  const auto g = resample(prev.gammas());
  const auto b = resample(prev.betas());
  return ParamVector::standard(g, b);
}

ParamVector fourier_expand(const FourierParams& f, int p, FourierKernel beta_kernel) {
  if (f.u.empty() || f.u.size() != f.v.size())
    throw std::invalid_argument("FOURIER needs q >= 1 and |u| == |v|");
  if (p < 1) throw std::invalid_argument("p must be >= 1");
  std::vector<double> gammas(static_cast<std::size_t>(p), 0.0), betas(static_cast<std::size_t>(p), 0.0);
  for (std::size_t i = 0; i < gammas.size(); ++i)
    for (std::size_t k = 0; k < f.q(); ++k) {
      gammas[i] += f.u[k] * kernel(FourierKernel::Sin, k, i, p);
      betas[i] += f.v[k] * kernel(beta_kernel, k, i, p);
    }
  return ParamVector::standard(gammas, betas);
}

FourierParams fourier_fit(const ParamVector& v, FourierKernel beta_kernel) {
  if (v.mode != ParamMode::Standard) throw std::invalid_argument("FOURIER needs standard mode");
  const int p = v.p;
  FourierParams f;
  f.u.assign(static_cast<std::size_t>(p), 0.0);
  f.v.assign(static_cast<std::size_t>(p), 0.0);
  const auto g = v.gammas();
  const auto b = v.betas();
  for (std::size_t k = 0; k < f.u.size(); ++k)
    for (std::size_t i = 0; i < f.u.size(); ++i) {
      f.u[k] += 2.0 / p * kernel(FourierKernel::Sin, k, i, p) * g[i];
      f.v[k] += 2.0 / p * kernel(beta_kernel, k, i, p) * b[i];
    }
  return f;
}

Bounds standard_bounds(int p) {
  Bounds b;
  for (int l = 0; l < p; ++l) {
    b.lower.push_back(-kPi);
    b.upper.push_back(kPi);
  }
  for (int l = 0; l < p; ++l) {
    b.lower.push_back(-kPi / 2);
    b.upper.push_back(kPi / 2);
  }
  return b;
}

OptimizationTrace optimize(const ExpectationObjective& objective, const ParamVector& init,
                           const OptimizerOptions& options) {
  const Bounds bounds = init.mode == ParamMode::Standard ? standard_bounds(init.p)
                                                         : Bounds::unbounded(init.values.size());
  auto raw = minimize_box([&](std::span<const double> x) { return objective(x); }, init.values,
                          bounds, options);
  OptimizationTrace trace;
  trace.converged = raw.converged;
  trace.iterations = raw.iterations;
  trace.evaluations = raw.evaluations;
  trace.stop_reason = raw.stop_reason;
  for (auto& it : raw.iterates) {
    ParamVector pv = init;
    pv.values = std::move(it.x);
    trace.iterates.push_back({std::move(pv), it.value});
  }
  // Canonical form; exact symmetry, so the value is unchanged.
  trace.iterates.back().params = canonicalize_params(trace.iterates.back().params);
  return trace;
}

OptimizationTrace optimize(const IsingModel& m, const Circuit& circuit, const ParamVector& init,
                           const OptimizerOptions& options) {
  ExpectationObjective objective(m, circuit);
  return optimize(objective, init, options);
}

OptimizationTrace optimize_p1_grid(const ExpectationObjective& objective, int grid,
                                   const OptimizerOptions& options) {
  if (grid < 1) throw std::invalid_argument("grid must be >= 1");
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x{0.0, 0.0}, x(2);
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) {
      x[0] = -kPi + 2.0 * kPi * (a + 0.5) / grid;
      x[1] = -kPi / 2 + kPi * (b + 0.5) / grid;
      const double v = objective(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
  const std::vector<double> g{best_x[0]}, bt{best_x[1]};
  return optimize(objective, ParamVector::standard(g, bt), options);
}

CoefficientStats coefficient_stats(std::span<const IsingModel> models) {
  std::vector<double> js, hs;
  for (const auto& m : models) {
    for (const auto& [uv, j] : m.J) js.push_back(j);
    for (const auto& [u, h] : m.h) hs.push_back(h);
  }
  auto moments = [](const std::vector<double>& v, double& mean, double& sd) {
    mean = sd = 0.0;
    if (v.empty()) return;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double x : v) sd += (x - mean) * (x - mean);
    sd = std::sqrt(sd / static_cast<double>(v.size()));
  };
  CoefficientStats s;
  moments(js, s.j_mean, s.j_std);
  moments(hs, s.h_mean, s.h_std);
  return s;
}

IsingModel random_dense_ising(int n_qubits, const CoefficientStats& stats, Rng& rng) {
  if (stats.j_std < 0.0 || stats.h_std < 0.0)
    throw std::invalid_argument("coefficient standard deviation must be >= 0");
  std::normal_distribution<double> jd(stats.j_mean, stats.j_std), hd(stats.h_mean, stats.h_std);
  IsingModel m;
  m.n_qubits = static_cast<std::size_t>(n_qubits);
  for (std::size_t u = 0; u < m.n_qubits; ++u) m.h[u] = stats.h_std > 0 ? hd(rng) : stats.h_mean;
  for (std::size_t u = 0; u < m.n_qubits; ++u)
    for (std::size_t v = u + 1; v < m.n_qubits; ++v)
      m.J[{u, v}] = stats.j_std > 0 ? jd(rng) : stats.j_mean;
  return m;
}

PrecomputeResult precompute_params(const CoefficientStats& stats,
                                   const PrecomputeOptions& options) {
  if (options.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (stats.j_std < 0.0 || stats.h_std < 0.0)
    throw std::invalid_argument("coefficient standard deviation must be >= 0");
  Rng rng(options.seed);
  PrecomputeResult out;
  const ParamVector start = init_tqa(options.p, options.tqa_dt);
  for (int s = 0; s < options.n_samples; ++s) {
    const IsingModel m = normalize(random_dense_ising(options.n_qubits, stats, rng));
    const Circuit c = build_qaoa(m, options.p);
    out.samples.push_back(optimize(m, c, start, options.optimizer).final().params);
  }
  out.params = start;
  for (std::size_t i = 0; i < out.params.values.size(); ++i) {
    std::vector<double> column;
    for (const auto& pv : out.samples) column.push_back(pv.values[i]);
    std::sort(column.begin(), column.end());
    const std::size_t k = column.size();
    out.params.values[i] = (k % 2) ? column[k / 2] : 0.5 * (column[k / 2 - 1] + column[k / 2]);
  }
  return out;
}

}  // namespace trafficqaoa
