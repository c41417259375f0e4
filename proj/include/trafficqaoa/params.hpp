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
#include <string>
#include <vector>

#include "trafficqaoa/circuit.hpp"
#include "trafficqaoa/optimizer.hpp"
#include "trafficqaoa/simulator.hpp"

namespace trafficqaoa {

// gamma_l ~ U[-pi, pi), beta_l ~ U[-pi/2, pi/2).
ParamVector init_random(int p, std::uint64_t seed);

// Trotterised linear-ramp anneal with step dt:
// gamma_j = (j/p) dt, beta_j = (1 - j/p) dt, j = 1..p.
struct TqaSchedule {
  double dt;
  int p;
  double total_time() const { return dt * p; }
};
ParamVector init_tqa(int p, double dt);

// `count` equally spaced values starting at lo, excluding hi.
std::vector<double> linspace_half_open(double lo, double hi, int count);

// Resamples a p-layer schedule at p+1 layers: samples sit at fractions
// (l - 1/2)/p, new points at (l - 1/2)/(p + 1), linear in between and flat
// beyond the end samples.
ParamVector init_interp(const ParamVector& prev);

enum class FourierKernel { Sin, Cos };

struct FourierParams {
  std::vector<double> u;
  std::vector<double> v;
  std::size_t q() const { return u.size(); }
};

// gamma_i = sum_k u_k sin((k - 1/2)(i - 1/2) pi / p); beta_i likewise with v_k
// and the selected kernel.
ParamVector fourier_expand(const FourierParams& f, int p,
                           FourierKernel beta_kernel = FourierKernel::Sin);
// Inverse of fourier_expand for q = p. The kernels are orthogonal with
// K K = (p/2) I, so the inverse is (2/p) K.
FourierParams fourier_fit(const ParamVector& v, FourierKernel beta_kernel = FourierKernel::Sin);

// Box used by the optimizer in standard mode.
Bounds standard_bounds(int p);

struct QaoaIterate {
  ParamVector params;
  double value;
};

struct OptimizationTrace {
  std::vector<QaoaIterate> iterates;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
  std::string stop_reason;

  const QaoaIterate& initial() const { return iterates.front(); }
  const QaoaIterate& final() const { return iterates.back(); }
};

// Minimises <H_C> of `circuit` (evaluated against the full model m). Standard
// mode is boxed; multi-angle mode runs unconstrained and the result is
// canonicalized.
OptimizationTrace optimize(const ExpectationObjective& objective, const ParamVector& init,
                           const OptimizerOptions& options = {});
OptimizationTrace optimize(const IsingModel& m, const Circuit& circuit, const ParamVector& init,
                           const OptimizerOptions& options = {});

// Best of a gamma x beta grid over the standard p = 1 box, then refined.
OptimizationTrace optimize_p1_grid(const ExpectationObjective& objective, int grid = 64,
                                   const OptimizerOptions& options = {});

struct CoefficientStats {
  double j_mean = 0.0;
  double j_std = 0.0;
  double h_mean = 0.0;
  double h_std = 0.0;
};

CoefficientStats coefficient_stats(std::span<const IsingModel> models);

struct PrecomputeOptions {
  int p = 2;
  int n_samples = 100;
  int n_qubits = 9;
  std::uint64_t seed = 0;
  double tqa_dt = 0.75;
  OptimizerOptions optimizer{};
};

struct PrecomputeResult {
  ParamVector params;
  std::vector<ParamVector> samples;  // optimized, canonicalized, one per model
};

// Fully connected Ising model with N(mean, std) couplings and fields.
IsingModel random_dense_ising(int n_qubits, const CoefficientStats& stats, Rng& rng);

// Optimizes QAOA on n_samples random dense models (normalized) from a TQA
// start and returns the component-wise median.
PrecomputeResult precompute_params(const CoefficientStats& stats,
                                   const PrecomputeOptions& options = {});

}  // namespace trafficqaoa
