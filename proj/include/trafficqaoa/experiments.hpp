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
#include <optional>
#include <string>
#include <vector>

#include "trafficqaoa/cf.hpp"
#include "trafficqaoa/ising.hpp"
#include "trafficqaoa/metrics.hpp"
#include "trafficqaoa/params.hpp"
#include "trafficqaoa/qubo.hpp"
#include "trafficqaoa/roadnet.hpp"

namespace trafficqaoa {

// One traffic problem carried through to its normalized Ising form.
struct Problem {
  std::uint64_t seed = 0;
  TrafficInstance traffic;
  QuboModel qubo;
  IsingModel raw;    // before normalization
  IsingModel ising;  // normalized, used for all circuits
  std::vector<double> energies;
  Spectrum spectrum;

  std::size_t n_qubits() const { return ising.n_qubits; }
};

Problem make_problem(TrafficInstance traffic, LambdaMode mode = LambdaMode::TrueRange);

struct ProblemSpec {
  std::size_t cars = 3;
  std::size_t routes_per_car = 3;
  std::size_t pool_size = 1000;
  bool directed_congestion = false;
  LambdaMode lambda_mode = LambdaMode::TrueRange;
};

// All cars share one origin/destination pair drawn from `seed`, at least half
// the hop diameter apart. Pairs without enough simple paths are redrawn.
Problem random_problem(const RoadNetwork& net, const ProblemSpec& spec, std::uint64_t seed);

struct GridSpec {
  std::size_t rows = 5;
  std::size_t cols = 5;
  double min_weight = 1.0;
  double max_weight = 2.0;
};

// Fresh grid weights and O/D per instance; instance i uses derive_seed(seed, i).
std::vector<Problem> grid_ensemble(const GridSpec& grid, const ProblemSpec& spec,
                                   std::size_t count, std::uint64_t seed);
std::vector<Problem> network_ensemble(const RoadNetwork& net, const ProblemSpec& spec,
                                      std::size_t count, std::uint64_t seed);

CoefficientStats ensemble_stats(const std::vector<Problem>& problems);

// --- initialization benchmark ---

struct InitBenchmark {
  int p = 0;
  std::vector<std::uint64_t> random_seeds;
  std::vector<double> tqa_dts;
  std::vector<OptimizationTrace> random;
  std::vector<OptimizationTrace> tqa;
};

// RANDOM arm: init_random with derive_seed(seed, r); TQA arm: Δt on
// linspace_half_open(0.1, 1.0, restarts).
InitBenchmark benchmark_init(const Problem& problem, int p, int restarts, std::uint64_t seed,
                             const OptimizerOptions& options = {});

double mean_final_r_random(const std::vector<OptimizationTrace>& traces, const Spectrum& s);

// --- density data ---

enum class DensityArm { Interp, Fourier, Precomputed, Optimized };
std::string_view density_arm_name(DensityArm arm);

struct DensityArmResult {
  DensityArm arm;
  ParamVector params;
  std::vector<double> probabilities;
  double expectation = 0.0;
  double mean_r_true = 0.0;
};

struct DensityResult {
  ParamVector p1_optimum;
  std::vector<DensityArmResult> arms;  // in DensityArm order
};

struct DensityOptions {
  int grid = 64;
  FourierKernel beta_kernel = FourierKernel::Sin;
  OptimizerOptions optimizer{};
};

// p = 2 states from INTERP and FOURIER (grown from the grid-refined p = 1
// optimum), the precomputed parameters, and their locally optimized descendant.
DensityResult density(const Problem& problem, const ParamVector& precomputed,
                      const DensityOptions& options = {});

// --- noiseless scaling and the compressed ansatzes ---

enum class Algorithm { Qaoa, CfQaoa, CfMaQaoa };
std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct ArmOptions {
  int p = 1;
  std::uint64_t shots = 10000;
  double threshold = 0.8;
  double t_single = 1.0;
  LayoutStrategy layout = LayoutStrategy::BfsChain;
  OptimizerOptions optimizer{};
  // With p = 1 and grid > 0, QAOA and CF-QAOA each start from the best point
  // of a grid x grid scan of the parameter box instead of `start`.
  int grid = 0;
  // CF-maQAOA is optimized only up to this width; wider problems report the
  // broadcast starting point.
  std::size_t maqaoa_max_qubits = 14;
};

struct ArmResult {
  Algorithm algorithm = Algorithm::Qaoa;
  ParamVector initial;
  ParamVector params;
  int iterations = 0;
  bool optimized = true;
  double expectation = 0.0;  // exact, from the statevector
  ApproxReport exact;
  ApproxReport sampled;
  double best_r_true = 0.0;           // best observed state
  double most_probable_r_true = 0.0;  // most frequent observed state
  Bitstring best_state = 0;
  Bitstring most_probable_state = 0;
  double p_ground = 0.0;           // exact probability of the ground space
  double p_ground_observed = 0.0;  // frequency in the shots
  AcceptableProbability acceptable;
  RuntimeEstimate runtime;
  int depth = 0;
  int cnots = 0;
  int swaps = 0;
  std::size_t n_params = 0;
  std::uint64_t counts_digest = 0;
};

struct ArmSet {
  std::optional<ArmResult> qaoa;
  std::optional<ArmResult> cf_qaoa;
  std::optional<ArmResult> cf_maqaoa;
  std::optional<CompressionPlan> plan;
};

// QAOA is optimized from `start`; CF-QAOA from the QAOA optimum (see
// ArmOptions::grid for the alternative); CF-maQAOA from whichever broadcast of
// the two optima is lower. Each arm is then
// sampled with its own derived seed.
ArmSet run_arms(const Problem& problem, const std::vector<Algorithm>& algorithms,
                const CouplingMap& map, const ParamVector& start, const ArmOptions& options,
                std::uint64_t shot_seed);

// Summaries shared by the CLI and the acceptance suite.
double median(std::vector<double> v);

}  // namespace trafficqaoa
