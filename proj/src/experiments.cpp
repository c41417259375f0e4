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

#include "trafficqaoa/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "trafficqaoa/simulator.hpp"

namespace trafficqaoa {

Problem make_problem(TrafficInstance traffic, LambdaMode mode) {
  Problem out;
  out.seed = traffic.seed;
  out.qubo = build_qubo(traffic, mode);
  out.traffic = std::move(traffic);
  out.raw = to_ising(out.qubo);
  out.ising = normalize(out.raw);
  out.energies = energy_table(out.ising);
  out.spectrum = spectrum_from_table(out.energies, out.ising.constant);
  return out;
}

namespace {

std::vector<std::size_t> hop_distances(const RoadNetwork& net, std::size_t from) {
  std::vector<std::size_t> dist(net.num_nodes(), SIZE_MAX);
  std::deque<std::size_t> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const std::size_t a = queue.front();
    queue.pop_front();
    for (const auto& arc : net.arcs(a))
      if (dist[arc.to] == SIZE_MAX) {
        dist[arc.to] = dist[a] + 1;
        queue.push_back(arc.to);
      }
  }
  return dist;
}

}  // namespace

Problem random_problem(const RoadNetwork& net, const ProblemSpec& spec, std::uint64_t seed) {
  if (net.num_nodes() < 2) throw std::invalid_argument("network needs at least two nodes");
  std::vector<std::vector<std::size_t>> dist;
  std::size_t diameter = 0;
  for (std::size_t a = 0; a < net.num_nodes(); ++a) {
    dist.push_back(hop_distances(net, a));
    for (std::size_t d : dist.back())
      if (d != SIZE_MAX) diameter = std::max(diameter, d);
  }
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t a = 0; a < net.num_nodes(); ++a)
    for (std::size_t b = 0; b < net.num_nodes(); ++b)
      if (a != b && dist[a][b] != SIZE_MAX && 2 * dist[a][b] >= diameter)
        candidates.emplace_back(a, b);

  Rng rng(seed);
  InstanceOptions opts;
  opts.pool_size = spec.pool_size;
  opts.directed_congestion = spec.directed_congestion;
  while (!candidates.empty()) {
    const std::size_t pick = uniform_index(rng, candidates.size());
    const auto [a, b] = candidates[pick];
    const CarSpec car{net.nodes()[a], net.nodes()[b], spec.routes_per_car};
    try {
      return make_problem(
          build_instance(net, std::vector<CarSpec>(spec.cars, car), seed, opts),
          spec.lambda_mode);
    } catch (const std::invalid_argument&) {
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }
  throw std::invalid_argument("no origin/destination pair has enough routes");
}

std::vector<Problem> grid_ensemble(const GridSpec& grid, const ProblemSpec& spec,
                                   std::size_t count, std::uint64_t seed) {
  std::vector<Problem> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = derive_seed(seed, i);
    const RoadNetwork net = grid_network(grid.rows, grid.cols, grid.min_weight, grid.max_weight, s);
    out.push_back(random_problem(net, spec, s));
  }
  return out;
}

std::vector<Problem> network_ensemble(const RoadNetwork& net, const ProblemSpec& spec,
                                      std::size_t count, std::uint64_t seed) {
  std::vector<Problem> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_problem(net, spec, derive_seed(seed, i)));
  return out;
}

CoefficientStats ensemble_stats(const std::vector<Problem>& problems) {
  std::vector<IsingModel> models;
  for (const auto& p : problems) models.push_back(p.ising);
  return coefficient_stats(models);
}

InitBenchmark benchmark_init(const Problem& problem, int p, int restarts, std::uint64_t seed,
                             const OptimizerOptions& options) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  InitBenchmark out;
  out.p = p;
  out.tqa_dts = linspace_half_open(0.1, 1.0, restarts);
  const ExpectationObjective objective(problem.energies, build_qaoa(problem.ising, p));
  for (int r = 0; r < restarts; ++r) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(r));
    out.random_seeds.push_back(s);
    out.random.push_back(optimize(objective, init_random(p, s), options));
  }
  for (double dt : out.tqa_dts) out.tqa.push_back(optimize(objective, init_tqa(p, dt), options));
  return out;
}

double mean_final_r_random(const std::vector<OptimizationTrace>& traces, const Spectrum& s) {
  if (traces.empty()) throw std::invalid_argument("no traces");
  double sum = 0.0;
  for (const auto& t : traces) sum += approx_measures(t.final().value, s).r_random;
  return sum / static_cast<double>(traces.size());
}

std::string_view density_arm_name(DensityArm arm) {
  switch (arm) {
    case DensityArm::Interp: return "interp";
    case DensityArm::Fourier: return "fourier";
    case DensityArm::Precomputed: return "precomputed";
    case DensityArm::Optimized: return "optimized";
  }
  return "?";
}

DensityResult density(const Problem& problem, const ParamVector& precomputed,
                      const DensityOptions& options) {
  if (precomputed.mode != ParamMode::Standard || precomputed.p != 2)
    throw std::invalid_argument("density arms compare p = 2 standard parameters");
  DensityResult out;
  const ExpectationObjective p1(problem.energies, build_qaoa(problem.ising, 1));
  out.p1_optimum = optimize_p1_grid(p1, options.grid, options.optimizer).final().params;

  const ExpectationObjective p2(problem.energies, build_qaoa(problem.ising, 2));
  const ParamVector interp = init_interp(out.p1_optimum);
  const ParamVector fourier =
      fourier_expand(fourier_fit(out.p1_optimum, options.beta_kernel), 2, options.beta_kernel);
  const ParamVector optimized = optimize(p2, precomputed, options.optimizer).final().params;

  const std::pair<DensityArm, const ParamVector*> arms[] = {
      {DensityArm::Interp, &interp},
      {DensityArm::Fourier, &fourier},
      {DensityArm::Precomputed, &precomputed},
      {DensityArm::Optimized, &optimized}};
  for (const auto& [arm, params] : arms) {
    DensityArmResult r{arm, *params, p2.state(params->values).probabilities(), 0.0, 0.0};
    for (std::size_t z = 0; z < r.probabilities.size(); ++z) {
      r.expectation += r.probabilities[z] * problem.energies[z];
      r.mean_r_true += r.probabilities[z] * r_true(problem.energies[z], problem.spectrum);
    }
    out.arms.push_back(std::move(r));
  }
  return out;
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Qaoa: return "qaoa";
    case Algorithm::CfQaoa: return "cf-qaoa";
    case Algorithm::CfMaQaoa: return "cf-maqaoa";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "qaoa") return Algorithm::Qaoa;
  if (name == "cf-qaoa") return Algorithm::CfQaoa;
  if (name == "cf-maqaoa") return Algorithm::CfMaQaoa;
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

namespace {

ArmResult measure(const Problem& problem, Algorithm algorithm, const ExpectationObjective& obj,
                  const ParamVector& initial, const OptimizationTrace& trace,
                  const RoutingResult& routing, const ArmOptions& options, std::uint64_t seed) {
  ArmResult r;
  r.algorithm = algorithm;
  r.initial = initial;
  r.params = trace.final().params;
  r.iterations = trace.iterations;
  r.optimized = trace.stop_reason.rfind("not optimized", 0) != 0;
  r.n_params = r.params.values.size();
  const StateVector sv = obj.state(r.params.values);
  const auto probs = sv.probabilities();
  r.expectation = expectation(sv, problem.energies);
  r.exact = approx_measures(r.expectation, problem.spectrum);
  const ShotDistribution dist = sample(sv, options.shots, seed);
  r.sampled = approx_measures(dist, problem.ising, problem.spectrum);
  const Solutions sol = extract_solutions(dist, problem.ising);
  r.best_state = sol.best;
  r.most_probable_state = sol.most_probable;
  r.best_r_true = r_true(problem.energies[sol.best], problem.spectrum);
  r.most_probable_r_true = r_true(problem.energies[sol.most_probable], problem.spectrum);
  for (Bitstring g : problem.spectrum.ground_states) {
    r.p_ground += probs[g];
    r.p_ground_observed += dist.frequency(g);
  }
  r.acceptable = acceptable_probability(probs, problem.energies, problem.spectrum, options.threshold);
  r.runtime = estimate_runtime(r.acceptable.p_single, options.t_single, options.threshold);
  r.depth = routing.depth;
  r.cnots = routing.cnot_count;
  r.swaps = routing.swap_count;
  r.counts_digest = fnv1a(format_counts(dist));
  return r;
}

}  // namespace

ArmSet run_arms(const Problem& problem, const std::vector<Algorithm>& algorithms,
                const CouplingMap& map, const ParamVector& start, const ArmOptions& options,
                std::uint64_t shot_seed) {
  auto wants = [&](Algorithm a) {
    return std::find(algorithms.begin(), algorithms.end(), a) != algorithms.end();
  };
  const int n = static_cast<int>(problem.n_qubits());
  const int p = options.p;
  ArmSet out;

  const Circuit qaoa_c = build_qaoa(problem.ising, p);
  const ExpectationObjective qaoa_obj(problem.energies, qaoa_c);
  const bool scan = options.grid > 0 && p == 1;
  const OptimizationTrace qaoa_t = scan ? optimize_p1_grid(qaoa_obj, options.grid, options.optimizer)
                                        : optimize(qaoa_obj, start, options.optimizer);
  const ParamVector& qaoa_opt = qaoa_t.final().params;
  if (wants(Algorithm::Qaoa)) {
    const auto layout = default_layout(map, n);
    out.qaoa = measure(problem, Algorithm::Qaoa, qaoa_obj, qaoa_t.initial().params, qaoa_t,
                       route_and_count(qaoa_c, map, layout), options, derive_seed(shot_seed, 0));
  }
  if (!wants(Algorithm::CfQaoa) && !wants(Algorithm::CfMaQaoa)) return out;

  out.plan = plan_compression(problem.ising, map, options.layout);
  const Circuit cf_c = build_cf_qaoa(problem.ising, *out.plan, p);
  const ExpectationObjective cf_obj(problem.energies, cf_c);
  const OptimizationTrace cf_t = scan ? optimize_p1_grid(cf_obj, options.grid, options.optimizer)
                                      : optimize(cf_obj, qaoa_opt, options.optimizer);
  if (wants(Algorithm::CfQaoa))
    out.cf_qaoa = measure(problem, Algorithm::CfQaoa, cf_obj, cf_t.initial().params, cf_t,
                          route_and_count(cf_c, map, out.plan->layout), options,
                          derive_seed(shot_seed, 1));
  if (wants(Algorithm::CfMaQaoa)) {
    const MultiAngleAnsatz ma = build_cf_maqaoa(problem.ising, *out.plan, p);
    const ExpectationObjective ma_obj(problem.energies, ma.circuit);
    ParamVector init = broadcast_params(ma.circuit, qaoa_opt);
    const ParamVector alt = broadcast_params(ma.circuit, cf_t.final().params);
    if (ma_obj(alt.values) < ma_obj(init.values)) init = alt;
    OptimizationTrace ma_t;
    if (problem.n_qubits() <= options.maqaoa_max_qubits) {
      ma_t = optimize(ma_obj, init, options.optimizer);
    } else {
      ma_t.iterates.push_back({init, ma_obj(init.values)});
      ma_t.stop_reason = "not optimized: wider than maqaoa_max_qubits";
    }
    out.cf_maqaoa = measure(problem, Algorithm::CfMaQaoa, ma_obj, init, ma_t,
                            route_and_count(ma.circuit, map, out.plan->layout), options,
                            derive_seed(shot_seed, 2));
  }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return (k % 2) ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

}  // namespace trafficqaoa
