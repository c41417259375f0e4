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

#include "trafficqaoa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trafficqaoa {

ApproxReport approx_measures(double expectation, const Spectrum& s, ExpectationSource source) {
  if (!(s.e_max > s.e_min)) throw std::invalid_argument("degenerate spectrum: E_max == E_min");
  ApproxReport r;
  r.e_min = s.e_min;
  r.e_max = s.e_max;
  r.e_random = s.e_random;
  r.expectation = expectation;
  r.source = source;
  r.r_true = (s.e_max - expectation) / (s.e_max - s.e_min);
  r.r_random = (s.e_random - expectation) / (s.e_random - s.e_min);
  return r;
}

ApproxReport approx_measures(const StateVector& sv, const IsingModel& m, const Spectrum& s) {
  return approx_measures(expectation(sv, m), s, ExpectationSource::Statevector);
}

ApproxReport approx_measures(const ShotDistribution& dist, const IsingModel& m, const Spectrum& s) {
  return approx_measures(empirical_expectation(dist, m), s, ExpectationSource::Shots);
}

double r_true(double energy, const Spectrum& s) {
  if (!(s.e_max > s.e_min)) throw std::invalid_argument("degenerate spectrum: E_max == E_min");
  return (s.e_max - energy) / (s.e_max - s.e_min);
}

Solutions extract_solutions(const ShotDistribution& dist, const IsingModel& m) {
  if (dist.counts.empty()) throw std::invalid_argument("empty distribution");
  Solutions out{dist.counts.begin()->first, dist.counts.begin()->first};
  double best_e = std::numeric_limits<double>::infinity();
  std::uint64_t best_n = 0;
  // counts is ordered by state, so strict comparisons keep the smallest tie.
  for (const auto& [z, n] : dist.counts) {
    const double e = m.energy(z);
    if (e < best_e) {
      best_e = e;
      out.best = z;
    }
    if (n > best_n) {
      best_n = n;
      out.most_probable = z;
    }
  }
  return out;
}

AcceptableProbability acceptable_probability(std::span<const double> probabilities,
                                             std::span<const double> energies,
                                             const Spectrum& s, double threshold) {
  if (probabilities.size() != energies.size())
    throw std::invalid_argument("probability and energy tables differ in size");
  AcceptableProbability out;
  std::size_t qualifying = 0;
  for (std::size_t z = 0; z < energies.size(); ++z)
    if (r_true(energies[z], s) > threshold) {
      ++qualifying;
      out.p_single += probabilities[z];
    }
  out.random_baseline = static_cast<double>(qualifying) / static_cast<double>(energies.size());
  return out;
}

AcceptableProbability acceptable_probability(const StateVector& sv, const IsingModel& m,
                                             const Spectrum& s, double threshold) {
  const auto probs = sv.probabilities();
  const auto energies = energy_table(m);
  return acceptable_probability(probs, energies, s, threshold);
}

AcceptableProbability acceptable_probability(const ShotDistribution& dist, const IsingModel& m,
                                             const Spectrum& s, double threshold) {
  const auto energies = energy_table(m);
  std::vector<double> probs(energies.size(), 0.0);
  for (const auto& [z, n] : dist.counts)
    probs[z] = static_cast<double>(n) / static_cast<double>(dist.shots);
  return acceptable_probability(probs, energies, s, threshold);
}

std::optional<std::uint64_t> shots_for_confidence(double p_single, double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("confidence must lie in (0, 1)");
  if (!(p_single > 0.0)) return std::nullopt;
  if (p_single >= 1.0) return 1;
  const double bound = std::log1p(-confidence) / std::log1p(-p_single);
  // Settle rounding in the ratio against the defining inequality.
  constexpr double slack = 1e-12;
  auto enough = [&](double k) { return 1.0 - std::pow(1.0 - p_single, k) >= confidence - slack; };
  double k = std::max(1.0, std::ceil(bound));
  while (k > 1.0 && enough(k - 1.0)) k -= 1.0;
  while (!enough(k)) k += 1.0;
  return static_cast<std::uint64_t>(k);
}

RuntimeEstimate estimate_runtime(double p_single, double t_single, double threshold,
                                 double confidence) {
  RuntimeEstimate r;
  r.p_single = p_single;
  r.t_single = t_single;
  r.threshold = threshold;
  r.k99 = shots_for_confidence(p_single, confidence);
  r.t_total = r.k99 ? t_single * static_cast<double>(*r.k99)
                    : std::numeric_limits<double>::infinity();
  return r;
}

std::vector<double> runtime_ratio(std::span<const RuntimeEstimate> series) {
  if (series.empty()) throw std::invalid_argument("empty runtime series");
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& r : series) lo = std::min(lo, r.t_total);
  if (!(lo > 0.0) || !std::isfinite(lo))
    throw std::invalid_argument("runtime series needs a positive finite minimum");
  std::vector<double> out;
  for (const auto& r : series) out.push_back(r.t_total / lo);
  return out;
}

}  // namespace trafficqaoa
