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
#include <span>
#include <vector>

#include "trafficqaoa/ising.hpp"
#include "trafficqaoa/simulator.hpp"

namespace trafficqaoa {

enum class ExpectationSource { Statevector, Shots };

struct ApproxReport {
  double r_true = 0.0;
  double r_random = 0.0;
  double e_min = 0.0;
  double e_max = 0.0;
  double e_random = 0.0;
  double expectation = 0.0;
  ExpectationSource source = ExpectationSource::Statevector;
};

// R_true = (E_max - <H>) / (E_max - E_min); R_random = (c - <H>) / (c - E_min).
// Throws std::invalid_argument when E_max == E_min.
ApproxReport approx_measures(double expectation, const Spectrum& spectrum,
                             ExpectationSource source = ExpectationSource::Statevector);
ApproxReport approx_measures(const StateVector& sv, const IsingModel& m, const Spectrum& spectrum);
ApproxReport approx_measures(const ShotDistribution& dist, const IsingModel& m,
                             const Spectrum& spectrum);

// R_true of one energy value.
double r_true(double energy, const Spectrum& spectrum);

struct Solutions {
  Bitstring best;           // lowest energy observed
  Bitstring most_probable;  // highest count
};

// Ties go to the numerically smallest state index.
Solutions extract_solutions(const ShotDistribution& dist, const IsingModel& m);

struct AcceptableProbability {
  double p_single = 0.0;
  double random_baseline = 0.0;  // fraction of basis states above threshold
};

// Total probability of basis states with R_true > threshold.
AcceptableProbability acceptable_probability(std::span<const double> probabilities,
                                             std::span<const double> energies,
                                             const Spectrum& spectrum, double threshold = 0.8);
AcceptableProbability acceptable_probability(const StateVector& sv, const IsingModel& m,
                                             const Spectrum& spectrum, double threshold = 0.8);
AcceptableProbability acceptable_probability(const ShotDistribution& dist, const IsingModel& m,
                                             const Spectrum& spectrum, double threshold = 0.8);

// Smallest K with 1 - (1 - p)^K >= confidence; nullopt when p <= 0.
std::optional<std::uint64_t> shots_for_confidence(double p_single, double confidence = 0.99);

struct RuntimeEstimate {
  double p_single = 0.0;
  std::optional<std::uint64_t> k99;
  double t_single = 1.0;
  double t_total = 0.0;  // t_single * k99, +inf when unbounded
  double threshold = 0.8;
};

RuntimeEstimate estimate_runtime(double p_single, double t_single, double threshold = 0.8,
                                 double confidence = 0.99);

// Each t_total divided by the series minimum.
std::vector<double> runtime_ratio(std::span<const RuntimeEstimate> series);

}  // namespace trafficqaoa
