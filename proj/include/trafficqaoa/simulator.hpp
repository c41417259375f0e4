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

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "trafficqaoa/circuit.hpp"

namespace trafficqaoa {

using Amplitude = std::complex<double>;

struct StateVector {
  std::size_t n_qubits = 0;
  std::vector<Amplitude> amps;

  static StateVector zero(std::size_t n);
  static StateVector uniform(std::size_t n);
  static StateVector basis(std::size_t n, Bitstring state);

  double norm_squared() const;
  std::vector<double> probabilities() const;
};

struct ShotDistribution {
  std::size_t n_qubits = 0;
  std::map<Bitstring, std::uint64_t> counts;
  std::uint64_t shots = 0;

  double frequency(Bitstring s) const;
};

struct SimulatorOptions {
  std::size_t max_qubits = 24;
};

// Compiles a circuit once for repeated evaluation. Each maximal run of
// diagonal gates becomes a single phase pass; runs whose angles all scale one
// parameter (a standard QAOA cost layer) use a precomputed phase table.
class CircuitSimulator {
 public:
  explicit CircuitSimulator(const Circuit& circuit, const SimulatorOptions& options = {});

  StateVector run(std::span<const double> params) const;
  void run_into(std::span<const double> params, StateVector& out) const;
  const Circuit& circuit() const { return circuit_; }

 private:
  struct DiagonalRun {
    std::vector<Gate> gates;
    int shared_param = -1;         // >= 0 when every gate scales this parameter
    std::vector<double> table;     // sum of scale * f(z) / 2 over the run
    std::vector<double> literal;   // sum of literal * f(z) / 2, may be empty
  };
  // Consecutive single-qubit gates, applied block by block so that gates on
  // low qubits touch each cache-sized block once.
  struct LocalRun {
    std::vector<Gate> gates;
  };
  enum class StepKind { Gate, Diagonal, Local };
  struct Step {
    StepKind kind = StepKind::Gate;
    std::size_t index = 0;  // into runs_, locals_ or circuit_.gates
  };
  Circuit circuit_;
  bool starts_uniform_ = false;  // leading H on every qubit folded into |+>
  std::vector<DiagonalRun> runs_;
  std::vector<LocalRun> locals_;
  std::vector<Step> steps_;
};

// Fast path through CircuitSimulator.
StateVector simulate(const Circuit& c, const ParamVector& params,
                     const SimulatorOptions& options = {});
StateVector simulate(const Circuit& c, std::span<const double> params,
                     const SimulatorOptions& options = {});
// Reference path applying every gate individually.
StateVector simulate_gatewise(const Circuit& c, std::span<const double> params,
                              const SimulatorOptions& options = {});

void apply_gate(StateVector& sv, const Gate& g, std::span<const double> params);

// sum_z |amp_z|^2 E(z); valid because H_C is diagonal.
double expectation(const StateVector& sv, const IsingModel& m);
double expectation(const StateVector& sv, std::span<const double> energies);

// Multinomial draw of `shots` outcomes from |amp|^2.
ShotDistribution sample(const StateVector& sv, std::uint64_t shots, std::uint64_t seed);

// Frequency-weighted mean energy of sampled outcomes.
double empirical_expectation(const ShotDistribution& dist, const IsingModel& m);

std::string format_counts(const ShotDistribution& dist);
ShotDistribution parse_counts(std::string_view text);

using Objective = std::function<double(std::span<const double>)>;

// Central finite differences.
std::vector<double> gradient(const Objective& f, std::span<const double> x, double step = 1e-6);
std::vector<double> gradient(const IsingModel& m, const Circuit& c, const ParamVector& params,
                             double step = 1e-6);

// <H_C> of a circuit as a function of its flat parameter vector. The energy
// table and compiled circuit are cached; calls are const but not reentrant
// on the same instance because the work buffer is shared.
class ExpectationObjective {
 public:
  ExpectationObjective(const IsingModel& m, const Circuit& c, const SimulatorOptions& options = {});
  ExpectationObjective(std::vector<double> energies, const Circuit& c,
                       const SimulatorOptions& options = {});

  double operator()(std::span<const double> params) const;
  const std::vector<double>& energies() const { return energies_; }
  StateVector state(std::span<const double> params) const { return sim_.run(params); }

 private:
  std::vector<double> energies_;
  CircuitSimulator sim_;
  mutable StateVector buffer_;
};

}  // namespace trafficqaoa
