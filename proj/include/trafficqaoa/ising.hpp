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
#include <span>
#include <vector>

#include "trafficqaoa/common.hpp"
#include "trafficqaoa/qubo.hpp"

namespace trafficqaoa {

// H_C = sum J_uv Z_u Z_v + sum h_u Z_u + c, measured with bit 1 <-> z = -1.
// norm_factor is the scalar the raw (QUBO-equivalent) model was divided by.
struct IsingModel {
  std::size_t n_qubits = 0;
  std::map<VarPair, double> J;
  std::map<std::size_t, double> h;
  double constant = 0.0;
  double norm_factor = 1.0;

  double energy(Bitstring state) const;
  // Throws std::invalid_argument on length mismatch.
  double energy(std::span<const std::uint8_t> bits) const;
};

// Substitutes q_u = (1 - Z_u) / 2. Every variable with a linear or quadratic
// QUBO term gets a stored h entry.
IsingModel to_ising(const QuadraticForm& form);
inline IsingModel to_ising(const QuboModel& q) { return to_ising(q.cost); }

// Mean |coefficient| over stored J and h entries.
double mean_abs_coefficient(const IsingModel& m);

// Divides J, h and c by the mean absolute stored coefficient; multiplies
// norm_factor by it. Throws std::invalid_argument for an all-zero model.
IsingModel normalize(const IsingModel& m);

// Energies of all 2^N basis states, indexed by Bitstring.
std::vector<double> energy_table(const IsingModel& m);

struct Spectrum {
  double e_min = 0.0;
  double e_max = 0.0;
  double e_random = 0.0;
  std::vector<Bitstring> ground_states;
};

struct SpectrumOptions {
  std::size_t max_qubits = 24;
  // Relative to the spectral width, for ground-state degeneracy.
  double degeneracy_tolerance = 1e-9;
};

// Exact E_min, E_max, ground states and the uniform-average energy. Throws
// std::invalid_argument beyond max_qubits and std::logic_error if the average
// departs from the constant term by more than 1e-9 (scaled by the largest
// |energy| when that exceeds 1).
Spectrum exhaustive_spectrum(const IsingModel& m, const SpectrumOptions& options = {});
Spectrum spectrum_from_table(std::span<const double> energies, double constant,
                             double degeneracy_tolerance = 1e-9);

}  // namespace trafficqaoa
