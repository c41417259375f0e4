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

#include "trafficqaoa/ising.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace trafficqaoa {

double IsingModel::energy(Bitstring state) const {
  double e = constant;
  for (const auto& [u, hu] : h) e += hu * spin(state, u);
  for (const auto& [uv, j] : J) e += j * spin(state, uv.first) * spin(state, uv.second);
  return e;
}

double IsingModel::energy(std::span<const std::uint8_t> bits) const {
  if (bits.size() != n_qubits)
    throw std::invalid_argument("bitstring length " + std::to_string(bits.size()) +
                                " does not match " + std::to_string(n_qubits) + " qubits");
  Bitstring s = 0;
  for (std::size_t u = 0; u < bits.size(); ++u)
    if (bits[u]) s |= Bitstring{1} << u;
  return energy(s);
}

IsingModel to_ising(const QuadraticForm& form) {
  IsingModel m;
  m.n_qubits = form.n_vars;
  m.constant = form.constant;
  // a q_u = a/2 - a/2 Z_u
  for (const auto& [u, a] : form.linear) {
    m.constant += a / 2.0;
    m.h[u] -= a / 2.0;
  }
  // b q_u q_v = b/4 (1 - Z_u - Z_v + Z_u Z_v)
  for (const auto& [uv, b] : form.quadratic) {
    m.constant += b / 4.0;
    m.h[uv.first] -= b / 4.0;
    m.h[uv.second] -= b / 4.0;
    m.J[uv] += b / 4.0;
  }
  return m;
}

double mean_abs_coefficient(const IsingModel& m) {
  const std::size_t count = m.J.size() + m.h.size();
  if (count == 0) return 0.0;
  double sum = 0.0;
  for (const auto& [uv, j] : m.J) sum += std::abs(j);
  for (const auto& [u, hu] : m.h) sum += std::abs(hu);
  return sum / static_cast<double>(count);
}

IsingModel normalize(const IsingModel& m) {
  const double s = mean_abs_coefficient(m);
  if (!(s > 0.0)) throw std::invalid_argument("cannot normalize an all-zero Ising model");
  IsingModel out = m;
  for (auto& [uv, j] : out.J) j /= s;
  for (auto& [u, hu] : out.h) hu /= s;
  out.constant /= s;
  out.norm_factor *= s;
  return out;
}

std::vector<double> energy_table(const IsingModel& m) {
  const std::size_t n = m.n_qubits;
  if (n > 30) throw std::invalid_argument("energy table too large");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> hv(n, 0.0);
  std::vector<std::vector<double>> coupling(n, std::vector<double>(n, 0.0));
  for (const auto& [u, hu] : m.h) hv[u] = hu;
  for (const auto& [uv, j] : m.J) {
    coupling[uv.first][uv.second] += j;
    coupling[uv.second][uv.first] += j;
  }
  std::vector<double> table(dim);
  double e0 = m.constant;
  for (std::size_t u = 0; u < n; ++u) e0 += hv[u];
  for (const auto& [uv, j] : m.J) e0 += j;
  table[0] = e0;
  // Setting bit b on a state x < 2^b flips z_b from +1 to -1; qubits above b
  // are still +1.
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t half = std::size_t{1} << b;
    double upper = hv[b];
    for (std::size_t v = b + 1; v < n; ++v) upper += coupling[b][v];
    for (std::size_t x = 0; x < half; ++x) {
      double field = upper;
      for (std::size_t v = 0; v < b; ++v)
        field += ((x >> v) & 1U) ? -coupling[b][v] : coupling[b][v];
      table[x | half] = table[x] - 2.0 * field;
    }
  }
  return table;
}

Spectrum spectrum_from_table(std::span<const double> energies, double constant,
                             double degeneracy_tolerance) {
  if (energies.empty()) throw std::invalid_argument("empty energy table");
  Spectrum s;
  auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
  s.e_min = *lo;
  s.e_max = *hi;
  long double sum = 0.0L;
  for (double e : energies) sum += e;
  s.e_random = static_cast<double>(sum / static_cast<long double>(energies.size()));
  const double tol = degeneracy_tolerance * std::max(1.0, s.e_max - s.e_min);
  for (std::size_t x = 0; x < energies.size(); ++x)
    if (energies[x] - s.e_min <= tol) s.ground_states.push_back(x);
  const double scale = std::max({1.0, std::abs(s.e_min), std::abs(s.e_max)});
  if (std::abs(s.e_random - constant) > 1e-9 * scale)
    throw std::logic_error("uniform-average energy departs from the constant term");
  return s;
}

Spectrum exhaustive_spectrum(const IsingModel& m, const SpectrumOptions& options) {
  if (m.n_qubits > options.max_qubits)
    throw std::invalid_argument(std::to_string(m.n_qubits) + " qubits exceeds the " +
                                std::to_string(options.max_qubits) + "-qubit spectrum cap");
  const auto table = energy_table(m);
  return spectrum_from_table(table, m.constant, options.degeneracy_tolerance);
}

}  // namespace trafficqaoa
