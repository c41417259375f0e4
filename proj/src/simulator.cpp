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

#include "trafficqaoa/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace trafficqaoa {

StateVector StateVector::zero(std::size_t n) {
  StateVector sv;
  sv.n_qubits = n;
  sv.amps.assign(std::size_t{1} << n, Amplitude{0.0, 0.0});
  sv.amps[0] = 1.0;
  return sv;
}

StateVector StateVector::uniform(std::size_t n) {
  StateVector sv;
  sv.n_qubits = n;
  const double a = std::pow(2.0, -0.5 * static_cast<double>(n));
  sv.amps.assign(std::size_t{1} << n, Amplitude{a, 0.0});
  return sv;
}

StateVector StateVector::basis(std::size_t n, Bitstring state) {
  StateVector sv;
  sv.n_qubits = n;
  sv.amps.assign(std::size_t{1} << n, Amplitude{0.0, 0.0});
  sv.amps.at(state) = 1.0;
  return sv;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) p[i] = std::norm(amps[i]);
  return p;
}

double ShotDistribution::frequency(Bitstring s) const {
  auto it = counts.find(s);
  if (it == counts.end() || shots == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(shots);
}

// ---------------------------------------------------------------------------
// Gate kernels

namespace {

void apply_h(std::vector<Amplitude>& a, std::size_t q) {
  const std::size_t stride = std::size_t{1} << q;
  const double r = std::numbers::sqrt2 / 2.0;
  for (std::size_t base = 0; base < a.size(); base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) {
      const Amplitude x = a[i], y = a[i + stride];
      a[i] = r * (x + y);
      a[i + stride] = r * (x - y);
    }
}

void apply_rx(std::vector<Amplitude>& a, std::size_t q, double theta) {
  const std::size_t stride = std::size_t{1} << q;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  double* d = reinterpret_cast<double*>(a.data());
  for (std::size_t base = 0; base < a.size(); base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) {
      double* x = d + 2 * i;
      double* y = d + 2 * (i + stride);
      const double xr = x[0], xi = x[1], yr = y[0], yi = y[1];
      // [c, -is; -is, c]
      x[0] = c * xr + s * yi;
      x[1] = c * xi - s * yr;
      y[0] = c * yr + s * xi;
      y[1] = c * yi - s * xr;
    }
}

void apply_rz(std::vector<Amplitude>& a, std::size_t q, double theta) {
  const Amplitude p0 = std::polar(1.0, -theta / 2), p1 = std::polar(1.0, theta / 2);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= ((i >> q) & 1U) ? p1 : p0;
}

void apply_rzz(std::vector<Amplitude>& a, std::size_t q0, std::size_t q1, double theta) {
  const Amplitude even = std::polar(1.0, -theta / 2), odd = std::polar(1.0, theta / 2);
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] *= (((i >> q0) ^ (i >> q1)) & 1U) ? odd : even;
}

void apply_cnot(std::vector<Amplitude>& a, std::size_t control, std::size_t target) {
  const std::size_t cm = std::size_t{1} << control, tm = std::size_t{1} << target;
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((i & cm) && !(i & tm)) std::swap(a[i], a[i | tm]);
}

void apply_swap(std::vector<Amplitude>& a, std::size_t q0, std::size_t q1) {
  const std::size_t m0 = std::size_t{1} << q0, m1 = std::size_t{1} << q1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((i & m0) && !(i & m1)) std::swap(a[i], a[(i ^ m0) | m1]);
}

void apply_phase_table(std::vector<Amplitude>& a, std::span<const double> phase) {
  double* d = reinterpret_cast<double*>(a.data());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double c = std::cos(phase[i]), s = -std::sin(phase[i]);
    const double re = d[2 * i], im = d[2 * i + 1];
    d[2 * i] = re * c - im * s;
    d[2 * i + 1] = re * s + im * c;
  }
}

void check_width(std::size_t n, const SimulatorOptions& options) {
  if (n > options.max_qubits)
    throw std::invalid_argument(std::to_string(n) + " qubits exceeds the simulator cap of " +
                                std::to_string(options.max_qubits));
}

// Coefficient model whose energy table is sum_g w_g f_g(z), with f = z_u for
// RZ and z_u z_v for RZZ.
IsingModel diagonal_model(std::size_t n, const std::vector<Gate>& gates,
                          const std::function<double(const Gate&)>& weight) {
  IsingModel m;
  m.n_qubits = n;
  for (const Gate& g : gates) {
    const double w = weight(g);
    if (g.kind == GateKind::RZ) {
      m.h[static_cast<std::size_t>(g.q0)] += w;
    } else {
      const auto a = static_cast<std::size_t>(std::min(g.q0, g.q1));
      const auto b = static_cast<std::size_t>(std::max(g.q0, g.q1));
      m.J[{a, b}] += w;
    }
  }
  return m;
}

}  // namespace

void apply_gate(StateVector& sv, const Gate& g, std::span<const double> params) {
  auto& a = sv.amps;
  const auto q0 = static_cast<std::size_t>(g.q0);
  switch (g.kind) {
    case GateKind::H: apply_h(a, q0); break;
    case GateKind::RX: apply_rx(a, q0, g.angle.resolve(params)); break;
    case GateKind::RZ: apply_rz(a, q0, g.angle.resolve(params)); break;
    case GateKind::RZZ:
      apply_rzz(a, q0, static_cast<std::size_t>(g.q1), g.angle.resolve(params));
      break;
    case GateKind::CNOT: apply_cnot(a, q0, static_cast<std::size_t>(g.q1)); break;
    case GateKind::SWAP: apply_swap(a, q0, static_cast<std::size_t>(g.q1)); break;
  }
}

// ---------------------------------------------------------------------------
// CircuitSimulator

namespace {

constexpr std::size_t kBlockQubits = 11;

bool is_local(GateKind kind) { return kind == GateKind::H || kind == GateKind::RX; }

void apply_local(std::vector<Amplitude>& a, const Gate& g, std::span<const double> params,
                 std::size_t offset, std::size_t size) {
  const std::size_t stride = std::size_t{1} << g.q0;
  const double r = std::numbers::sqrt2 / 2.0;
  double c = 0.0, s = 0.0;
  if (g.kind == GateKind::RX) {
    const double theta = g.angle.resolve(params);
    c = std::cos(theta / 2);
    s = std::sin(theta / 2);
  }
  double* d = reinterpret_cast<double*>(a.data());
  for (std::size_t base = offset; base < offset + size; base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) {
      double* x = d + 2 * i;
      double* y = d + 2 * (i + stride);
      const double xr = x[0], xi = x[1], yr = y[0], yi = y[1];
      if (g.kind == GateKind::H) {
        x[0] = r * (xr + yr);
        x[1] = r * (xi + yi);
        y[0] = r * (xr - yr);
        y[1] = r * (xi - yi);
      } else {
        x[0] = c * xr + s * yi;
        x[1] = c * xi - s * yr;
        y[0] = c * yr + s * xi;
        y[1] = c * yi - s * xr;
      }
    }
}

}  // namespace

CircuitSimulator::CircuitSimulator(const Circuit& circuit, const SimulatorOptions& options)
    : circuit_(circuit) {
  circuit_.validate();
  const auto n = static_cast<std::size_t>(circuit_.n_qubits);
  check_width(n, options);
  const auto& gates = circuit_.gates;
  std::size_t i = 0;
  if (gates.size() >= n && n > 0) {
    std::vector<bool> seen(n, false);
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      ok = gates[k].kind == GateKind::H && !seen[static_cast<std::size_t>(gates[k].q0)];
      if (ok) seen[static_cast<std::size_t>(gates[k].q0)] = true;
    }
    if (ok) {
      starts_uniform_ = true;
      i = n;
    }
  }
  while (i < gates.size()) {
    if (is_local(gates[i].kind)) {
      LocalRun run;
      while (i < gates.size() && is_local(gates[i].kind)) run.gates.push_back(gates[i++]);
      steps_.push_back({StepKind::Local, locals_.size()});
      locals_.push_back(std::move(run));
      continue;
    }
    if (!is_diagonal(gates[i].kind)) {
      steps_.push_back({StepKind::Gate, i++});
      continue;
    }
    DiagonalRun run;
    while (i < gates.size() && is_diagonal(gates[i].kind)) run.gates.push_back(gates[i++]);
    int shared = run.gates.front().angle.param;
    bool any_literal = false;
    for (const Gate& g : run.gates) {
      if (g.angle.param != shared) shared = -2;
      if (g.angle.literal != 0.0) any_literal = true;
    }
    if (shared >= 0) {
      run.shared_param = shared;
      run.table = energy_table(
          diagonal_model(n, run.gates, [](const Gate& g) { return g.angle.scale / 2.0; }));
      if (any_literal)
        run.literal = energy_table(
            diagonal_model(n, run.gates, [](const Gate& g) { return g.angle.literal / 2.0; }));
    }
    steps_.push_back({StepKind::Diagonal, runs_.size()});
    runs_.push_back(std::move(run));
  }
}

void CircuitSimulator::run_into(std::span<const double> params, StateVector& out) const {
  if (static_cast<int>(params.size()) < circuit_.n_params)
    throw std::invalid_argument("parameter vector shorter than the circuit expects");
  const auto n = static_cast<std::size_t>(circuit_.n_qubits);
  const std::size_t dim = std::size_t{1} << n;
  out.n_qubits = n;
  if (starts_uniform_) {
    out.amps.assign(dim, Amplitude{std::pow(2.0, -0.5 * static_cast<double>(n)), 0.0});
  } else {
    out.amps.assign(dim, Amplitude{0.0, 0.0});
    out.amps[0] = 1.0;
  }
  std::vector<double> phase;
  const std::size_t block_bits = std::min(n, kBlockQubits);
  const std::size_t block = std::size_t{1} << block_bits;
  for (const Step& step : steps_) {
    if (step.kind == StepKind::Gate) {
      apply_gate(out, circuit_.gates[step.index], params);
      continue;
    }
    if (step.kind == StepKind::Local) {
      const auto& run = locals_[step.index].gates;
      // Gates on different qubits commute, so low and high groups may be split.
      for (std::size_t off = 0; off < dim; off += block)
        for (const Gate& g : run)
          if (static_cast<std::size_t>(g.q0) < block_bits) apply_local(out.amps, g, params, off, block);
      for (const Gate& g : run)
        if (static_cast<std::size_t>(g.q0) >= block_bits) apply_local(out.amps, g, params, 0, dim);
      continue;
    }
    const DiagonalRun& run = runs_[step.index];
    if (run.shared_param >= 0) {
      const double t = params[static_cast<std::size_t>(run.shared_param)];
      phase.resize(dim);
      for (std::size_t z = 0; z < dim; ++z) phase[z] = t * run.table[z];
      if (!run.literal.empty())
        for (std::size_t z = 0; z < dim; ++z) phase[z] += run.literal[z];
    } else {
      phase = energy_table(diagonal_model(
          n, run.gates, [&](const Gate& g) { return g.angle.resolve(params) / 2.0; }));
    }
    apply_phase_table(out.amps, phase);
  }
}

StateVector CircuitSimulator::run(std::span<const double> params) const {
  StateVector sv;
  run_into(params, sv);
  return sv;
}

StateVector simulate(const Circuit& c, std::span<const double> params,
                     const SimulatorOptions& options) {
  return CircuitSimulator(c, options).run(params);
}

StateVector simulate(const Circuit& c, const ParamVector& params, const SimulatorOptions& options) {
  return simulate(c, std::span<const double>(params.values), options);
}

StateVector simulate_gatewise(const Circuit& c, std::span<const double> params,
                              const SimulatorOptions& options) {
  c.validate();
  check_width(static_cast<std::size_t>(c.n_qubits), options);
  if (static_cast<int>(params.size()) < c.n_params)
    throw std::invalid_argument("parameter vector shorter than the circuit expects");
  StateVector sv = StateVector::zero(static_cast<std::size_t>(c.n_qubits));
  for (const Gate& g : c.gates) apply_gate(sv, g, params);
  return sv;
}

// ---------------------------------------------------------------------------
// Measurement

double expectation(const StateVector& sv, std::span<const double> energies) {
  if (energies.size() != sv.amps.size())
    throw std::invalid_argument("energy table does not match state dimension");
  double e = 0.0;
  for (std::size_t z = 0; z < energies.size(); ++z) e += std::norm(sv.amps[z]) * energies[z];
  return e;
}

double expectation(const StateVector& sv, const IsingModel& m) {
  if (m.n_qubits != sv.n_qubits)
    throw std::invalid_argument("model and state have different qubit counts");
  return expectation(sv, energy_table(m));
}

ShotDistribution sample(const StateVector& sv, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample needs shots >= 1");
  std::vector<double> cdf(sv.amps.size());
  double acc = 0.0;
  for (std::size_t z = 0; z < cdf.size(); ++z) {
    acc += std::norm(sv.amps[z]);
    cdf[z] = acc;
  }
  Rng rng(seed);
  ShotDistribution dist;
  dist.n_qubits = sv.n_qubits;
  dist.shots = shots;
  for (std::uint64_t k = 0; k < shots; ++k) {
    const double u = uniform_unit(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t z = static_cast<std::size_t>(it - cdf.begin());
    if (z >= cdf.size()) z = cdf.size() - 1;
    ++dist.counts[z];
  }
  return dist;
}

double empirical_expectation(const ShotDistribution& dist, const IsingModel& m) {
  if (dist.shots == 0) throw std::invalid_argument("empty distribution");
  double e = 0.0;
  for (const auto& [z, n] : dist.counts) e += static_cast<double>(n) * m.energy(z);
  return e / static_cast<double>(dist.shots);
}

std::string format_counts(const ShotDistribution& dist) {
  std::ostringstream out;
  for (const auto& [z, n] : dist.counts) out << to_bitstring(z, dist.n_qubits) << ' ' << n << '\n';
  return out.str();
}

ShotDistribution parse_counts(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  ShotDistribution dist;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream f(line);
    std::string bits;
    std::uint64_t n = 0;
    if (!(f >> bits)) continue;
    if (!(f >> n)) throw ParseError(lineno, "expected '<bitstring> <count>'");
    if (first) {
      dist.n_qubits = bits.size();
      first = false;
    } else if (bits.size() != dist.n_qubits) {
      throw ParseError(lineno, "bitstring width changes");
    }
    try {
      dist.counts[parse_bitstring(bits)] += n;
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    dist.shots += n;
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Gradients and objectives

std::vector<double> gradient(const Objective& f, std::span<const double> x, double step) {
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = f(probe);
    probe[i] = x[i] - step;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

std::vector<double> gradient(const IsingModel& m, const Circuit& c, const ParamVector& params,
                             double step) {
  ExpectationObjective objective(m, c);
  return gradient([&](std::span<const double> x) { return objective(x); },
                  std::span<const double>(params.values), step);
}

ExpectationObjective::ExpectationObjective(const IsingModel& m, const Circuit& c,
                                           const SimulatorOptions& options)
    : ExpectationObjective(energy_table(m), c, options) {
  if (m.n_qubits != static_cast<std::size_t>(c.n_qubits))
    throw std::invalid_argument("model and circuit have different qubit counts");
}

ExpectationObjective::ExpectationObjective(std::vector<double> energies, const Circuit& c,
                                           const SimulatorOptions& options)
    : energies_(std::move(energies)), sim_(c, options) {
  if (energies_.size() != (std::size_t{1} << static_cast<std::size_t>(c.n_qubits)))
    throw std::invalid_argument("energy table does not match circuit width");
}

double ExpectationObjective::operator()(std::span<const double> params) const {
  sim_.run_into(params, buffer_);
  return expectation(buffer_, energies_);
}

}  // namespace trafficqaoa
