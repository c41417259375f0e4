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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "trafficqaoa/circuit.hpp"
#include "trafficqaoa/simulator.hpp"

using namespace trafficqaoa;

namespace {

IsingModel random_model(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  IsingModel m;
  m.n_qubits = n;
  for (std::size_t u = 0; u < n; ++u) {
    m.h[u] = nd(rng);
    for (std::size_t v = u + 1; v < n; ++v)
      if (uniform_unit(rng) < 0.7) m.J[{u, v}] = nd(rng);
  }
  m.constant = nd(rng);
  return m;
}

double overlap_deficit(const StateVector& a, const oracle::CVec& b) {
  std::complex<double> s = 0.0;
  for (std::size_t z = 0; z < a.amps.size(); ++z) s += std::conj(b(static_cast<int>(z))) * a.amps[z];
  return 1.0 - std::abs(s);
}

// One-qubit p = 1 landscape: <H> = c - h sin(2b) sin(2gh).
double single_qubit_energy(double c, double h, double g, double b) {
  return c - h * std::sin(2 * b) * std::sin(2 * g * h);
}

}  // namespace

TEST_CASE("Trivial evolutions leave the uniform state", "[simulator]") {
  auto m = random_model(4, 1);
  Circuit hs;
  hs.n_qubits = 4;
  for (int q = 0; q < 4; ++q) hs.gates.push_back({GateKind::H, q});
  auto uni = simulate(hs, std::vector<double>{});
  for (auto a : uni.amps) CHECK(std::abs(a - std::complex<double>(0.25, 0.0)) < 1e-14);
  auto c = build_qaoa(m, 2);
  auto sv = simulate(c, std::vector<double>{0, 0, 0, 0});
  for (auto a : sv.amps) CHECK(std::abs(std::abs(a) - 0.25) < 1e-14);
  CHECK(expectation(sv, m) == Catch::Approx(m.constant).margin(1e-12));
}

TEST_CASE("QAOA states match matrix exponentials", "[simulator][oracle]") {
  Rng rng(2024);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int p = 1; p <= 2; ++p) {
      auto m = random_model(n, 10 * n + static_cast<std::size_t>(p));
      auto c = build_qaoa(m, p);
      std::vector<double> g, b;
      for (int l = 0; l < p; ++l) {
        g.push_back(2 * uniform_unit(rng) - 1);
        b.push_back(2 * uniform_unit(rng) - 1);
      }
      auto v = ParamVector::standard(g, b);
      auto ref = oracle::qaoa_state(m, g, b);
      INFO("n " << n << " p " << p);
      CHECK(overlap_deficit(simulate(c, v), ref) < 1e-10);
      CHECK(overlap_deficit(simulate_gatewise(c, v.values), ref) < 1e-10);
    }
}

TEST_CASE("Fast and gatewise paths agree", "[simulator]") {
  Rng rng(5);
  for (std::size_t n : {3u, 8u, 13u}) {
    auto m = random_model(n, n);
    auto c = build_qaoa(m, 3);
    std::vector<double> params;
    for (int k = 0; k < 6; ++k) params.push_back(2 * uniform_unit(rng) - 1);
    auto fast = simulate(c, params);
    auto slow = simulate_gatewise(c, params);
    double worst = 0.0;
    for (std::size_t z = 0; z < fast.amps.size(); ++z)
      worst = std::max(worst, std::abs(fast.amps[z] - slow.amps[z]));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("Gates preserve the norm", "[simulator][property]") {
  auto m = random_model(5, 3);
  auto c = build_qaoa(m, 2);
  c.gates.push_back({GateKind::CNOT, 0, 3});
  c.gates.push_back({GateKind::SWAP, 1, 4});
  std::vector<double> params{0.3, -0.8, 0.5, 1.1};
  auto sv = StateVector::zero(5);
  for (const auto& g : c.gates) {
    apply_gate(sv, g, params);
    CHECK(std::abs(sv.norm_squared() - 1.0) < 1e-9);
  }
}

TEST_CASE("Expectation values", "[simulator]") {
  auto m = random_model(5, 8);
  SECTION("uniform state gives the constant") {
    CHECK(expectation(StateVector::uniform(5), m) == Catch::Approx(m.constant).margin(1e-12));
  }
  SECTION("basis states give their energy") {
    for (Bitstring z : {0u, 7u, 19u, 31u})
      CHECK(expectation(StateVector::basis(5, z), m) == Catch::Approx(m.energy(z)).margin(1e-12));
  }
  SECTION("random states match the dense form and stay in the spectrum") {
    Rng rng(4);
    std::normal_distribution<double> nd;
    auto s = exhaustive_spectrum(m);
    for (int t = 0; t < 10; ++t) {
      oracle::CVec psi(32);
      for (int z = 0; z < 32; ++z) psi(z) = {nd(rng), nd(rng)};
      psi.normalize();
      oracle::CMat hc = oracle::CMat::Zero(32, 32);
      for (int z = 0; z < 32; ++z) hc(z, z) = oracle::ising_energy(m, static_cast<Bitstring>(z));
      const double dense = (psi.adjoint() * hc * psi)(0, 0).real();
      StateVector sv;
      sv.n_qubits = 5;
      for (int z = 0; z < 32; ++z) sv.amps.push_back(psi(z));
      const double e = expectation(sv, m);
      CHECK(e == Catch::Approx(dense).margin(1e-9));
      CHECK(e >= s.e_min - 1e-12);
      CHECK(e <= s.e_max + 1e-12);
    }
  }
}

TEST_CASE("Mixer translation symmetry", "[simulator][property]") {
  const double pi = std::numbers::pi;
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    auto m = random_model(5, 200 + static_cast<std::uint64_t>(t));
    auto c = build_qaoa(m, 2);
    std::vector<double> x{uniform_unit(rng), uniform_unit(rng), uniform_unit(rng), uniform_unit(rng)};
    auto base = simulate(c, x).probabilities();
    for (double shift : {pi, -pi}) {
      auto y = x;
      y[2 + static_cast<std::size_t>(t % 2)] += shift;
      auto moved = simulate(c, y).probabilities();
      for (std::size_t z = 0; z < base.size(); ++z) CHECK(std::abs(base[z] - moved[z]) < 1e-10);
    }
  }
}

TEST_CASE("Sampling", "[simulator][sampling]") {
  SECTION("basis states") {
    auto d = sample(StateVector::basis(3, 5), 1000, 1);
    REQUIRE(d.counts.size() == 1);
    CHECK(d.counts.at(5) == 1000);
    CHECK(d.shots == 1000);
  }
  SECTION("fair coin") {
    auto d = sample(StateVector::uniform(1), 1000000, 2);
    // 3 sd of a binomial(1e6, 1/2) frequency is 0.0015.
    CHECK(std::abs(d.frequency(0) - 0.5) < 0.002);
    CHECK(d.counts.at(0) + d.counts.at(1) == 1000000);
  }
  SECTION("seeded") {
    auto m = random_model(4, 3);
    auto sv = simulate(build_qaoa(m, 1), std::vector<double>{0.4, 0.3});
    CHECK(sample(sv, 5000, 9).counts == sample(sv, 5000, 9).counts);
    CHECK(sample(sv, 5000, 9).counts != sample(sv, 5000, 10).counts);
  }
  SECTION("goodness of fit") {
    // Chi-square critical value at alpha = 0.001 with 15 degrees of freedom.
    const double critical = 37.697;
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto m = random_model(4, 40 + seed);
      auto sv = simulate(build_qaoa(m, 1), std::vector<double>{0.7, -0.4});
      auto probs = sv.probabilities();
      const std::uint64_t shots = 100000;
      auto d = sample(sv, shots, seed);
      double chi2 = 0.0;
      for (Bitstring z = 0; z < 16; ++z) {
        const double expected = probs[z] * static_cast<double>(shots);
        const double seen = d.counts.count(z) ? static_cast<double>(d.counts.at(z)) : 0.0;
        chi2 += (seen - expected) * (seen - expected) / expected;
      }
      if (chi2 > critical) ++failures;
    }
    CHECK(failures == 0);
  }
  SECTION("counts text round trip") {
    auto sv = simulate(build_qaoa(random_model(3, 1), 1), std::vector<double>{0.4, 0.3});
    auto d = sample(sv, 777, 3);
    auto back = parse_counts(format_counts(d));
    CHECK(back.counts == d.counts);
    CHECK(back.shots == 777);
    CHECK(back.n_qubits == 3);
  }
  SECTION("empirical expectation uses frequencies") {
    auto m = random_model(3, 6);
    ShotDistribution d;
    d.n_qubits = 3;
    d.counts = {{1, 3}, {6, 1}};
    d.shots = 4;
    CHECK(empirical_expectation(d, m) ==
          Catch::Approx(0.75 * m.energy(Bitstring{1}) + 0.25 * m.energy(Bitstring{6})));
  }
}

TEST_CASE("Width cap", "[simulator]") {
  Circuit c;
  c.n_qubits = 25;
  CHECK_THROWS_AS(simulate(c, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("Finite-difference gradients", "[simulator][gradient]") {
  IsingModel m;
  m.n_qubits = 1;
  m.h[0] = 1.0;
  m.constant = 0.25;
  auto c = build_qaoa(m, 1);
  SECTION("closed-form single qubit") {
    for (double g : {0.2, 0.7, -1.1})
      for (double b : {0.1, -0.6, 0.9}) {
        auto v = ParamVector::standard(std::vector<double>{g}, std::vector<double>{b});
        CHECK(expectation(simulate(c, v), m) ==
              Catch::Approx(single_qubit_energy(0.25, 1.0, g, b)).margin(1e-12));
        auto grad = gradient(m, c, v);
        CHECK(grad[1] == Catch::Approx(-2.0 * std::cos(2 * b) * std::sin(2 * g)).margin(1e-6));
        CHECK(grad[0] == Catch::Approx(-2.0 * std::sin(2 * b) * std::cos(2 * g)).margin(1e-6));
      }
  }
  SECTION("one-sided and central agree at gamma = 0") {
    auto v = ParamVector::standard(std::vector<double>{0.0}, std::vector<double>{0.3});
    ExpectationObjective f(m, c);
    const double h = 1e-6;
    std::vector<double> x = v.values, xp = v.values;
    xp[0] += h;
    const double one_sided = (f(xp) - f(x)) / h;
    CHECK(gradient(m, c, v)[0] == Catch::Approx(one_sided).margin(1e-5));
  }
}
