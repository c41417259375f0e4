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
#include <limits>

#include "trafficqaoa/experiments.hpp"
#include "trafficqaoa/metrics.hpp"

using namespace trafficqaoa;

namespace {

std::filesystem::path fixture(const char* name) {
  return std::filesystem::path(FIXTURE_DIR) / name;
}

IsingModel random_model(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  IsingModel m;
  m.n_qubits = n;
  for (std::size_t u = 0; u < n; ++u) {
    m.h[u] = nd(rng);
    for (std::size_t v = u + 1; v < n; ++v) m.J[{u, v}] = nd(rng);
  }
  m.constant = 1.5;
  return m;
}

// Smallest K with 1 - (1 - p)^K >= 0.99, by counting up.
std::uint64_t brute_k99(double p) {
  std::uint64_t k = 1;
  while (1.0 - std::pow(1.0 - p, static_cast<double>(k)) < 0.99) ++k;
  return k;
}

}  // namespace

TEST_CASE("Approximation measures", "[metrics]") {
  auto m = random_model(5, 1);
  auto s = exhaustive_spectrum(m);
  SECTION("ground state") {
    auto r = approx_measures(StateVector::basis(5, s.ground_states[0]), m, s);
    CHECK(r.r_true == Catch::Approx(1.0).margin(1e-12));
    CHECK(r.r_random == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("uniform state") {
    auto r = approx_measures(StateVector::uniform(5), m, s);
    CHECK(std::abs(r.r_random) < 1e-9);
    CHECK(r.e_random == Catch::Approx(1.5).margin(1e-12));
  }
  SECTION("highest state") {
    Bitstring top = 0;
    for (Bitstring z = 0; z < 32; ++z)
      if (m.energy(z) > m.energy(top)) top = z;
    auto r = approx_measures(StateVector::basis(5, top), m, s);
    CHECK(std::abs(r.r_true) < 1e-12);
    CHECK(r.r_random < 0.0);
  }
  SECTION("shots") {
    ShotDistribution d;
    d.n_qubits = 5;
    d.counts = {{s.ground_states[0], 10}};
    d.shots = 10;
    auto r = approx_measures(d, m, s);
    CHECK(r.source == ExpectationSource::Shots);
    CHECK(r.r_true == Catch::Approx(1.0));
  }
  SECTION("flat spectrum") {
    IsingModel flat;
    flat.n_qubits = 2;
    auto fs = exhaustive_spectrum(flat);
    CHECK_THROWS_AS(approx_measures(0.0, fs), std::invalid_argument);
  }
  SECTION("range") {
    Rng rng(2);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 20; ++t) {
      StateVector sv;
      sv.n_qubits = 5;
      for (int z = 0; z < 32; ++z) sv.amps.emplace_back(nd(rng), nd(rng));
      const double norm = std::sqrt(sv.norm_squared());
      for (auto& a : sv.amps) a /= norm;
      auto r = approx_measures(sv, m, s);
      CHECK(r.r_true >= -1e-12);
      CHECK(r.r_true <= 1.0 + 1e-12);
      CHECK(r.r_random <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("Solution extraction", "[metrics]") {
  auto m = random_model(6, 3);
  auto s = exhaustive_spectrum(m);
  SECTION("single outcome") {
    ShotDistribution d;
    d.n_qubits = 6;
    d.counts = {{17, 5}};
    d.shots = 5;
    auto sol = extract_solutions(d, m);
    CHECK(sol.best == 17);
    CHECK(sol.most_probable == 17);
  }
  SECTION("ties go to the smallest state") {
    ShotDistribution d;
    d.n_qubits = 6;
    d.counts = {{9, 4}, {3, 4}, {40, 1}};
    d.shots = 9;
    CHECK(extract_solutions(d, m).most_probable == 3);
  }
  SECTION("random distributions match a rescan") {
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
      ShotDistribution d;
      d.n_qubits = 6;
      for (int k = 0; k < 12; ++k) {
        const auto z = uniform_index(rng, 64);
        const auto c = 1 + uniform_index(rng, 5);
        d.counts[z] += c;
        d.shots += c;
      }
      if (t % 2 == 0) {
        d.counts[s.ground_states[0]] += 1;
        d.shots += 1;
      }
      Bitstring best = d.counts.begin()->first, top = best;
      for (const auto& [z, c] : d.counts) {
        if (m.energy(z) < m.energy(best)) best = z;
        if (c > d.counts.at(top)) top = z;
      }
      auto sol = extract_solutions(d, m);
      CHECK(sol.best == best);
      CHECK(sol.most_probable == top);
      if (t % 2 == 0) CHECK(sol.best == s.ground_states[0]);
    }
  }
}

TEST_CASE("Acceptable-state probability", "[metrics]") {
  auto m = random_model(6, 5);
  auto s = exhaustive_spectrum(m);
  SECTION("threshold zero") {
    // The cut is strict, so only the highest-energy states are rejected.
    auto a = acceptable_probability(StateVector::uniform(6), m, s, 0.0);
    std::size_t top = 0;
    for (Bitstring z = 0; z < 64; ++z) top += m.energy(z) == s.e_max;
    CHECK(a.p_single == Catch::Approx(1.0 - static_cast<double>(top) / 64.0));
    CHECK(acceptable_probability(StateVector::uniform(6), m, s, -1e-9).p_single ==
          Catch::Approx(1.0));
  }
  SECTION("ground state") {
    auto a = acceptable_probability(StateVector::basis(6, s.ground_states[0]), m, s, 0.8);
    CHECK(a.p_single == Catch::Approx(1.0));
  }
  SECTION("uniform state equals the random baseline") {
    auto net = load_network_file(fixture("corridors.net"));
    auto p = make_problem(build_instance(net, std::vector<CarSpec>(3, {0, 3, 3}), 3));
    auto a = acceptable_probability(StateVector::uniform(9), p.ising, p.spectrum);
    std::size_t qualifying = 0;
    for (Bitstring z = 0; z < 512; ++z)
      if ((p.spectrum.e_max - p.energies[z]) / (p.spectrum.e_max - p.spectrum.e_min) > 0.8)
        ++qualifying;
    CHECK(a.random_baseline == Catch::Approx(static_cast<double>(qualifying) / 512.0).epsilon(1e-12));
    CHECK(a.p_single == Catch::Approx(a.random_baseline).epsilon(1e-12));
  }
  SECTION("shots agree with the statevector") {
    for (std::size_t n : {4u, 6u, 8u}) {
      auto mm = random_model(n, 10 + n);
      auto ss = exhaustive_spectrum(mm);
      auto sv = simulate(build_qaoa(mm, 1), std::vector<double>{0.3, 0.4});
      auto exact = acceptable_probability(sv, mm, ss, 0.6);
      const std::uint64_t shots = 100000;
      auto observed = acceptable_probability(sample(sv, shots, n), mm, ss, 0.6);
      const double sigma = std::sqrt(exact.p_single * (1 - exact.p_single) / shots);
      CHECK(std::abs(observed.p_single - exact.p_single) <= 3 * sigma + 1e-12);
    }
  }
}

TEST_CASE("Shots for 99% confidence", "[metrics][k99]") {
  CHECK(shots_for_confidence(0.5) == 7);
  CHECK(shots_for_confidence(0.9) == 2);
  CHECK(shots_for_confidence(0.99) == 1);
  CHECK(shots_for_confidence(1.0) == 1);
  CHECK_FALSE(shots_for_confidence(0.0).has_value());
  CHECK_FALSE(shots_for_confidence(-0.1).has_value());
  std::uint64_t previous = std::numeric_limits<std::uint64_t>::max();
  for (int i = 1; i <= 100; ++i) {
    const double p = i / 101.0;
    const auto k = shots_for_confidence(p);
    REQUIRE(k.has_value());
    CHECK(*k <= previous);
    CHECK(*k == brute_k99(p));
    previous = *k;
  }
}

TEST_CASE("Runtime estimates", "[metrics][runtime]") {
  auto r = estimate_runtime(0.5, 2.0);
  CHECK(r.k99 == 7);
  CHECK(r.t_total == 14.0);
  auto never = estimate_runtime(0.0, 1.0);
  CHECK_FALSE(never.k99);
  CHECK(std::isinf(never.t_total));

  auto series = [](std::vector<double> totals, double scale) {
    std::vector<RuntimeEstimate> out;
    for (double t : totals) {
      RuntimeEstimate e;
      e.t_single = scale;
      e.t_total = t * scale;
      out.push_back(e);
    }
    return out;
  };
  CHECK(runtime_ratio(series({3, 3, 3}, 1)) == std::vector<double>{1, 1, 1});
  CHECK(runtime_ratio(series({2, 4, 8}, 1)) == std::vector<double>{1, 2, 4});
  CHECK(runtime_ratio(series({2, 4, 8}, 10)) == runtime_ratio(series({2, 4, 8}, 1)));
  CHECK_THROWS(runtime_ratio(series({0, 4}, 1)));
}
