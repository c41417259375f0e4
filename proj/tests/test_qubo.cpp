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

#include <algorithm>
#include <limits>

#include "oracles.hpp"
#include "trafficqaoa/experiments.hpp"
#include "trafficqaoa/qubo.hpp"

using namespace trafficqaoa;

namespace {

std::filesystem::path fixture(const char* name) {
  return std::filesystem::path(FIXTURE_DIR) / name;
}

Route make_route(const RoadNetwork& net, std::vector<NodeId> nodes, std::vector<SegmentId> segs) {
  Route r;
  r.nodes = std::move(nodes);
  r.segments = std::move(segs);
  for (auto s : r.segments) r.length += net.segment(s).weight;
  return r;
}

// Every car drives 0 -> 1 over the single segment of the two-node file.
TrafficInstance shared_segment_instance(std::size_t cars, std::size_t routes, double weight) {
  TrafficInstance inst;
  inst.network = RoadNetwork({0, 1}, {{0, 0, 1, weight}});
  inst.cars.assign(cars, {});
  for (std::size_t i = 0; i < cars; ++i)
    for (std::size_t j = 0; j < routes; ++j) {
      auto r = make_route(inst.network, {0, 1}, {0});
      r.car = i;
      r.route_index = j;
      inst.cars[i].push_back(r);
    }
  return inst;
}

TrafficInstance grid_instance(std::uint64_t seed, std::size_t cars, std::size_t routes) {
  auto net = load_network_file(fixture("grid4x4.net"));
  Rng rng(seed);
  std::vector<CarSpec> specs;
  for (std::size_t i = 0; i < cars; ++i) {
    NodeId a = static_cast<NodeId>(uniform_index(rng, 16));
    NodeId b = a;
    while (b == a) b = static_cast<NodeId>(uniform_index(rng, 16));
    specs.push_back({a, b, routes});
  }
  InstanceOptions opt;
  opt.pool_size = 30;
  return build_instance(net, specs, seed, opt);
}

bool one_hot(const TrafficInstance& inst, Bitstring q) {
  std::size_t u = 0;
  for (const auto& routes : inst.cars) {
    int n = 0;
    for (std::size_t j = 0; j < routes.size(); ++j, ++u) n += (q >> u) & 1U;
    if (n != 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Segment cost terms", "[qubo]") {
  SECTION("one route on a segment of weight 2") {
    auto inst = shared_segment_instance(1, 1, 2.0);
    auto f = segment_cost_terms(inst, SegmentId{0});
    CHECK(f.linear.at(0) == 2.0);
    CHECK(f.quadratic.empty());
    CHECK(f.constant == 0.0);
  }
  SECTION("two cars share a segment of weight 1") {
    auto inst = shared_segment_instance(2, 1, 1.0);
    auto f = segment_cost_terms(inst, SegmentId{0});
    CHECK(f.linear.at(0) == 1.0);
    CHECK(f.linear.at(1) == 1.0);
    CHECK(f.quadratic.at({0, 1}) == 2.0);
  }
}

TEST_CASE("Constraint terms", "[qubo]") {
  SECTION("one car, two routes") {
    auto inst = shared_segment_instance(1, 2, 1.0);
    auto b = constraint_terms(inst);
    CHECK(b.constant == 1.0);
    CHECK(b.linear.at(0) == -1.0);
    CHECK(b.linear.at(1) == -1.0);
    CHECK(b.quadratic.at({0, 1}) == 2.0);
  }
  SECTION("all zeros and one-hot") {
    auto inst = shared_segment_instance(3, 3, 1.0);
    auto b = constraint_terms(inst);
    CHECK(b.evaluate(Bitstring{0}) == 3.0);
    CHECK(b.evaluate(Bitstring{0b001'010'100}) == 0.0);
  }
}

TEST_CASE("Penalty weight", "[qubo][lambda]") {
  SECTION("four routes on one shared segment") {
    auto inst = shared_segment_instance(2, 2, 1.0);
    auto q = build_qubo(inst);
    // A(1111) = 4^2, B ranges over [0, 2].
    CHECK(q.lambda == Catch::Approx(8.0).epsilon(1e-12));
    CHECK_FALSE(q.lambda_warning);
  }
  SECTION("one route per car") {
    auto inst = shared_segment_instance(2, 1, 1.0);
    // True ranges: A over [0, 4], B over [0, 2].
    CHECK(build_qubo(inst).lambda == Catch::Approx(2.0));
    // The all-ones/all-zeros recipe divides by B(1,1) - B(0,0) = -2 and falls back.
    auto literal = build_qubo(inst, LambdaMode::CornerRange);
    CHECK(literal.lambda == 1.0);
    CHECK(literal.lambda_warning);
  }
  SECTION("equal ranges give one") {
    QuadraticForm a;
    a.n_vars = 2;
    a.add_linear(0, 1.0);  // A ranges over [0, 1], as does B of one 2-route car
    auto inst = shared_segment_instance(1, 2, 1.0);
    auto cal = calibrate_lambda(a, constraint_terms(inst), std::vector<std::size_t>{2});
    CHECK(cal.lambda == Catch::Approx(1.0));
  }
  SECTION("corner mode falls back for two-route cars") {
    auto inst = shared_segment_instance(2, 2, 1.0);
    auto q = build_qubo(inst, LambdaMode::CornerRange);
    CHECK(q.lambda == 1.0);
    CHECK(q.lambda_warning);
  }
  SECTION("corner mode with three routes per car") {
    auto inst = shared_segment_instance(2, 3, 1.0);
    auto q = build_qubo(inst, LambdaMode::CornerRange);
    // A(1..1) = 36; B(1..1) = 2 * 4 = 8; B(0..0) = 2.
    CHECK(q.lambda == Catch::Approx(6.0));
  }
}

TEST_CASE("Penalty weight matches exhaustive ranges", "[qubo][lambda][property]") {
  auto net = load_network_file(fixture("corridors.net"));
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    auto inst = build_instance(net, std::vector<CarSpec>(3, {0, 3, 3}), seed);
    auto q = build_qubo(inst);
    double amin = std::numeric_limits<double>::infinity(), amax = -amin;
    double bmin = amin, bmax = -amin;
    for (Bitstring z = 0; z < (Bitstring{1} << 9); ++z) {
      double a = oracle::congestion(inst, z), b = oracle::constraint(inst, z);
      amin = std::min(amin, a);
      amax = std::max(amax, a);
      bmin = std::min(bmin, b);
      bmax = std::max(bmax, b);
    }
    CHECK(q.lambda == Catch::Approx((amax - amin) / (bmax - bmin)).epsilon(1e-9));
  }
}

TEST_CASE("Expanded QUBO equals direct evaluation", "[qubo][property]") {
  for (std::uint64_t seed = 11; seed < 19; ++seed) {
    const std::size_t cars = 2 + seed % 3;
    auto inst = grid_instance(seed, cars, 3);
    auto q = build_qubo(inst);
    const std::size_t n = inst.num_variables();
    REQUIRE(n <= 14);
    double worst = 0.0;
    for (Bitstring z = 0; z < (Bitstring{1} << n); ++z) {
      const double a = oracle::congestion(inst, z);
      const double b = oracle::constraint(inst, z);
      worst = std::max(worst, std::abs(q.congestion.evaluate(z) - a));
      worst = std::max(worst, std::abs(q.constraint.evaluate(z) - b));
      worst = std::max(worst, std::abs(q.evaluate(z) - (a + q.lambda * b)));
      CHECK(a >= 0.0);
      CHECK(b >= 0.0);
      CHECK((b == 0.0) == one_hot(inst, z));
    }
    CHECK(worst < 1e-9);
    CHECK(q.lambda > 0.0);
    CHECK(q.congestion.evaluate(Bitstring{0}) == 0.0);
    CHECK(q.evaluate(Bitstring{0}) == Catch::Approx(q.lambda * static_cast<double>(cars)));
  }
}

TEST_CASE("Directed congestion splits opposite traversals", "[qubo]") {
  auto net = load_network_file(fixture("two_node.net"));
  TrafficInstance inst;
  inst.network = net;
  inst.cars = {{make_route(net, {0, 1}, {0})}, {make_route(net, {1, 0}, {0})}};
  inst.cars[1][0].car = 1;
  auto undirected = build_qubo(inst);
  inst.directed_congestion = true;
  auto directed = build_qubo(inst);
  CHECK(undirected.congestion.evaluate(Bitstring{0b11}) == 4.0);
  CHECK(directed.congestion.evaluate(Bitstring{0b11}) == 2.0);
}

TEST_CASE("Evaluation", "[qubo]") {
  auto net = load_network_file(fixture("corridors.net"));
  auto inst = build_instance(net, {{0, 3, 2}, {5, 7, 1}}, 5);
  auto q = build_qubo(inst);
  SECTION("one-hot without shared segments costs the route lengths") {
    // Car 0 takes its shortest route 0-1-2-3, car 1 takes its only route.
    const Bitstring z = 0b101;
    bool shared = false;
    for (auto s : inst.cars[0][0].segments)
      for (auto t : inst.cars[1][0].segments) shared |= s == t;
    REQUIRE_FALSE(shared);
    CHECK(q.evaluate(z) == Catch::Approx(inst.cars[0][0].length + inst.cars[1][0].length));
  }
  SECTION("bit vector form") {
    std::vector<std::uint8_t> bits{1, 0, 1};
    CHECK(q.evaluate(bits) == q.evaluate(Bitstring{0b101}));
    std::vector<std::uint8_t> wrong{1, 0};
    CHECK_THROWS_AS(q.evaluate(wrong), std::invalid_argument);
  }
  SECTION("index order runs routes first") {
    CHECK(q.index_of(0, 1) == 1);
    CHECK(q.index_of(1, 0) == 2);
  }
}

TEST_CASE("Minimizers satisfy the constraints", "[qubo][property]") {
  ProblemSpec spec;
  spec.cars = 3;
  spec.routes_per_car = 3;
  spec.pool_size = 50;
  auto net = load_network_file(fixture("grid4x4.net"));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto p = random_problem(net, spec, seed);
    for (auto g : p.spectrum.ground_states) CHECK(oracle::constraint(p.traffic, g) == 0.0);
  }
}
