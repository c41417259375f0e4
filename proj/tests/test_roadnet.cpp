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
#include <set>

#include "oracles.hpp"
#include "trafficqaoa/roadnet.hpp"

using namespace trafficqaoa;

namespace {

std::filesystem::path fixture(const char* name) {
  return std::filesystem::path(FIXTURE_DIR) / name;
}

// Connected random graph: a random spanning tree plus extra edges.
RoadNetwork random_graph(std::size_t n, double extra, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<NodeId> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(static_cast<NodeId>(i));
  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<Segment> segs;
  auto add = [&](NodeId a, NodeId b) {
    if (a == b) return;
    auto key = std::minmax(a, b);
    if (!used.insert(key).second) return;
    double w = 1.0 + static_cast<double>(uniform_index(rng, 4));
    segs.push_back({static_cast<SegmentId>(segs.size()), a, b, w});
  };
  for (std::size_t i = 1; i < n; ++i)
    add(static_cast<NodeId>(i), static_cast<NodeId>(uniform_index(rng, i)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (uniform_unit(rng) < extra) add(static_cast<NodeId>(a), static_cast<NodeId>(b));
  return RoadNetwork(nodes, segs);
}

bool is_simple(const Route& r) {
  std::set<NodeId> seen(r.nodes.begin(), r.nodes.end());
  return seen.size() == r.nodes.size();
}

}  // namespace

TEST_CASE("Network files load", "[roadnet]") {
  SECTION("two nodes, one segment") {
    auto net = load_network_file(fixture("two_node.net"));
    CHECK(net.num_nodes() == 2);
    CHECK(net.num_segments() == 1);
    CHECK(net.segments()[0].weight == 1.0);
  }
  SECTION("4x4 grid") {
    auto net = load_network_file(fixture("grid4x4.net"));
    // 4 rows of 3 horizontal edges plus 4 columns of 3 vertical edges.
    CHECK(net.num_nodes() == 16);
    CHECK(net.num_segments() == 2 * 4 * 3);
  }
  SECTION("unknown node is rejected") {
    CHECK_THROWS(load_network_file(fixture("unknown_node.net")));
  }
  SECTION("nonpositive weight names its line") {
    try {
      load_network_file(fixture("zero_weight.net"));
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() > 0);
    }
  }
  SECTION("malformed record") {
    CHECK_THROWS_AS(load_network("node 0\nnode 1\nedge 0 0 1\n"), ParseError);
    CHECK_THROWS_AS(load_network("node 0\nbogus 1\n"), ParseError);
  }
  SECTION("format round trip") {
    auto net = load_network_file(fixture("corridors.net"));
    auto again = load_network(format_network(net));
    REQUIRE(again.num_segments() == net.num_segments());
    for (std::size_t k = 0; k < net.num_segments(); ++k) {
      CHECK(again.segments()[k].u == net.segments()[k].u);
      CHECK(again.segments()[k].weight == net.segments()[k].weight);
    }
  }
}

TEST_CASE("k shortest routes", "[roadnet][yen]") {
  auto tri = load_network_file(fixture("triangle.net"));
  SECTION("triangle, k = 2") {
    auto routes = k_shortest_routes(tri, 0, 2, 2);
    REQUIRE(routes.size() == 2);
    CHECK(routes[0].length == 2.0);
    CHECK(routes[1].length == 3.0);
    CHECK(routes[0].nodes == std::vector<NodeId>{0, 1, 2});
    CHECK(routes[1].nodes == std::vector<NodeId>{0, 2});
  }
  SECTION("k beyond the number of simple paths") {
    auto routes = k_shortest_routes(tri, 0, 2, 10);
    CHECK(routes.size() == 2);
  }
  SECTION("two nodes, k = 1") {
    auto net = load_network_file(fixture("two_node.net"));
    auto routes = k_shortest_routes(net, net.nodes()[0], net.nodes()[1], 1);
    REQUIRE(routes.size() == 1);
    CHECK(routes[0].segments.size() == 1);
  }
  SECTION("no path") {
    RoadNetwork net({0, 1, 2}, {{0, 0, 1, 1.0}});
    CHECK_THROWS_AS(k_shortest_routes(net, 0, 2, 1), std::runtime_error);
  }
  SECTION("ties follow node-id order") {
    auto grid = load_network_file(fixture("grid4x4.net"));
    auto routes = k_shortest_routes(grid, 0, 5, 5);
    REQUIRE(routes.size() >= 2);
    CHECK(routes[0].length == routes[1].length);
    CHECK(routes[0].nodes < routes[1].nodes);
  }
}

TEST_CASE("Yen agrees with exhaustive path enumeration", "[roadnet][yen][property]") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const std::size_t n = 4 + seed % 5;  // 4..8 nodes
    auto net = random_graph(n, 0.35, seed);
    const NodeId from = 0;
    const NodeId to = static_cast<NodeId>(n - 1);
    const auto expected = oracle::all_path_lengths(net, from, to);
    const auto routes = k_shortest_routes(net, from, to, expected.size() + 3);
    INFO("seed " << seed);
    REQUIRE(routes.size() == expected.size());
    for (std::size_t i = 0; i < routes.size(); ++i) {
      CHECK(routes[i].length == Catch::Approx(expected[i]).margin(1e-12));
      CHECK(is_simple(routes[i]));
      CHECK(is_valid_route(net, routes[i]));
      if (i > 0) CHECK(routes[i - 1].length <= routes[i].length);
    }
    std::set<std::vector<SegmentId>> distinct;
    for (const auto& r : routes) distinct.insert(r.segments);
    CHECK(distinct.size() == routes.size());
  }
}

SCENARIO("Building traffic instances", "[roadnet][instance]") {
  GIVEN("the three-corridor town") {
    auto net = load_network_file(fixture("corridors.net"));
    WHEN("three cars each get three routes") {
      std::vector<CarSpec> cars(3, CarSpec{0, 3, 3});
      auto inst = build_instance(net, cars, 7);
      THEN("there are nine variables") {
        CHECK(inst.num_variables() == 9);
        for (const auto& routes : inst.cars) {
          REQUIRE(routes.size() == 3);
          CHECK(routes[0].length == 3.0);
          for (const auto& r : routes) {
            CHECK(r.origin() == 0);
            CHECK(r.destination() == 3);
            CHECK(is_valid_route(net, r));
          }
        }
      }
      THEN("the same seed gives the same instance") {
        auto again = build_instance(net, cars, 7);
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j)
            CHECK(again.cars[i][j].segments == inst.cars[i][j].segments);
      }
    }
    WHEN("one car gets one route") {
      auto inst = build_instance(net, {{0, 3, 1}}, 1);
      THEN("it is the shortest path") {
        CHECK(inst.num_variables() == 1);
        CHECK(inst.cars[0][0].nodes == std::vector<NodeId>{0, 1, 2, 3});
      }
    }
    WHEN("more routes are asked for than exist") {
      auto tri = load_network_file(fixture("triangle.net"));
      THEN("building fails") { CHECK_THROWS(build_instance(tri, {{0, 2, 3}}, 1)); }
    }
  }
}

TEST_CASE("Extra routes are drawn uniformly from the pool", "[roadnet][instance][property]") {
  // On the 4x4 grid corner to corner there are many simple paths; with a pool
  // of 10 and one extra route per car, each pool entry past the first should
  // be chosen about equally often.
  auto net = load_network_file(fixture("grid4x4.net"));
  InstanceOptions opt;
  opt.pool_size = 10;
  const auto pool = k_shortest_routes(net, 0, 15, 10);
  std::map<std::vector<SegmentId>, int> hits;
  const int trials = 900;
  for (int s = 0; s < trials; ++s) {
    auto inst = build_instance(net, {{0, 15, 2}}, static_cast<std::uint64_t>(s), opt);
    CHECK(inst.cars[0][0].segments == pool[0].segments);
    ++hits[inst.cars[0][1].segments];
  }
  CHECK(hits.size() == 9);
  for (const auto& [route, count] : hits) {
    // 100 expected per route, binomial sd ~9.4; 5 sd band.
    CHECK(count > 53);
    CHECK(count < 147);
  }
}

TEST_CASE("Grid networks", "[roadnet]") {
  auto g = grid_network(5, 5, 1.0, 2.0, 3);
  CHECK(g.num_nodes() == 25);
  CHECK(g.num_segments() == 40);
  for (const auto& s : g.segments()) {
    CHECK(s.weight >= 1.0);
    CHECK(s.weight <= 2.0);
  }
  auto same = grid_network(5, 5, 1.0, 2.0, 3);
  CHECK(same.segments()[7].weight == g.segments()[7].weight);
}
