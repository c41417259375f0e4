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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trafficqaoa/common.hpp"

namespace trafficqaoa {

using NodeId = std::int64_t;
using SegmentId = std::int64_t;

struct Segment {
  SegmentId id;
  NodeId u;
  NodeId v;
  double weight;  // d_k > 0
};

// Undirected road graph. Nodes and segments are kept sorted by id so that
// index order and id order agree; path tie-breaks rely on this.
class RoadNetwork {
 public:
  struct Arc {
    std::size_t segment;  // index into segments()
    std::size_t to;       // node index
  };

  RoadNetwork() = default;
  // Throws std::invalid_argument on duplicate ids, dangling endpoints,
  // self-loops or nonpositive weights.
  RoadNetwork(std::vector<NodeId> nodes, std::vector<Segment> segments);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_segments() const { return segments_.size(); }

  bool has_node(NodeId id) const { return node_index_.count(id) != 0; }
  std::size_t node_index(NodeId id) const;
  std::size_t segment_index(SegmentId id) const;
  const Segment& segment(SegmentId id) const {
    return segments_[segment_index(id)];
  }
  // Arcs out of a node, sorted by (neighbour id, segment id).
  const std::vector<Arc>& arcs(std::size_t node) const { return adjacency_[node]; }

 private:
  std::vector<NodeId> nodes_;
  std::vector<Segment> segments_;
  std::unordered_map<NodeId, std::size_t> node_index_;
  std::unordered_map<SegmentId, std::size_t> segment_index_;
  std::vector<std::vector<Arc>> adjacency_;
};

// One candidate route of one car: a simple edge path origin -> destination.
struct Route {
  std::size_t car = 0;
  std::size_t route_index = 0;
  std::vector<SegmentId> segments;
  std::vector<NodeId> nodes;  // nodes.size() == segments.size() + 1
  double length = 0.0;

  NodeId origin() const { return nodes.front(); }
  NodeId destination() const { return nodes.back(); }
};

// Checks contiguity, simplicity and the cached length against the network.
bool is_valid_route(const RoadNetwork& net, const Route& route);

struct CarSpec {
  NodeId origin;
  NodeId destination;
  std::size_t route_count;
};

struct InstanceOptions {
  std::size_t pool_size = 1000;
  // When set, opposite traversals of a segment are separate congestion terms.
  bool directed_congestion = false;
};

struct TrafficInstance {
  RoadNetwork network;
  std::vector<std::vector<Route>> cars;
  std::uint64_t seed = 0;
  bool directed_congestion = false;

  std::size_t num_cars() const { return cars.size(); }
  std::size_t num_variables() const;
};

// Parses the line-oriented network format:
//   # comment
//   node <id>
//   edge <id> <u> <v> <weight>
RoadNetwork load_network(std::string_view text);
RoadNetwork load_network_file(const std::filesystem::path& path);
std::string format_network(const RoadNetwork& net);

// Yen's algorithm: up to k loopless routes, shortest first. Equal lengths are
// ordered lexicographically by node-id sequence, then segment-id sequence.
// Throws std::runtime_error when no path exists.
std::vector<Route> k_shortest_routes(const RoadNetwork& net, NodeId origin,
                                     NodeId destination, std::size_t k);

// Route 0 of each car is its shortest path; the rest are drawn uniformly
// without replacement from the k-shortest pool of size options.pool_size.
TrafficInstance build_instance(const RoadNetwork& net,
                               const std::vector<CarSpec>& cars,
                               std::uint64_t seed,
                               const InstanceOptions& options = {});

// rows x cols lattice with node id r*cols+c and weights drawn uniformly from
// [min_weight, max_weight] (constant weights when they coincide).
RoadNetwork grid_network(std::size_t rows, std::size_t cols, double min_weight,
                         double max_weight, std::uint64_t seed);

}  // namespace trafficqaoa
