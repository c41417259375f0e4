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

#include "trafficqaoa/roadnet.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trafficqaoa {

RoadNetwork::RoadNetwork(std::vector<NodeId> nodes, std::vector<Segment> segments)
    : nodes_(std::move(nodes)), segments_(std::move(segments)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    throw std::invalid_argument("duplicate node id");
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& a, const Segment& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) node_index_[nodes_[i]] = i;
  adjacency_.assign(nodes_.size(), {});
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const Segment& seg = segments_[s];
    if (!segment_index_.emplace(seg.id, s).second)
      throw std::invalid_argument("duplicate segment id " + std::to_string(seg.id));
    if (!has_node(seg.u) || !has_node(seg.v))
      throw std::invalid_argument("segment " + std::to_string(seg.id) +
                                  " references an unknown node");
    if (seg.u == seg.v)
      throw std::invalid_argument("segment " + std::to_string(seg.id) + " is a self-loop");
    if (!(seg.weight > 0.0) || !std::isfinite(seg.weight))
      throw std::invalid_argument("segment " + std::to_string(seg.id) +
                                  " has a nonpositive weight");
    const std::size_t a = node_index_.at(seg.u);
    const std::size_t b = node_index_.at(seg.v);
    adjacency_[a].push_back({s, b});
    adjacency_[b].push_back({s, a});
  }
  for (auto& arcs : adjacency_)
    std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
      return std::tie(x.to, x.segment) < std::tie(y.to, y.segment);
    });
}

std::size_t RoadNetwork::node_index(NodeId id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end())
    throw std::invalid_argument("unknown node " + std::to_string(id));
  return it->second;
}

std::size_t RoadNetwork::segment_index(SegmentId id) const {
  auto it = segment_index_.find(id);
  if (it == segment_index_.end())
    throw std::invalid_argument("unknown segment " + std::to_string(id));
  return it->second;
}

std::size_t TrafficInstance::num_variables() const {
  std::size_t n = 0;
  for (const auto& routes : cars) n += routes.size();
  return n;
}

bool is_valid_route(const RoadNetwork& net, const Route& route) {
  if (route.segments.empty() || route.nodes.size() != route.segments.size() + 1)
    return false;
  std::set<NodeId> seen(route.nodes.begin(), route.nodes.end());
  if (seen.size() != route.nodes.size()) return false;
  double length = 0.0;
  for (std::size_t i = 0; i < route.segments.size(); ++i) {
    if (!net.has_node(route.nodes[i])) return false;
    const Segment* seg = nullptr;
    try {
      seg = &net.segment(route.segments[i]);
    } catch (const std::invalid_argument&) {
      return false;
    }
    const NodeId a = route.nodes[i];
    const NodeId b = route.nodes[i + 1];
    if (!((seg->u == a && seg->v == b) || (seg->u == b && seg->v == a))) return false;
    length += seg->weight;
  }
  return length == route.length;
}

// ---------------------------------------------------------------------------
// Network file format

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::int64_t parse_int(const std::string& tok, std::size_t line, const char* field) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    throw ParseError(line, std::string("invalid ") + field + " '" + tok + "'");
  return v;
}

double parse_double(const std::string& tok, std::size_t line, const char* field) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    throw ParseError(line, std::string("invalid ") + field + " '" + tok + "'");
  return v;
}

}  // namespace

RoadNetwork load_network(std::string_view text) {
  std::vector<NodeId> nodes;
  std::vector<Segment> segments;
  std::vector<std::size_t> segment_lines;
  std::set<NodeId> node_set;
  std::set<SegmentId> segment_set;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const auto f = split_fields(raw);
    if (f.empty()) continue;
    if (f[0] == "node") {
      if (f.size() != 2) throw ParseError(lineno, "expected 'node <id>'");
      const NodeId id = parse_int(f[1], lineno, "node id");
      if (!node_set.insert(id).second)
        throw ParseError(lineno, "duplicate node id " + f[1]);
      nodes.push_back(id);
    } else if (f[0] == "edge") {
      if (f.size() != 5) throw ParseError(lineno, "expected 'edge <id> <u> <v> <weight>'");
      Segment s{parse_int(f[1], lineno, "edge id"), parse_int(f[2], lineno, "node id"),
                parse_int(f[3], lineno, "node id"), parse_double(f[4], lineno, "weight")};
      if (!segment_set.insert(s.id).second)
        throw ParseError(lineno, "duplicate edge id " + f[1]);
      if (!(s.weight > 0.0)) throw ParseError(lineno, "nonpositive weight " + f[4]);
      if (s.u == s.v) throw ParseError(lineno, "edge is a self-loop");
      segments.push_back(s);
      segment_lines.push_back(lineno);
    } else {
      throw ParseError(lineno, "unknown record '" + f[0] + "'");
    }
  }
  // Edges may precede their node records, so endpoints are checked last.
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (NodeId end : {segments[i].u, segments[i].v})
      if (!node_set.count(end))
        throw ParseError(segment_lines[i], "edge references unknown node " +
                                               std::to_string(end));
  }
  return RoadNetwork(std::move(nodes), std::move(segments));
}

RoadNetwork load_network_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open network file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_network(buf.str());
}

std::string format_network(const RoadNetwork& net) {
  std::ostringstream out;
  out.precision(17);
  for (NodeId n : net.nodes()) out << "node " << n << '\n';
  for (const Segment& s : net.segments())
    out << "edge " << s.id << ' ' << s.u << ' ' << s.v << ' ' << s.weight << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Shortest paths

namespace {

struct Path {
  std::vector<std::size_t> nodes;     // node indices
  std::vector<std::size_t> segments;  // segment indices
  double length = 0.0;
};

// Indices follow id order, so comparing indices compares ids.
bool path_less(const Path& a, const Path& b) {
  if (a.length != b.length) return a.length < b.length;
  if (a.nodes != b.nodes) return a.nodes < b.nodes;
  return a.segments < b.segments;
}

double path_length(const RoadNetwork& net, const std::vector<std::size_t>& segs) {
  double len = 0.0;
  for (std::size_t s : segs) len += net.segments()[s].weight;
  return len;
}

// Dijkstra over strictly positive weights. Among equal-length shortest paths
// the lexicographically smallest (node sequence, then segment sequence) wins;
// prefixes of such paths are themselves lexicographically minimal, so ties
// can be settled at relaxation time.
std::optional<Path> shortest_path(const RoadNetwork& net, std::size_t source,
                                  std::size_t target,
                                  const std::vector<char>& blocked_node,
                                  const std::vector<char>& blocked_segment) {
  const std::size_t n = net.num_nodes();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<std::size_t> pred_node(n, n), pred_seg(n, 0);
  std::vector<char> settled(n, 0);

  auto trace = [&](std::size_t v) {
    Path p;
    for (std::size_t x = v; x != source; x = pred_node[x]) {
      p.nodes.push_back(x);
      p.segments.push_back(pred_seg[x]);
    }
    p.nodes.push_back(source);
    std::reverse(p.nodes.begin(), p.nodes.end());
    std::reverse(p.segments.begin(), p.segments.end());
    return p;
  };

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (settled[u] || d != dist[u]) continue;
    settled[u] = 1;
    if (u == target) break;
    for (const auto& arc : net.arcs(u)) {
      if (blocked_segment[arc.segment] || blocked_node[arc.to] || settled[arc.to]) continue;
      const double nd = d + net.segments()[arc.segment].weight;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        pred_node[arc.to] = u;
        pred_seg[arc.to] = arc.segment;
        queue.push({nd, arc.to});
      } else if (nd == dist[arc.to]) {
        Path current = trace(arc.to);
        Path candidate = trace(u);
        candidate.nodes.push_back(arc.to);
        candidate.segments.push_back(arc.segment);
        if (std::tie(candidate.nodes, candidate.segments) <
            std::tie(current.nodes, current.segments)) {
          pred_node[arc.to] = u;
          pred_seg[arc.to] = arc.segment;
        }
      }
    }
  }
  if (!settled[target]) return std::nullopt;
  Path p = trace(target);
  p.length = dist[target];
  return p;
}

Route to_route(const RoadNetwork& net, const Path& p) {
  Route r;
  for (std::size_t v : p.nodes) r.nodes.push_back(net.nodes()[v]);
  for (std::size_t s : p.segments) r.segments.push_back(net.segments()[s].id);
  r.length = path_length(net, p.segments);
  return r;
}

}  // namespace

std::vector<Route> k_shortest_routes(const RoadNetwork& net, NodeId origin,
                                     NodeId destination, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k_shortest_routes: k must be >= 1");
  if (origin == destination)
    throw std::invalid_argument("k_shortest_routes: origin equals destination");
  const std::size_t src = net.node_index(origin);
  const std::size_t dst = net.node_index(destination);
  const std::size_t n = net.num_nodes();

  std::vector<char> no_nodes(n, 0), no_segments(net.num_segments(), 0);
  auto first = shortest_path(net, src, dst, no_nodes, no_segments);
  if (!first)
    throw std::runtime_error("no path between nodes " + std::to_string(origin) +
                             " and " + std::to_string(destination));
  first->length = path_length(net, first->segments);

  std::vector<Path> accepted{*first};
  auto cmp = [](const Path& a, const Path& b) { return path_less(a, b); };
  std::set<Path, decltype(cmp)> candidates(cmp);
  std::set<std::vector<std::size_t>> seen{first->segments};

  while (accepted.size() < k) {
    const Path& last = accepted.back();
    for (std::size_t i = 0; i + 1 < last.nodes.size(); ++i) {
      const std::size_t spur = last.nodes[i];
      std::vector<char> blocked_nodes(n, 0), blocked_segments(net.num_segments(), 0);
      for (std::size_t j = 0; j < i; ++j) blocked_nodes[last.nodes[j]] = 1;
      for (const Path& p : accepted) {
        if (p.nodes.size() > i + 1 &&
            std::equal(p.nodes.begin(), p.nodes.begin() + i + 1, last.nodes.begin()) &&
            std::equal(p.segments.begin(), p.segments.begin() + i, last.segments.begin()))
          blocked_segments[p.segments[i]] = 1;
      }
      auto spur_path = shortest_path(net, spur, dst, blocked_nodes, blocked_segments);
      if (!spur_path) continue;
      Path total;
      total.nodes.assign(last.nodes.begin(), last.nodes.begin() + i);
      total.nodes.insert(total.nodes.end(), spur_path->nodes.begin(), spur_path->nodes.end());
      total.segments.assign(last.segments.begin(), last.segments.begin() + i);
      total.segments.insert(total.segments.end(), spur_path->segments.begin(),
                            spur_path->segments.end());
      total.length = path_length(net, total.segments);
      if (seen.insert(total.segments).second) candidates.insert(std::move(total));
    }
    if (candidates.empty()) break;
    accepted.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }

  std::vector<Route> routes;
  routes.reserve(accepted.size());
  for (std::size_t j = 0; j < accepted.size(); ++j) {
    routes.push_back(to_route(net, accepted[j]));
    routes.back().route_index = j;
  }
  return routes;
}

TrafficInstance build_instance(const RoadNetwork& net, const std::vector<CarSpec>& cars,
                               std::uint64_t seed, const InstanceOptions& options) {
  if (options.pool_size == 0) throw std::invalid_argument("pool_size must be >= 1");
  TrafficInstance inst;
  inst.network = net;
  inst.seed = seed;
  inst.directed_congestion = options.directed_congestion;

  Rng rng(seed);
  std::map<std::pair<NodeId, NodeId>, std::vector<Route>> pools;
  for (std::size_t i = 0; i < cars.size(); ++i) {
    const CarSpec& spec = cars[i];
    if (spec.route_count == 0)
      throw std::invalid_argument("car " + std::to_string(i) + " needs >= 1 route");
    auto key = std::make_pair(spec.origin, spec.destination);
    auto it = pools.find(key);
    if (it == pools.end())
      it = pools.emplace(key, k_shortest_routes(net, spec.origin, spec.destination,
                                                std::max(options.pool_size, spec.route_count)))
               .first;
    const auto& pool = it->second;
    if (pool.size() < spec.route_count)
      throw std::runtime_error("car " + std::to_string(i) + " requests " +
                               std::to_string(spec.route_count) + " routes but only " +
                               std::to_string(pool.size()) + " distinct routes exist");

    // Partial Fisher-Yates over the non-shortest part of the pool.
    const std::size_t limit = std::min(pool.size(), options.pool_size);
    if (limit < spec.route_count)
      throw std::runtime_error("route pool smaller than requested route count");
    std::vector<std::size_t> order(limit - 1);
    std::iota(order.begin(), order.end(), 1);
    std::vector<std::size_t> picked{0};
    for (std::size_t r = 0; r + 1 < spec.route_count; ++r) {
      const std::size_t j = r + uniform_index(rng, order.size() - r);
      std::swap(order[r], order[j]);
      picked.push_back(order[r]);
    }
    std::sort(picked.begin() + 1, picked.end());

    std::vector<Route> routes;
    for (std::size_t j = 0; j < picked.size(); ++j) {
      Route r = pool[picked[j]];
      r.car = i;
      r.route_index = j;
      routes.push_back(std::move(r));
    }
    inst.cars.push_back(std::move(routes));
  }
  return inst;
}

RoadNetwork grid_network(std::size_t rows, std::size_t cols, double min_weight,
                         double max_weight, std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("grid must be nonempty");
  if (!(min_weight > 0.0) || max_weight < min_weight)
    throw std::invalid_argument("grid weights must satisfy 0 < min <= max");
  Rng rng(seed);
  std::vector<NodeId> nodes;
  for (std::size_t i = 0; i < rows * cols; ++i) nodes.push_back(static_cast<NodeId>(i));
  std::vector<Segment> segs;
  auto weight = [&] {
    return min_weight + (max_weight - min_weight) * uniform_unit(rng);
  };
  SegmentId next = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto id = static_cast<NodeId>(r * cols + c);
      if (c + 1 < cols) segs.push_back({next++, id, id + 1, weight()});
      if (r + 1 < rows) segs.push_back({next++, id, id + static_cast<NodeId>(cols), weight()});
    }
  return RoadNetwork(std::move(nodes), std::move(segs));
}

}  // namespace trafficqaoa
