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

#include "trafficqaoa/io.hpp"

#include <fstream>
#include <stdexcept>

namespace trafficqaoa {

Json network_to_json(const RoadNetwork& net) {
  Json edges = Json::array();
  for (const auto& s : net.segments()) edges.push_back({s.id, s.u, s.v, s.weight});
  return {{"nodes", net.nodes()}, {"edges", edges}};
}

RoadNetwork network_from_json(const Json& j) {
  std::vector<Segment> segs;
  for (const auto& e : j.at("edges"))
    segs.push_back({e.at(0).get<SegmentId>(), e.at(1).get<NodeId>(), e.at(2).get<NodeId>(),
                    e.at(3).get<double>()});
  return RoadNetwork(j.at("nodes").get<std::vector<NodeId>>(), std::move(segs));
}

Json instance_to_json(const TrafficInstance& inst, const std::string& network_ref) {
  Json cars = Json::array();
  for (const auto& routes : inst.cars) {
    Json rs = Json::array();
    for (const auto& r : routes)
      rs.push_back({{"segments", r.segments}, {"nodes", r.nodes}, {"length", r.length}});
    cars.push_back(rs);
  }
  Json out = {{"seed", inst.seed},
              {"directed_congestion", inst.directed_congestion},
              {"n_variables", inst.num_variables()}};
  if (!network_ref.empty()) out["network_ref"] = network_ref;
  out["network"] = network_to_json(inst.network);
  out["cars"] = cars;
  return out;
}

TrafficInstance instance_from_json(const Json& j) {
  TrafficInstance inst;
  inst.network = network_from_json(j.at("network"));
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.directed_congestion = j.value("directed_congestion", false);
  for (std::size_t i = 0; i < j.at("cars").size(); ++i) {
    std::vector<Route> routes;
    const auto& rs = j.at("cars")[i];
    for (std::size_t k = 0; k < rs.size(); ++k) {
      Route r;
      r.car = i;
      r.route_index = k;
      r.segments = rs[k].at("segments").get<std::vector<SegmentId>>();
      r.nodes = rs[k].at("nodes").get<std::vector<NodeId>>();
      r.length = rs[k].at("length").get<double>();
      if (!is_valid_route(inst.network, r))
        throw std::invalid_argument("route " + std::to_string(k) + " of car " +
                                    std::to_string(i) + " is not a path");
      routes.push_back(std::move(r));
    }
    inst.cars.push_back(std::move(routes));
  }
  return inst;
}

Json quadratic_to_json(const QuadraticForm& f) {
  Json lin = Json::array(), quad = Json::array();
  for (const auto& [u, c] : f.linear) lin.push_back({u, c});
  for (const auto& [uv, c] : f.quadratic) quad.push_back({uv.first, uv.second, c});
  return {{"n_vars", f.n_vars}, {"constant", f.constant}, {"linear", lin}, {"quadratic", quad}};
}

Json qubo_to_json(const QuboModel& q) {
  Json index = Json::array();
  for (std::size_t u = 0; u < q.labels.size(); ++u)
    index.push_back({{"var", u}, {"car", q.labels[u].car}, {"route", q.labels[u].route}});
  Json out = {{"lambda", q.lambda}};
  if (q.lambda_warning) out["lambda_warning"] = *q.lambda_warning;
  out["variables"] = index;
  out["congestion"] = quadratic_to_json(q.congestion);
  out["constraint"] = quadratic_to_json(q.constraint);
  out["cost"] = quadratic_to_json(q.cost);
  return out;
}

Json ising_to_json(const IsingModel& m) {
  Json h = Json::array(), jj = Json::array();
  for (const auto& [u, c] : m.h) h.push_back({u, c});
  for (const auto& [uv, c] : m.J) jj.push_back({uv.first, uv.second, c});
  return {{"n_qubits", m.n_qubits}, {"constant", m.constant}, {"norm_factor", m.norm_factor},
          {"h", h}, {"J", jj}};
}

IsingModel ising_from_json(const Json& j) {
  IsingModel m;
  m.n_qubits = j.at("n_qubits").get<std::size_t>();
  m.constant = j.at("constant").get<double>();
  m.norm_factor = j.value("norm_factor", 1.0);
  for (const auto& e : j.at("h")) {
    const auto u = e.at(0).get<std::size_t>();
    if (u >= m.n_qubits) throw std::invalid_argument("h index out of range");
    m.h[u] = e.at(1).get<double>();
  }
  for (const auto& e : j.at("J")) {
    auto u = e.at(0).get<std::size_t>(), v = e.at(1).get<std::size_t>();
    if (u == v || u >= m.n_qubits || v >= m.n_qubits)
      throw std::invalid_argument("J index out of range");
    if (u > v) std::swap(u, v);
    m.J[{u, v}] = e.at(2).get<double>();
  }
  return m;
}

Json params_to_json(const ParamVector& v, const Json& provenance) {
  Json out = {{"mode", v.mode == ParamMode::Standard ? "standard" : "multi-angle"},
              {"p", v.p},
              {"values", v.values}};
  if (v.mode == ParamMode::MultiAngle) out["per_layer"] = v.per_layer;
  if (!provenance.empty()) out["provenance"] = provenance;
  return out;
}

ParamVector params_from_json(const Json& j) {
  ParamVector v;
  const auto mode = j.at("mode").get<std::string>();
  if (mode == "standard") {
    v.mode = ParamMode::Standard;
  } else if (mode == "multi-angle") {
    v.mode = ParamMode::MultiAngle;
    v.per_layer = j.at("per_layer").get<int>();
  } else {
    throw std::invalid_argument("unknown parameter mode: " + mode);
  }
  v.p = j.at("p").get<int>();
  v.values = j.at("values").get<std::vector<double>>();
  const std::size_t expect = v.mode == ParamMode::Standard
                                 ? 2 * static_cast<std::size_t>(v.p)
                                 : static_cast<std::size_t>(v.p * v.per_layer);
  if (v.p < 1 || v.values.size() != expect)
    throw std::invalid_argument("parameter count does not match p");
  return v;
}

Json plan_to_json(const CompressionPlan& plan) {
  Json kept = Json::array(), removed = Json::array();
  for (const auto& [u, v] : plan.kept_pairs) kept.push_back({u, v});
  for (const auto& [u, v] : plan.removed_pairs) removed.push_back({u, v});
  return {{"strategy", layout_strategy_name(plan.strategy)},
          {"layout", plan.layout},
          {"kept", kept},
          {"removed", removed}};
}

Json approx_to_json(const ApproxReport& r) {
  return {{"source", r.source == ExpectationSource::Statevector ? "statevector" : "shots"},
          {"expectation", r.expectation},
          {"r_true", r.r_true},
          {"r_random", r.r_random},
          {"e_min", r.e_min},
          {"e_max", r.e_max},
          {"e_random", r.e_random}};
}

Json runtime_to_json(const RuntimeEstimate& r) {
  Json out = {{"p_single", r.p_single}, {"threshold", r.threshold}, {"t_single", r.t_single}};
  if (r.k99) {
    out["k99"] = *r.k99;
    out["t_total"] = r.t_total;
  } else {
    out["k99"] = nullptr;
    out["t_total"] = nullptr;
  }
  return out;
}

Json arm_to_json(const ArmResult& r) {
  return {{"algorithm", algorithm_name(r.algorithm)},
          {"initial", params_to_json(r.initial)},
          {"final", params_to_json(r.params)},
          {"iterations", r.iterations},
          {"optimized", r.optimized},
          {"n_params", r.n_params},
          {"exact", approx_to_json(r.exact)},
          {"sampled", approx_to_json(r.sampled)},
          {"best_state", r.best_state},
          {"best_r_true", r.best_r_true},
          {"most_probable_state", r.most_probable_state},
          {"most_probable_r_true", r.most_probable_r_true},
          {"p_ground", r.p_ground},
          {"p_ground_observed", r.p_ground_observed},
          {"p_acceptable", r.acceptable.p_single},
          {"p_acceptable_random", r.acceptable.random_baseline},
          {"runtime", runtime_to_json(r.runtime)},
          {"depth", r.depth},
          {"cnots", r.cnots},
          {"swaps", r.swaps},
          {"counts_digest", hex_digest(r.counts_digest)}};
}

Json stats_to_json(const CoefficientStats& s) {
  return {{"j_mean", s.j_mean}, {"j_std", s.j_std}, {"h_mean", s.h_mean}, {"h_std", s.h_std}};
}

CoefficientStats stats_from_json(const Json& j) {
  return {j.at("j_mean").get<double>(), j.at("j_std").get<double>(), j.at("h_mean").get<double>(),
          j.at("h_std").get<double>()};
}

std::uint64_t json_digest(const Json& j) { return fnv1a(j.dump()); }

std::string instance_digest(const TrafficInstance& inst) {
  return hex_digest(json_digest(instance_to_json(inst)));
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace trafficqaoa
