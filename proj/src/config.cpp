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

#include "trafficqaoa/config.hpp"

#include <set>

namespace trafficqaoa {

namespace {

std::string lambda_name(LambdaMode m) {
  return m == LambdaMode::TrueRange ? "true-range" : "corner-range";
}

LambdaMode parse_lambda(const std::string& s) {
  if (s == "true-range") return LambdaMode::TrueRange;
  if (s == "corner-range") return LambdaMode::CornerRange;
  throw ConfigError("unknown lambda_mode: " + s);
}

LayoutStrategy parse_layout(const std::string& s) {
  if (s == "bfs-chain") return LayoutStrategy::BfsChain;
  if (s == "greedy-weight") return LayoutStrategy::GreedyWeight;
  throw ConfigError("unknown layout: " + s);
}

FourierKernel parse_kernel(const std::string& s) {
  if (s == "sin") return FourierKernel::Sin;
  if (s == "cos") return FourierKernel::Cos;
  throw ConfigError("unknown fourier_beta_kernel: " + s);
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

template <typename T>
void take(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json(const Json& j, const ExperimentConfig& base) {
  ExperimentConfig c = base;
  check_keys(j,
             {"seed", "network", "instance", "count", "algorithms", "p", "init", "optimizer",
              "shots", "coupling_map", "layout", "threshold", "t_single",
              "fourier_beta_kernel", "scaling", "precompute", "output"},
             "config");
  take(j, "seed", c.seed);
  take(j, "count", c.count);
  take(j, "shots", c.shots);
  take(j, "threshold", c.threshold);
  take(j, "t_single", c.t_single);
  if (j.contains("p")) {
    if (j["p"].is_array()) {
      take(j, "p", c.ps);
    } else {
      int p = 0;
      take(j, "p", p);
      c.ps = {p};
    }
  }
  if (j.contains("output")) c.output = j["output"].get<std::string>();
  if (j.contains("layout")) c.layout = parse_layout(j["layout"].get<std::string>());
  if (j.contains("fourier_beta_kernel"))
    c.fourier_beta_kernel = parse_kernel(j["fourier_beta_kernel"].get<std::string>());
  if (j.contains("algorithms")) {
    c.algorithms.clear();
    for (const auto& a : j["algorithms"]) {
      try {
        c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (j.contains("network")) {
    const auto& n = j["network"];
    check_keys(n, {"kind", "rows", "cols", "min_weight", "max_weight", "path"}, "network");
    take(n, "kind", c.network.kind);
    take(n, "rows", c.network.grid.rows);
    take(n, "cols", c.network.grid.cols);
    take(n, "min_weight", c.network.grid.min_weight);
    take(n, "max_weight", c.network.grid.max_weight);
    if (n.contains("path")) c.network.path = n["path"].get<std::string>();
  }
  if (j.contains("instance")) {
    const auto& n = j["instance"];
    check_keys(n, {"cars", "routes_per_car", "pool_size", "directed_congestion", "lambda_mode"},
               "instance");
    take(n, "cars", c.instance.cars);
    take(n, "routes_per_car", c.instance.routes_per_car);
    take(n, "pool_size", c.instance.pool_size);
    take(n, "directed_congestion", c.instance.directed_congestion);
    if (n.contains("lambda_mode")) c.instance.lambda_mode = parse_lambda(n["lambda_mode"].get<std::string>());
  }
  if (j.contains("init")) {
    const auto& n = j["init"];
    check_keys(n, {"strategy", "dt", "restarts", "grid", "params_file"}, "init");
    take(n, "strategy", c.init.strategy);
    take(n, "dt", c.init.dt);
    take(n, "restarts", c.init.restarts);
    take(n, "grid", c.init.grid);
    if (n.contains("params_file")) c.init.params_file = n["params_file"].get<std::string>();
  }
  if (j.contains("optimizer")) {
    const auto& n = j["optimizer"];
    check_keys(n, {"max_iterations", "gradient_tolerance", "function_tolerance", "fd_step", "history"},
               "optimizer");
    take(n, "max_iterations", c.optimizer.max_iterations);
    take(n, "gradient_tolerance", c.optimizer.gradient_tolerance);
    take(n, "function_tolerance", c.optimizer.function_tolerance);
    take(n, "fd_step", c.optimizer.fd_step);
    take(n, "history", c.optimizer.history);
  }
  if (j.contains("coupling_map")) {
    const auto& n = j["coupling_map"];
    check_keys(n, {"kind", "rows", "cells", "n"}, "coupling_map");
    take(n, "kind", c.map.kind);
    take(n, "rows", c.map.rows);
    take(n, "cells", c.map.cells);
    take(n, "n", c.map.n);
  }
  if (j.contains("scaling")) {
    const auto& n = j["scaling"];
    check_keys(n, {"min_cars", "max_cars", "routes_per_car", "instances_per_size", "maqaoa_max_qubits"},
               "scaling");
    take(n, "min_cars", c.scaling.min_cars);
    take(n, "max_cars", c.scaling.max_cars);
    take(n, "routes_per_car", c.scaling.routes_per_car);
    take(n, "instances_per_size", c.scaling.instances_per_size);
    take(n, "maqaoa_max_qubits", c.scaling.maqaoa_max_qubits);
  }
  if (j.contains("precompute")) {
    const auto& n = j["precompute"];
    check_keys(n, {"n_samples", "n_qubits", "tqa_dt"}, "precompute");
    take(n, "n_samples", c.precompute.n_samples);
    take(n, "n_qubits", c.precompute.n_qubits);
    take(n, "tqa_dt", c.precompute.tqa_dt);
  }
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json algos = Json::array();
  for (Algorithm a : c.algorithms) algos.push_back(algorithm_name(a));
  Json network = {{"kind", c.network.kind}};
  if (c.network.kind == "file") {
    network["path"] = c.network.path.string();
  } else {
    network["rows"] = c.network.grid.rows;
    network["cols"] = c.network.grid.cols;
    network["min_weight"] = c.network.grid.min_weight;
    network["max_weight"] = c.network.grid.max_weight;
  }
  Json init = {{"strategy", c.init.strategy},
               {"dt", c.init.dt},
               {"restarts", c.init.restarts},
               {"grid", c.init.grid}};
  if (!c.init.params_file.empty()) init["params_file"] = c.init.params_file.string();
  return {{"seed", c.seed},
          {"network", network},
          {"instance",
           {{"cars", c.instance.cars},
            {"routes_per_car", c.instance.routes_per_car},
            {"pool_size", c.instance.pool_size},
            {"directed_congestion", c.instance.directed_congestion},
            {"lambda_mode", lambda_name(c.instance.lambda_mode)}}},
          {"count", c.count},
          {"algorithms", algos},
          {"p", c.ps},
          {"init", init},
          {"optimizer",
           {{"max_iterations", c.optimizer.max_iterations},
            {"gradient_tolerance", c.optimizer.gradient_tolerance},
            {"function_tolerance", c.optimizer.function_tolerance},
            {"fd_step", c.optimizer.fd_step},
            {"history", c.optimizer.history}}},
          {"shots", c.shots},
          {"coupling_map",
           {{"kind", c.map.kind}, {"rows", c.map.rows}, {"cells", c.map.cells}, {"n", c.map.n}}},
          {"layout", layout_strategy_name(c.layout)},
          {"threshold", c.threshold},
          {"t_single", c.t_single},
          {"fourier_beta_kernel", c.fourier_beta_kernel == FourierKernel::Sin ? "sin" : "cos"},
          {"scaling",
           {{"min_cars", c.scaling.min_cars},
            {"max_cars", c.scaling.max_cars},
            {"routes_per_car", c.scaling.routes_per_car},
            {"instances_per_size", c.scaling.instances_per_size},
            {"maqaoa_max_qubits", c.scaling.maqaoa_max_qubits}}},
          {"precompute",
           {{"n_samples", c.precompute.n_samples},
            {"n_qubits", c.precompute.n_qubits},
            {"tqa_dt", c.precompute.tqa_dt}}},
          {"output", c.output.string()}};
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  Json j;
  try {
    j = read_json(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return config_from_json(j);
}

std::string config_hash(const ExperimentConfig& c) {
  Json j = config_to_json(c);
  j.erase("output");
  // Key-sorted form, so field order in the file cannot change the digest.
  const nlohmann::json sorted = nlohmann::json::parse(j.dump());
  return hex_digest(fnv1a(sorted.dump()));
}

void validate(const ExperimentConfig& c) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(c.network.kind == "grid" || c.network.kind == "file", "network.kind must be grid or file");
  if (c.network.kind == "file")
    need(std::filesystem::exists(c.network.path),
         "network file not found: " + c.network.path.string());
  else
    need(c.network.grid.rows >= 1 && c.network.grid.cols >= 1 &&
             c.network.grid.rows * c.network.grid.cols >= 2 && c.network.grid.min_weight > 0 &&
             c.network.grid.max_weight >= c.network.grid.min_weight,
         "grid needs >= 2 nodes and 0 < min_weight <= max_weight");
  need(c.instance.cars >= 1 && c.instance.routes_per_car >= 1, "cars and routes_per_car must be >= 1");
  need(c.instance.pool_size >= c.instance.routes_per_car, "pool_size must cover routes_per_car");
  need(c.count >= 1, "count must be >= 1");
  need(!c.ps.empty(), "p must name at least one depth");
  for (int p : c.ps) need(p >= 1, "p must be >= 1");
  need(!c.algorithms.empty(), "algorithms must not be empty");
  const std::set<std::string> strategies{"tqa", "random", "precomputed", "grid"};
  need(strategies.count(c.init.strategy) != 0, "unknown init.strategy: " + c.init.strategy);
  need(c.init.dt > 0, "init.dt must be > 0");
  need(c.init.restarts >= 1, "init.restarts must be >= 1");
  need(c.init.grid >= 1, "init.grid must be >= 1");
  if (!c.init.params_file.empty())
    need(std::filesystem::exists(c.init.params_file),
         "parameter file not found: " + c.init.params_file.string());
  need(c.optimizer.max_iterations >= 1, "optimizer.max_iterations must be >= 1");
  need(c.optimizer.fd_step > 0, "optimizer.fd_step must be > 0");
  need(c.shots >= 1, "shots must be >= 1");
  need(c.map.kind == "heavy-hex" || c.map.kind == "linear" || c.map.kind == "complete",
       "coupling_map.kind must be heavy-hex, linear or complete");
  need(c.threshold >= 0 && c.threshold < 1, "threshold must lie in [0, 1)");
  need(c.t_single > 0, "t_single must be > 0");
  need(c.scaling.min_cars >= 1 && c.scaling.max_cars >= c.scaling.min_cars,
       "scaling needs 1 <= min_cars <= max_cars");
  need(c.scaling.routes_per_car >= 1 && c.scaling.instances_per_size >= 1,
       "scaling routes_per_car and instances_per_size must be >= 1");
  need(c.precompute.n_samples >= 1 && c.precompute.n_qubits >= 1 && c.precompute.tqa_dt > 0,
       "precompute needs n_samples, n_qubits >= 1 and tqa_dt > 0");
}

CouplingMap make_map(const MapConfig& m, int n_logical) {
  if (m.kind == "heavy-hex") return CouplingMap::heavy_hex(m.rows, m.cells);
  const int n = m.n > 0 ? m.n : n_logical;
  if (m.kind == "linear") return CouplingMap::linear(n);
  if (m.kind == "complete") return CouplingMap::complete(n);
  throw ConfigError("unknown coupling map kind: " + m.kind);
}

RoadNetwork make_network(const NetworkConfig& n, std::uint64_t seed) {
  if (n.kind == "file") return load_network_file(n.path);
  return grid_network(n.grid.rows, n.grid.cols, n.grid.min_weight, n.grid.max_weight, seed);
}

}  // namespace trafficqaoa
