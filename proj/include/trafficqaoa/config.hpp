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
#include <vector>

#include "trafficqaoa/experiments.hpp"
#include "trafficqaoa/io.hpp"

namespace trafficqaoa {

// Raised for malformed or inconsistent configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NetworkConfig {
  std::string kind = "grid";  // "grid" or "file"
  GridSpec grid{};
  std::filesystem::path path;  // kind == "file"
};

struct MapConfig {
  std::string kind = "heavy-hex";  // heavy-hex, linear, complete
  int rows = 3;
  int cells = 3;
  int n = 0;  // linear/complete size; 0 means "as many as the problem needs"
};

struct InitConfig {
  std::string strategy = "tqa";  // tqa, random, precomputed, grid
  double dt = 0.75;
  int restarts = 50;
  int grid = 64;
  std::filesystem::path params_file;  // precomputed parameters, optional
};

struct ScalingConfig {
  std::size_t min_cars = 1;
  std::size_t max_cars = 11;
  std::size_t routes_per_car = 2;
  std::size_t instances_per_size = 10;
  std::size_t maqaoa_max_qubits = 14;
};

struct PrecomputeConfig {
  int n_samples = 100;
  int n_qubits = 9;
  double tqa_dt = 0.75;
};

struct ExperimentConfig {
  std::uint64_t seed = 2024;
  NetworkConfig network{};
  ProblemSpec instance{};  // cars, routes, pool, direction, lambda mode
  std::size_t count = 20;
  std::vector<Algorithm> algorithms{Algorithm::Qaoa, Algorithm::CfQaoa, Algorithm::CfMaQaoa};
  std::vector<int> ps{2, 3};
  InitConfig init{};
  OptimizerOptions optimizer{};
  std::uint64_t shots = 10000;
  MapConfig map{};
  LayoutStrategy layout = LayoutStrategy::BfsChain;
  double threshold = 0.8;
  double t_single = 1.0;
  FourierKernel fourier_beta_kernel = FourierKernel::Sin;
  ScalingConfig scaling{};
  PrecomputeConfig precompute{};
  std::filesystem::path output = "out";
};

// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const Json& j, const ExperimentConfig& base = {});
Json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::filesystem::path& path);

// Digest over every semantic field (the output directory is excluded).
std::string config_hash(const ExperimentConfig& c);

// Throws ConfigError on out-of-range values or missing fixtures.
void validate(const ExperimentConfig& c);

CouplingMap make_map(const MapConfig& m, int n_logical);
RoadNetwork make_network(const NetworkConfig& n, std::uint64_t seed);

}  // namespace trafficqaoa
