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

// Command-line harness: generate, benchmark-init, density, scaling,
// precompute, report. Exit codes: 0 success, 1 config error, 2 runtime error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trafficqaoa/commands.hpp"

namespace tq = trafficqaoa;

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> cars, routes, count, pool;
  std::optional<std::vector<int>> ps;
  std::optional<std::vector<std::string>> algorithms;
  std::optional<std::string> init, params_file, output, map, layout;
  std::optional<double> dt;
  std::optional<int> restarts, max_iterations, grid;
  std::optional<std::uint64_t> shots;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "JSON config file");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--cars", o.cars, "cars per instance");
  cmd->add_option("--routes", o.routes, "routes per car");
  cmd->add_option("--count", o.count, "instances in the ensemble");
  cmd->add_option("--pool-size", o.pool, "candidate route pool per car");
  cmd->add_option("-p,--p", o.ps, "QAOA depth(s)");
  cmd->add_option("--algorithm", o.algorithms, "qaoa, cf-qaoa, cf-maqaoa");
  cmd->add_option("--init", o.init, "tqa, random, precomputed, grid");
  cmd->add_option("--dt", o.dt, "TQA time step");
  cmd->add_option("--restarts", o.restarts, "initializations per arm");
  cmd->add_option("--grid", o.grid, "p = 1 grid resolution");
  cmd->add_option("--params", o.params_file, "precomputed parameter file");
  cmd->add_option("--max-iterations", o.max_iterations, "optimizer iteration cap");
  cmd->add_option("--shots", o.shots, "measurement shots");
  cmd->add_option("--map", o.map, "heavy-hex, linear, complete");
  cmd->add_option("--layout", o.layout, "bfs-chain, greedy-weight");
  cmd->add_option("-o,--output", o.output, "output directory");
}

tq::ExperimentConfig resolve(const Overrides& o) {
  tq::ExperimentConfig c;
  if (!o.config.empty()) {
    try {
      c = tq::load_config(o.config);
    } catch (const tq::Json::exception& e) {
      throw tq::ConfigError(e.what());
    }
  }
  tq::Json j = tq::Json::object();
  if (o.seed) j["seed"] = *o.seed;
  if (o.count) j["count"] = *o.count;
  if (o.ps) j["p"] = *o.ps;
  if (o.algorithms) j["algorithms"] = *o.algorithms;
  if (o.shots) j["shots"] = *o.shots;
  if (o.output) j["output"] = *o.output;
  if (o.layout) j["layout"] = *o.layout;
  if (o.map) j["coupling_map"]["kind"] = *o.map;
  if (o.cars) j["instance"]["cars"] = *o.cars;
  if (o.routes) j["instance"]["routes_per_car"] = *o.routes;
  if (o.pool) j["instance"]["pool_size"] = *o.pool;
  if (o.init) j["init"]["strategy"] = *o.init;
  if (o.dt) j["init"]["dt"] = *o.dt;
  if (o.restarts) j["init"]["restarts"] = *o.restarts;
  if (o.grid) j["init"]["grid"] = *o.grid;
  if (o.params_file) j["init"]["params_file"] = *o.params_file;
  if (o.max_iterations) j["optimizer"]["max_iterations"] = *o.max_iterations;
  try {
    return tq::config_from_json(j, c);
  } catch (const tq::Json::exception& e) {
    throw tq::ConfigError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traffic-congestion QAOA experiment harness"};
  app.require_subcommand(1);
  Overrides o;
  std::vector<std::string> report_inputs;
  std::string report_output = "report";

  auto* gen = app.add_subcommand("generate", "write instance, QUBO and Ising files");
  auto* bench = app.add_subcommand("benchmark-init", "RANDOM vs TQA initialization benchmark");
  auto* dens = app.add_subcommand("density", "per-state probability tables for four p=2 arms");
  auto* scal = app.add_subcommand("scaling", "noiseless size sweep of the QAOA variants");
  auto* pre = app.add_subcommand("precompute", "median-of-ensemble parameters");
  for (auto* cmd : {gen, bench, dens, scal, pre}) add_common(cmd, o);
  auto* rep = app.add_subcommand("report", "merge run records into CSV tables");
  rep->add_option("records", report_inputs, "records.json files")->required();
  rep->add_option("-o,--output", report_output, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (rep->parsed()) {
      tq::cmd_report({report_inputs.begin(), report_inputs.end()}, report_output, std::cout);
      return 0;
    }
    const tq::ExperimentConfig c = resolve(o);
    tq::validate(c);
    std::cerr << "config " << tq::config_hash(c) << " -> " << c.output.string() << '\n';
    if (gen->parsed()) tq::cmd_generate(c, std::cerr);
    if (bench->parsed()) tq::cmd_benchmark_init(c, std::cerr);
    if (dens->parsed()) tq::cmd_density(c, std::cerr);
    if (scal->parsed()) tq::cmd_scaling(c, std::cerr);
    if (pre->parsed()) tq::cmd_precompute(c, std::cerr);
  } catch (const tq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
