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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "trafficqaoa/commands.hpp"
#include "trafficqaoa/config.hpp"
#include "trafficqaoa/io.hpp"

using namespace trafficqaoa;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "trafficqaoa_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

ExperimentConfig small_config(const fs::path& out) {
  ExperimentConfig c;
  c.network.grid = {3, 3, 1.0, 2.0};
  c.instance.cars = 1;
  c.instance.routes_per_car = 2;
  c.instance.pool_size = 20;
  c.count = 1;
  c.ps = {2};
  c.init.restarts = 1;
  c.init.grid = 16;
  c.optimizer.max_iterations = 20;
  c.shots = 500;
  c.precompute.n_samples = 3;
  c.precompute.n_qubits = 4;
  c.output = out;
  return c;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("Configuration hashing", "[cli][config]") {
  ExperimentConfig base;
  const auto h = config_hash(base);
  CHECK(config_hash(base) == h);
  CHECK(config_hash(config_from_json(config_to_json(base))) == h);

  auto changed = [&](auto edit) {
    ExperimentConfig c = base;
    edit(c);
    return config_hash(c) != h;
  };
  CHECK(changed([](auto& c) { c.seed = 7; }));
  CHECK(changed([](auto& c) { c.ps = {2}; }));
  CHECK(changed([](auto& c) { c.shots = 100; }));
  CHECK(changed([](auto& c) { c.instance.cars = 4; }));
  CHECK(changed([](auto& c) { c.network.grid.rows = 6; }));
  CHECK(changed([](auto& c) { c.optimizer.max_iterations = 10; }));
  CHECK(changed([](auto& c) { c.init.dt = 0.5; }));
  CHECK(changed([](auto& c) { c.map.kind = "linear"; }));
  CHECK(changed([](auto& c) { c.fourier_beta_kernel = FourierKernel::Cos; }));
  CHECK(changed([](auto& c) { c.algorithms = {Algorithm::Qaoa}; }));
  CHECK_FALSE(changed([](auto& c) { c.output = "elsewhere"; }));
}

TEST_CASE("Configuration parsing", "[cli][config]") {
  SECTION("depth as a number or a list") {
    CHECK(config_from_json(Json{{"p", 3}}).ps == std::vector<int>{3});
    CHECK(config_from_json(Json{{"p", {1, 2}}}).ps == std::vector<int>{1, 2});
  }
  SECTION("unknown keys are rejected") {
    CHECK_THROWS_AS(config_from_json(Json{{"sead", 1}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json{{"init", {{"stratgy", "tqa"}}}}), ConfigError);
  }
  SECTION("wrong types are config errors") {
    CHECK_THROWS_AS(config_from_json(Json{{"shots", "many"}}), ConfigError);
  }
  SECTION("validation") {
    ExperimentConfig c;
    c.shots = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = ExperimentConfig{};
    c.network.kind = "file";
    c.network.path = "/nonexistent/net.net";
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = ExperimentConfig{};
    c.init.strategy = "magic";
    CHECK_THROWS_AS(validate(c), ConfigError);
    CHECK_NOTHROW(validate(ExperimentConfig{}));
  }
  SECTION("file round trip") {
    auto dir = scratch("config");
    ExperimentConfig c;
    c.seed = 99;
    c.instance.routes_per_car = 4;
    write_json(dir / "c.json", config_to_json(c));
    CHECK(config_hash(load_config(dir / "c.json")) == config_hash(c));
  }
}

TEST_CASE("Serialization round trips", "[cli][io]") {
  auto net = load_network_file(std::filesystem::path(FIXTURE_DIR) / "corridors.net");
  auto inst = build_instance(net, std::vector<CarSpec>(3, {0, 3, 3}), 4);
  SECTION("instance") {
    auto back = instance_from_json(instance_to_json(inst, "corridors.net"));
    CHECK(instance_digest(back) == instance_digest(inst));
    auto j = instance_to_json(inst);
    j["cars"][0][1]["segments"] = Json::array({0, 4});
    CHECK_THROWS(instance_from_json(j));
  }
  SECTION("ising") {
    auto m = normalize(to_ising(build_qubo(inst)));
    auto back = ising_from_json(ising_to_json(m));
    for (Bitstring z = 0; z < 512; ++z) CHECK(back.energy(z) == m.energy(z));
    CHECK(back.norm_factor == m.norm_factor);
  }
  SECTION("parameters") {
    auto v = init_tqa(3, 0.75);
    auto back = params_from_json(params_to_json(v, {{"strategy", "tqa"}}));
    CHECK(back.values == v.values);
    auto j = params_to_json(v);
    j["values"].erase(0);
    CHECK_THROWS(params_from_json(j));
  }
  SECTION("network") {
    auto back = network_from_json(network_to_json(net));
    CHECK(format_network(back) == format_network(net));
  }
}

TEST_CASE("generate writes instance, QUBO and Ising files", "[cli][generate]") {
  std::ostringstream log;
  SECTION("one car with two routes") {
    auto dir = scratch("generate1");
    auto c = small_config(dir);
    c.count = 2;
    cmd_generate(c, log);
    auto ising = read_json(dir / "instances" / "ising_000.json");
    CHECK(ising["n_qubits"] == 2);
    CHECK(fs::exists(dir / "instances" / "qubo_001.json"));
    CHECK(fs::exists(dir / "manifest.json"));
  }
  SECTION("three cars with three routes") {
    auto dir = scratch("generate3");
    auto c = small_config(dir);
    c.network.grid = {4, 4, 1.0, 2.0};
    c.instance.cars = 3;
    c.instance.routes_per_car = 3;
    cmd_generate(c, log);
    auto m = ising_from_json(read_json(dir / "instances" / "ising_000.json"));
    CHECK(m.n_qubits == 9);
    for (std::size_t car = 0; car < 3; ++car)
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b) CHECK(m.J.count({3 * car + a, 3 * car + b}) == 1);
  }
}

TEST_CASE("benchmark-init is reproducible", "[cli][benchmark]") {
  std::ostringstream log;
  auto a = scratch("bench_a"), b = scratch("bench_b");
  cmd_benchmark_init(small_config(a), log);
  cmd_benchmark_init(small_config(b), log);
  CHECK(fs::exists(a / "convergence_random.csv"));
  CHECK(fs::exists(a / "convergence_tqa.csv"));
  for (const char* f : {"convergence_random.csv", "convergence_tqa.csv", "summary.csv", "records.json"})
    CHECK(slurp(a / f) == slurp(b / f));
  CHECK(line_count(a / "summary.csv") == 2);
}

TEST_CASE("density tables cover every basis state", "[cli][density]") {
  std::ostringstream log;
  auto dir = scratch("density");
  auto c = small_config(dir);
  c.count = 2;
  c.instance.cars = 2;
  cmd_density(c, log);
  for (const char* arm : {"interp", "fourier", "precomputed", "optimized"}) {
    INFO(arm);
    CHECK(line_count(dir / (std::string("density_") + arm + ".csv")) == 1 + 2 * 16);
  }
  auto summary = slurp(dir / "density_summary.csv");
  CHECK(summary.find("0.0625") != std::string::npos);
}

TEST_CASE("scaling, precompute and report", "[cli][scaling][report]") {
  std::ostringstream log;
  auto dir = scratch("scaling");
  auto c = small_config(dir / "run");
  c.scaling.min_cars = 1;
  c.scaling.max_cars = 2;
  c.scaling.instances_per_size = 2;
  c.map.rows = 1;
  c.map.cells = 2;
  cmd_scaling(c, log);
  CHECK(line_count(dir / "run" / "scaling.csv") == 1 + 2 * 2 * 3);
  CHECK(line_count(dir / "run" / "scaling_summary.csv") > 1);
  auto records = read_json(dir / "run" / "records.json");
  REQUIRE(records.size() == 12);

  auto pre_dir = dir / "pre";
  auto pc = small_config(pre_dir);
  cmd_precompute(pc, log);
  auto pre = read_json(pre_dir / "precomputed_p2.json");
  CHECK(params_from_json(pre).p == 2);

  SECTION("three records merge into one table") {
    Json three = Json::array({records[0], records[1], records[2]});
    write_json(dir / "three.json", three);
    cmd_report({dir / "three.json"}, dir / "report", log);
    CHECK(line_count(dir / "report" / "report.csv") == 4);
    auto summary = slurp(dir / "report" / "report_summary.csv");
    CHECK(summary.find("qaoa") != std::string::npos);
    CHECK(summary.find("cf-qaoa") != std::string::npos);
  }
  SECTION("no records") {
    write_json(dir / "empty.json", Json::array());
    CHECK_THROWS_AS(cmd_report({dir / "empty.json"}, dir / "report", log), ConfigError);
  }
}

TEST_CASE("Command-line exit codes", "[cli][exit]") {
  auto dir = scratch("exit");
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("generate --no-such-flag") == 1);
  CHECK(run_cli("generate --shots 0 -o " + (dir / "x").string()) == 1);
  CHECK(run_cli("report " + (dir / "missing.json").string() + " -o " + dir.string()) == 1);
  CHECK(run_cli("generate --cars 1 --routes 2 --count 1 -o " + (dir / "ok").string()) == 0);
  CHECK(fs::exists(dir / "ok" / "instances" / "ising_000.json"));
}
