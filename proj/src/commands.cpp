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

#include "trafficqaoa/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

namespace trafficqaoa {

namespace {

constexpr const char* kHardwareNote =
    "hardware arms (physical-device runs, readout mitigation) are out of scope; "
    "all values are noiseless simulation or cost-model quantities";

class Csv {
 public:
  Csv(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }

  template <typename... Ts>
  void row(const Ts&... cells) {
    std::size_t i = 0;
    ((out_ << (i++ ? "," : "") << cells), ...);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

std::string csv_optional(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string("inf");
}

std::string csv_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return s.str();
}

Json base_record(const std::string& hash, const std::string& command, const Problem& pr,
                 std::size_t index) {
  return {{"config_hash", hash},
          {"command", command},
          {"instance_index", index},
          {"instance_seed", pr.seed},
          {"instance_digest", instance_digest(pr.traffic)},
          {"n_qubits", pr.n_qubits()},
          {"lambda", pr.qubo.lambda},
          {"spectrum",
           {{"e_min", pr.spectrum.e_min},
            {"e_max", pr.spectrum.e_max},
            {"e_random", pr.spectrum.e_random},
            {"ground_states", pr.spectrum.ground_states}}},
          {"hardware", "out of scope"}};
}

void write_manifest(const ExperimentConfig& c, const std::string& command, Json extra) {
  Json m = {{"command", command},
            {"config_hash", config_hash(c)},
            {"config", config_to_json(c)},
            {"note", kHardwareNote}};
  for (auto& [k, v] : extra.items()) m[k] = v;
  write_json(c.output / "manifest.json", m);
}

ParamVector load_params(const std::filesystem::path& path) {
  try {
    return params_from_json(read_json(path));
  } catch (const std::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

// Precomputed parameters from the config file, or computed on the fly from
// the coefficient statistics of `stats_from`.
std::pair<ParamVector, Json> precomputed_for(const ExperimentConfig& c, int p,
                                             const std::vector<Problem>& stats_from,
                                             std::uint64_t seed) {
  if (!c.init.params_file.empty()) {
    ParamVector v = load_params(c.init.params_file);
    if (v.mode != ParamMode::Standard || v.p != p)
      throw ConfigError("parameter file does not hold standard p = " + std::to_string(p) +
                        " parameters");
    return {v, {{"source", c.init.params_file.string()}}};
  }
  const CoefficientStats stats = ensemble_stats(stats_from);
  PrecomputeOptions po;
  po.p = p;
  po.n_samples = c.precompute.n_samples;
  po.n_qubits = c.precompute.n_qubits;
  po.tqa_dt = c.precompute.tqa_dt;
  po.seed = seed;
  po.optimizer = c.optimizer;
  const PrecomputeResult r = precompute_params(stats, po);
  return {r.params,
          {{"strategy", "precomputed"},
           {"stats", stats_to_json(stats)},
           {"n_samples", po.n_samples},
           {"n_qubits", po.n_qubits},
           {"start", "tqa"},
           {"tqa_dt", po.tqa_dt},
           {"seed", seed}}};
}

}  // namespace

std::vector<Problem> make_ensemble(const ExperimentConfig& c, const ProblemSpec& spec,
                                   std::size_t count, std::uint64_t seed) {
  if (c.network.kind == "file")
    return network_ensemble(load_network_file(c.network.path), spec, count, seed);
  return grid_ensemble(c.network.grid, spec, count, seed);
}

void cmd_generate(const ExperimentConfig& c, std::ostream& log) {
  validate(c);
  const auto problems = make_ensemble(c, c.instance, c.count, c.seed);
  const std::string ref = c.network.kind == "file" ? c.network.path.string() : "";
  Json index = Json::array();
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const Problem& pr = problems[i];
    std::ostringstream stem;
    stem << std::setw(3) << std::setfill('0') << i;
    const auto dir = c.output / "instances";
    write_json(dir / ("instance_" + stem.str() + ".json"), instance_to_json(pr.traffic, ref));
    write_json(dir / ("qubo_" + stem.str() + ".json"), qubo_to_json(pr.qubo));
    write_json(dir / ("ising_" + stem.str() + ".json"), ising_to_json(pr.ising));
    Json entry = {{"index", i},
                  {"seed", pr.seed},
                  {"digest", instance_digest(pr.traffic)},
                  {"n_qubits", pr.n_qubits()},
                  {"lambda", pr.qubo.lambda}};
    if (pr.qubo.lambda_warning) entry["lambda_warning"] = *pr.qubo.lambda_warning;
    index.push_back(entry);
    log << "instance " << i << ": " << pr.n_qubits() << " qubits, lambda " << pr.qubo.lambda
        << '\n';
  }
  write_manifest(c, "generate", {{"instances", index}});
}

void cmd_benchmark_init(const ExperimentConfig& c, std::ostream& log) {
  validate(c);
  const std::string hash = config_hash(c);
  const auto problems = make_ensemble(c, c.instance, c.count, c.seed);
  std::filesystem::create_directories(c.output);
  // One convergence trace file per arm.
  const std::vector<std::string> trace_header{
      "instance", "p", "restart", "iteration", "expectation", "r_random", "r_true"};
  Csv conv_random(c.output / "convergence_random.csv", trace_header);
  Csv conv_tqa(c.output / "convergence_tqa.csv", trace_header);
  Csv summary(c.output / "summary.csv",
              {"instance", "p", "mean_final_r_random_random", "mean_final_r_random_tqa", "gap"});
  Json records = Json::array();
  for (int p : c.ps)
    for (std::size_t i = 0; i < problems.size(); ++i) {
      const Problem& pr = problems[i];
      const std::uint64_t seed = derive_seed(derive_seed(c.seed, static_cast<std::uint64_t>(p)), i);
      const InitBenchmark b = benchmark_init(pr, p, c.init.restarts, seed, c.optimizer);
      const std::pair<const char*, const std::vector<OptimizationTrace>*> arms[] = {
          {"random", &b.random}, {"tqa", &b.tqa}};
      for (const auto& [name, traces] : arms) {
        Csv& conv = std::string(name) == "random" ? conv_random : conv_tqa;
        Json finals = Json::array();
        for (std::size_t r = 0; r < traces->size(); ++r) {
          const auto& t = (*traces)[r];
          for (std::size_t k = 0; k < t.iterates.size(); ++k) {
            const ApproxReport a = approx_measures(t.iterates[k].value, pr.spectrum);
            conv.row(i, p, r, k, t.iterates[k].value, a.r_random, a.r_true);
          }
          Json rec = {{"initial", params_to_json(t.initial().params)},
                      {"final", params_to_json(t.final().params)},
                      {"value", t.final().value},
                      {"iterations", t.iterations},
                      {"converged", t.converged},
                      {"stop_reason", t.stop_reason}};
          if (std::string(name) == "random") rec["seed"] = b.random_seeds[r];
          else rec["dt"] = b.tqa_dts[r];
          finals.push_back(rec);
        }
        Json rec = base_record(hash, "benchmark-init", pr, i);
        rec["p"] = p;
        rec["arm"] = name;
        rec["mean_final_r_random"] = mean_final_r_random(*traces, pr.spectrum);
        rec["restarts"] = finals;
        records.push_back(rec);
      }
      const double rr = mean_final_r_random(b.random, pr.spectrum);
      const double rt = mean_final_r_random(b.tqa, pr.spectrum);
      summary.row(i, p, rr, rt, rt - rr);
      log << "p=" << p << " instance " << i << ": random " << rr << ", tqa " << rt << '\n';
    }
  write_json(c.output / "records.json", records);
  write_manifest(c, "benchmark-init", Json::object());
}

void cmd_density(const ExperimentConfig& c, std::ostream& log) {
  validate(c);
  const std::string hash = config_hash(c);
  const auto problems = make_ensemble(c, c.instance, c.count, c.seed);
  const auto [pre, provenance] = precomputed_for(c, 2, problems, derive_seed(c.seed, 0xde));
  std::filesystem::create_directories(c.output);
  write_json(c.output / "precomputed_p2.json", params_to_json(pre, provenance));

  DensityOptions opts;
  opts.grid = c.init.grid;
  opts.beta_kernel = c.fourier_beta_kernel;
  opts.optimizer = c.optimizer;
  std::map<DensityArm, std::unique_ptr<Csv>> tables;
  for (DensityArm arm : {DensityArm::Interp, DensityArm::Fourier, DensityArm::Precomputed,
                         DensityArm::Optimized})
    tables[arm] = std::make_unique<Csv>(
        c.output / ("density_" + std::string(density_arm_name(arm)) + ".csv"),
        std::vector<std::string>{"instance", "state", "bitstring", "probability", "r_true"});
  Csv summary(c.output / "density_summary.csv",
              {"instance", "arm", "expectation", "mean_r_true", "p_ground", "background"});
  Json records = Json::array();
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const Problem& pr = problems[i];
    const DensityResult d = density(pr, pre, opts);
    const double background = 1.0 / static_cast<double>(pr.energies.size());
    for (const auto& arm : d.arms) {
      double pg = 0.0;
      for (Bitstring g : pr.spectrum.ground_states) pg += arm.probabilities[g];
      for (std::size_t z = 0; z < arm.probabilities.size(); ++z)
        tables[arm.arm]->row(i, z, to_bitstring(z, pr.n_qubits()), arm.probabilities[z],
                             r_true(pr.energies[z], pr.spectrum));
      summary.row(i, density_arm_name(arm.arm), arm.expectation, arm.mean_r_true, pg, background);
      Json rec = base_record(hash, "density", pr, i);
      rec["p"] = 2;
      rec["algorithm"] = "qaoa";
      rec["arm"] = density_arm_name(arm.arm);
      rec["parameters"] = params_to_json(arm.params);
      rec["approx"] = approx_to_json(approx_measures(arm.expectation, pr.spectrum));
      rec["p_ground"] = pg;
      records.push_back(rec);
    }
    log << "instance " << i << ": optimized mean R_true " << d.arms.back().mean_r_true << '\n';
  }
  write_json(c.output / "records.json", records);
  write_manifest(c, "density", {{"background_probability", 1.0 / std::pow(2.0, problems.front().n_qubits())}});
}

void cmd_scaling(const ExperimentConfig& c, std::ostream& log) {
  validate(c);
  const std::string hash = config_hash(c);
  const int p = c.ps.front();
  ProblemSpec spec = c.instance;
  spec.routes_per_car = c.scaling.routes_per_car;
  std::vector<std::vector<Problem>> families;
  std::vector<Problem> pooled;
  for (std::size_t cars = c.scaling.min_cars; cars <= c.scaling.max_cars; ++cars) {
    spec.cars = cars;
    families.push_back(make_ensemble(c, spec, c.scaling.instances_per_size, derive_seed(c.seed, cars)));
    pooled.insert(pooled.end(), families.back().begin(), families.back().end());
  }
  log << "generated " << pooled.size() << " instances\n";

  ArmOptions ao;
  ao.p = p;
  ao.shots = c.shots;
  ao.threshold = c.threshold;
  ao.t_single = c.t_single;
  ao.layout = c.layout;
  ao.optimizer = c.optimizer;
  ao.maqaoa_max_qubits = c.scaling.maqaoa_max_qubits;
  ParamVector start = init_tqa(p, c.init.dt);
  Json start_provenance = {{"strategy", c.init.strategy}};
  if (c.init.strategy == "precomputed") {
    auto [v, prov] = precomputed_for(c, p, pooled, derive_seed(c.seed, 0x9c));
    start = v;
    start_provenance = prov;
  } else if (c.init.strategy == "grid") {
    if (p != 1) throw ConfigError("init.strategy grid needs p = 1");
    ao.grid = c.init.grid;
    start_provenance["grid"] = c.init.grid;
  } else if (c.init.strategy == "tqa") {
    start_provenance["dt"] = c.init.dt;
  }
  std::filesystem::create_directories(c.output);
  write_json(c.output / "start_params.json", params_to_json(start, start_provenance));

  std::size_t max_n = 0;
  for (const auto& f : families) max_n = std::max(max_n, f.front().n_qubits());
  const CouplingMap map = make_map(c.map, static_cast<int>(max_n));

  Csv rows(c.output / "scaling.csv",
           {"cars", "n_qubits", "instance", "algorithm", "p", "optimized", "expectation",
            "r_true_exact", "r_true_sampled", "r_random_sampled", "best_r_true",
            "most_probable_r_true", "p_ground", "p_ground_observed", "p_acceptable",
            "p_acceptable_random", "k99", "t_total", "depth", "cnots", "swaps", "n_params",
            "iterations"});
  Json records = Json::array();
  std::map<Algorithm, std::vector<std::pair<std::size_t, std::vector<const ArmResult*>>>> by_alg;
  std::vector<ArmSet> keep;
  keep.reserve(pooled.size());
  for (std::size_t f = 0; f < families.size(); ++f) {
    const std::size_t cars = c.scaling.min_cars + f;
    for (Algorithm a : c.algorithms) by_alg[a].push_back({cars, {}});
    for (std::size_t i = 0; i < families[f].size(); ++i) {
      const Problem& pr = families[f][i];
      keep.push_back(run_arms(pr, c.algorithms, map, start, ao,
                              derive_seed(derive_seed(c.seed, 0x5c + cars), i)));
      const ArmSet& set = keep.back();
      for (const auto* arm : {&set.qaoa, &set.cf_qaoa, &set.cf_maqaoa}) {
        if (!*arm) continue;
        const ArmResult& r = **arm;
        rows.row(cars, pr.n_qubits(), i, algorithm_name(r.algorithm), p, r.optimized ? 1 : 0,
                 r.expectation, r.exact.r_true, r.sampled.r_true, r.sampled.r_random,
                 r.best_r_true, r.most_probable_r_true, r.p_ground, r.p_ground_observed,
                 r.acceptable.p_single, r.acceptable.random_baseline, csv_optional(r.runtime.k99),
                 csv_double(r.runtime.t_total), r.depth, r.cnots, r.swaps, r.n_params,
                 r.iterations);
        Json rec = base_record(hash, "scaling", pr, i);
        rec["cars"] = cars;
        rec["p"] = p;
        const Json arm_json = arm_to_json(r);
        for (const auto& [k, v] : arm_json.items()) rec[k] = v;
        if (set.plan && r.algorithm != Algorithm::Qaoa) rec["plan"] = plan_to_json(*set.plan);
        records.push_back(rec);
        by_alg[r.algorithm].back().second.push_back(&r);
      }
    }
    log << "cars " << cars << " done\n";
  }

  Csv summary(c.output / "scaling_summary.csv",
              {"algorithm", "cars", "n_qubits", "median_r_true_sampled", "median_best_r_true",
               "median_p_ground_observed", "background", "median_p_acceptable", "median_t_total",
               "runtime_ratio", "median_depth", "median_cnots"});
  for (const auto& [alg, sizes] : by_alg) {
    std::vector<RuntimeEstimate> series;
    for (const auto& [cars, arms] : sizes) {
      std::vector<double> t;
      for (const ArmResult* r : arms) t.push_back(r->runtime.t_total);
      RuntimeEstimate e;
      e.t_total = median(t);
      series.push_back(e);
    }
    std::vector<double> ratios(series.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<RuntimeEstimate> finite;
    for (const auto& e : series)
      if (std::isfinite(e.t_total) && e.t_total > 0) finite.push_back(e);
    if (!finite.empty()) {
      double lo = std::numeric_limits<double>::infinity();
      for (const auto& e : finite) lo = std::min(lo, e.t_total);
      for (std::size_t k = 0; k < series.size(); ++k) ratios[k] = series[k].t_total / lo;
    }
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const auto& [cars, arms] = sizes[k];
      std::vector<double> rt, best, pg, pa, depth, cn;
      for (const ArmResult* r : arms) {
        rt.push_back(r->sampled.r_true);
        best.push_back(r->best_r_true);
        pg.push_back(r->p_ground_observed);
        pa.push_back(r->acceptable.p_single);
        depth.push_back(r->depth);
        cn.push_back(r->cnots);
      }
      const std::size_t n = cars * c.scaling.routes_per_car;
      summary.row(algorithm_name(alg), cars, n, median(rt), median(best), median(pg),
                  std::pow(2.0, -static_cast<double>(n)), median(pa), csv_double(series[k].t_total),
                  csv_double(ratios[k]), median(depth), median(cn));
    }
  }
  write_json(c.output / "records.json", records);
  write_manifest(c, "scaling", {{"map", map_kind_name(map.kind())}, {"n_phys", map.n_phys()}});
}

void cmd_precompute(const ExperimentConfig& c, std::ostream& log) {
  validate(c);
  const auto problems = make_ensemble(c, c.instance, c.count, c.seed);
  ExperimentConfig local = c;
  local.init.params_file.clear();
  std::filesystem::create_directories(c.output);
  Json files = Json::array();
  for (int p : c.ps) {
    const auto [v, prov] =
        precomputed_for(local, p, problems, derive_seed(c.seed, static_cast<std::uint64_t>(p)));
    Json full = prov;
    full["config_hash"] = config_hash(c);
    const std::string name = "precomputed_p" + std::to_string(p) + ".json";
    write_json(c.output / name, params_to_json(v, full));
    files.push_back(name);
    log << "p=" << p << ":";
    for (double x : v.values) log << ' ' << x;
    log << '\n';
  }
  write_manifest(c, "precompute", {{"files", files}});
}

void cmd_report(const std::vector<std::filesystem::path>& inputs,
                const std::filesystem::path& output, std::ostream& log) {
  std::vector<Json> records;
  for (const auto& path : inputs) {
    Json j;
    try {
      j = read_json(path);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    if (!j.is_array()) throw ConfigError(path.string() + ": expected a JSON array of records");
    for (auto& r : j) records.push_back(r);
  }
  if (records.empty()) throw ConfigError("no records to report");

  // Group key: algorithm when present, else the density/benchmark arm.
  auto group_of = [](const Json& r) {
    std::string g = r.value("command", std::string("?"));
    if (r.contains("algorithm")) g += "/" + r["algorithm"].get<std::string>();
    if (r.contains("arm")) g += "/" + r["arm"].get<std::string>();
    return g;
  };
  auto number = [](const Json& r, const Json::json_pointer& ptr) -> std::string {
    if (!r.contains(ptr) || r.at(ptr).is_null()) return "";
    return csv_double(r.at(ptr).get<double>());
  };
  std::filesystem::create_directories(output);
  Csv merged(output / "report.csv",
             {"group", "config_hash", "instance_index", "instance_digest", "n_qubits", "p",
              "expectation", "r_true", "r_random", "best_r_true", "p_ground", "depth", "cnots"});
  std::map<std::string, std::vector<double>> r_true_by_group;
  for (const Json& r : records) {
    const std::string g = group_of(r);
    Json::json_pointer exp_ptr("/sampled/expectation"), rt_ptr("/sampled/r_true"),
        rr_ptr("/sampled/r_random");
    if (!r.contains(exp_ptr)) {
      exp_ptr = Json::json_pointer("/approx/expectation");
      rt_ptr = Json::json_pointer("/approx/r_true");
      rr_ptr = Json::json_pointer("/approx/r_random");
    }
    merged.row(g, r.value("config_hash", std::string()), r.value("instance_index", 0),
               r.value("instance_digest", std::string()), r.value("n_qubits", 0),
               r.value("p", 0), number(r, exp_ptr), number(r, rt_ptr), number(r, rr_ptr),
               number(r, Json::json_pointer("/best_r_true")),
               number(r, Json::json_pointer("/p_ground")), number(r, Json::json_pointer("/depth")),
               number(r, Json::json_pointer("/cnots")));
    if (r.contains(rt_ptr)) r_true_by_group[g].push_back(r.at(rt_ptr).get<double>());
    else r_true_by_group[g];
  }
  Csv summary(output / "report_summary.csv", {"group", "records", "median_r_true"});
  log << "# report: " << records.size() << " records\n# " << kHardwareNote << '\n';
  for (const auto& [g, v] : r_true_by_group) {
    const std::string med = v.empty() ? "" : csv_double(median(v));
    summary.row(g, v.size(), med);
    log << "[" << g << "] records=" << v.size() << (v.empty() ? "" : " median_r_true=" + med)
        << '\n';
  }
}

}  // namespace trafficqaoa
