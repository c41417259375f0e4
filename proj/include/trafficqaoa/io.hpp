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

#include <filesystem>
#include <string>

#include "json.hpp"
#include "trafficqaoa/cf.hpp"
#include "trafficqaoa/experiments.hpp"
#include "trafficqaoa/ising.hpp"
#include "trafficqaoa/metrics.hpp"
#include "trafficqaoa/qubo.hpp"
#include "trafficqaoa/roadnet.hpp"

namespace trafficqaoa {

using Json = nlohmann::ordered_json;

Json network_to_json(const RoadNetwork& net);
RoadNetwork network_from_json(const Json& j);

// `network_ref` names the source file when the network came from one.
Json instance_to_json(const TrafficInstance& inst, const std::string& network_ref = "");
TrafficInstance instance_from_json(const Json& j);

Json quadratic_to_json(const QuadraticForm& f);
Json qubo_to_json(const QuboModel& q);

Json ising_to_json(const IsingModel& m);
IsingModel ising_from_json(const Json& j);

Json params_to_json(const ParamVector& v, const Json& provenance = Json::object());
ParamVector params_from_json(const Json& j);

Json plan_to_json(const CompressionPlan& plan);
Json approx_to_json(const ApproxReport& r);
Json runtime_to_json(const RuntimeEstimate& r);
Json arm_to_json(const ArmResult& r);
Json stats_to_json(const CoefficientStats& s);
CoefficientStats stats_from_json(const Json& j);

// Stable 64-bit digest of a JSON value's compact dump.
std::uint64_t json_digest(const Json& j);
std::string instance_digest(const TrafficInstance& inst);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace trafficqaoa
