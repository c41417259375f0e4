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
#include <iosfwd>
#include <vector>

#include "trafficqaoa/config.hpp"

namespace trafficqaoa {

// Each command writes under config.output and logs one line per stage to
// `log`. Files are written in a canonical order so reruns are byte-identical.
void cmd_generate(const ExperimentConfig& c, std::ostream& log);
void cmd_benchmark_init(const ExperimentConfig& c, std::ostream& log);
void cmd_density(const ExperimentConfig& c, std::ostream& log);
void cmd_scaling(const ExperimentConfig& c, std::ostream& log);
void cmd_precompute(const ExperimentConfig& c, std::ostream& log);

// Merges RunRecord files (JSON arrays) into report.csv plus a per-algorithm
// summary; throws ConfigError when no records are found.
void cmd_report(const std::vector<std::filesystem::path>& records,
                const std::filesystem::path& output, std::ostream& log);

// The configured ensemble: c.count instances of c.instance on c.network.
std::vector<Problem> make_ensemble(const ExperimentConfig& c, const ProblemSpec& spec,
                                   std::size_t count, std::uint64_t seed);

}  // namespace trafficqaoa
