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

#include <string>
#include <utility>
#include <vector>

#include "trafficqaoa/circuit.hpp"

namespace trafficqaoa {

enum class LayoutStrategy { BfsChain, GreedyWeight };

std::string_view layout_strategy_name(LayoutStrategy s);

// Which couplings of a model survive placement on a coupling map: a pair is
// kept iff its two qubits land on neighbouring physical qubits.
struct CompressionPlan {
  std::vector<int> layout;  // logical -> physical
  std::vector<VarPair> kept_pairs;
  std::vector<VarPair> removed_pairs;
  LayoutStrategy strategy = LayoutStrategy::BfsChain;
};

// Greedy placement maximizing total kept |J|: the heaviest qubit goes on the
// first BFS site, then repeatedly the unplaced qubit most strongly coupled to
// the placed set goes on the free site that keeps the most weight.
std::vector<int> greedy_layout(const IsingModel& m, const CouplingMap& map);

// Throws std::invalid_argument for a non-injective or out-of-range layout.
CompressionPlan plan_compression(const IsingModel& m, const CouplingMap& map,
                                 std::vector<int> layout,
                                 LayoutStrategy strategy = LayoutStrategy::BfsChain);
CompressionPlan plan_compression(const IsingModel& m, const CouplingMap& map,
                                 LayoutStrategy strategy = LayoutStrategy::BfsChain);

// QAOA with RZZ gates only for kept pairs; 2p parameters. The objective must
// still be the full model.
Circuit build_cf_qaoa(const IsingModel& m, const CompressionPlan& plan, int p);

struct MultiAngleAnsatz {
  Circuit circuit;
  ParamVector params;  // zero-initialized template
};

// Same gate structure as CF-QAOA with an independent angle per rotation gate.
MultiAngleAnsatz build_cf_maqaoa(const IsingModel& m, const CompressionPlan& plan, int p);

// Angles that reproduce a standard (gamma, beta) point on a multi-angle
// circuit: gamma * h_u, gamma * J_uv and beta per gate.
ParamVector broadcast_params(const Circuit& multi_angle, const ParamVector& standard);

}  // namespace trafficqaoa
