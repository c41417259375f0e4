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

#include "trafficqaoa/cf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trafficqaoa {

std::string_view layout_strategy_name(LayoutStrategy s) {
  return s == LayoutStrategy::BfsChain ? "bfs-chain" : "greedy-weight";
}

std::vector<int> greedy_layout(const IsingModel& m, const CouplingMap& map) {
  const auto n = static_cast<int>(m.n_qubits);
  if (n > map.n_phys()) throw std::invalid_argument("more logical than physical qubits");
  std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (const auto& [uv, j] : m.J) {
    w[uv.first][uv.second] += std::abs(j);
    w[uv.second][uv.first] += std::abs(j);
  }
  std::vector<int> layout(static_cast<std::size_t>(n), -1);
  std::vector<int> occupant(static_cast<std::size_t>(map.n_phys()), -1);
  if (n == 0) return layout;

  auto place = [&](int u, int q) {
    layout[static_cast<std::size_t>(u)] = q;
    occupant[static_cast<std::size_t>(q)] = u;
  };
  int first = 0;
  double heaviest = -1.0;
  for (int u = 0; u < n; ++u) {
    double s = 0.0;
    for (double x : w[static_cast<std::size_t>(u)]) s += x;
    if (s > heaviest) {
      heaviest = s;
      first = u;
    }
  }
  const auto order = map.bfs_order();
  place(first, order.front());

  for (int placed = 1; placed < n; ++placed) {
    int next = -1;
    double attach = -1.0;
    for (int u = 0; u < n; ++u) {
      if (layout[static_cast<std::size_t>(u)] >= 0) continue;
      double s = 0.0;
      for (int v = 0; v < n; ++v)
        if (layout[static_cast<std::size_t>(v)] >= 0)
          s += w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      if (s > attach) {
        attach = s;
        next = u;
      }
    }
    int site = -1;
    double gain = -1.0;
    for (int q : order) {
      if (occupant[static_cast<std::size_t>(q)] >= 0) continue;
      bool frontier = false;
      double g = 0.0;
      for (int nb : map.neighbours(q)) {
        const int v = occupant[static_cast<std::size_t>(nb)];
        if (v < 0) continue;
        frontier = true;
        g += w[static_cast<std::size_t>(next)][static_cast<std::size_t>(v)];
      }
      if (frontier && g > gain) {
        gain = g;
        site = q;
      }
    }
    if (site < 0)
      for (int q : order)
        if (occupant[static_cast<std::size_t>(q)] < 0) {
          site = q;
          break;
        }
    place(next, site);
  }
  return layout;
}

CompressionPlan plan_compression(const IsingModel& m, const CouplingMap& map,
                                 std::vector<int> layout, LayoutStrategy strategy) {
  const auto n = static_cast<int>(m.n_qubits);
  if (n > map.n_phys()) throw std::invalid_argument("more logical than physical qubits");
  if (static_cast<int>(layout.size()) != n)
    throw std::invalid_argument("layout size does not match the model");
  std::vector<char> used(static_cast<std::size_t>(map.n_phys()), 0);
  for (int q : layout) {
    if (q < 0 || q >= map.n_phys() || used[static_cast<std::size_t>(q)])
      throw std::invalid_argument("layout is not an injective placement");
    used[static_cast<std::size_t>(q)] = 1;
  }
  CompressionPlan plan;
  plan.layout = std::move(layout);
  plan.strategy = strategy;
  for (const auto& [uv, j] : m.J) {
    if (map.adjacent(plan.layout[uv.first], plan.layout[uv.second]))
      plan.kept_pairs.push_back(uv);
    else
      plan.removed_pairs.push_back(uv);
  }
  return plan;
}

CompressionPlan plan_compression(const IsingModel& m, const CouplingMap& map,
                                 LayoutStrategy strategy) {
  auto layout = strategy == LayoutStrategy::BfsChain
                    ? default_layout(map, static_cast<int>(m.n_qubits))
                    : greedy_layout(m, map);
  return plan_compression(m, map, std::move(layout), strategy);
}

Circuit build_cf_qaoa(const IsingModel& m, const CompressionPlan& plan, int p) {
  return build_layered(m, p, plan.kept_pairs, ParamMode::Standard);
}

MultiAngleAnsatz build_cf_maqaoa(const IsingModel& m, const CompressionPlan& plan, int p) {
  MultiAngleAnsatz out;
  out.circuit = build_layered(m, p, plan.kept_pairs, ParamMode::MultiAngle);
  out.params.mode = ParamMode::MultiAngle;
  out.params.p = p;
  out.params.per_layer = out.circuit.n_params / p;
  out.params.values.assign(static_cast<std::size_t>(out.circuit.n_params), 0.0);
  return out;
}

ParamVector broadcast_params(const Circuit& multi_angle, const ParamVector& standard) {
  if (standard.mode != ParamMode::Standard)
    throw std::invalid_argument("broadcast needs a standard-mode source");
  ParamVector out;
  out.mode = ParamMode::MultiAngle;
  out.p = standard.p;
  out.per_layer = multi_angle.n_params / std::max(1, standard.p);
  out.values.assign(static_cast<std::size_t>(multi_angle.n_params), 0.0);
  for (const Gate& g : multi_angle.gates) {
    if (!is_parameterized(g.kind) || g.angle.param < 0) continue;
    if (g.layer < 0 || g.layer >= standard.p)
      throw std::invalid_argument("gate layer outside the source schedule");
    const double v = g.kind == GateKind::RX ? standard.beta(g.layer)
                                            : standard.gamma(g.layer) * g.coefficient;
    out.values[static_cast<std::size_t>(g.angle.param)] = v;
  }
  return out;
}

}  // namespace trafficqaoa
