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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trafficqaoa/ising.hpp"

namespace trafficqaoa {

// Gate conventions:
//   RZ(t)  = exp(-i t Z / 2)
//   RX(t)  = exp(-i t X / 2)
//   RZZ(t) = exp(-i t Z Z / 2)
enum class GateKind { H, RX, RZ, RZZ, CNOT, SWAP };

std::string_view gate_name(GateKind kind);
bool is_two_qubit(GateKind kind);
bool is_diagonal(GateKind kind);
bool is_parameterized(GateKind kind);

// angle = literal + scale * params[param], or just literal when param < 0.
struct AngleRef {
  int param = -1;
  double scale = 0.0;
  double literal = 0.0;

  double resolve(std::span<const double> params) const {
    return param < 0 ? literal : literal + scale * params[static_cast<std::size_t>(param)];
  }
};

struct Gate {
  GateKind kind;
  int q0;
  int q1 = -1;
  AngleRef angle{};
  int layer = -1;            // QAOA layer, -1 outside the layered part
  double coefficient = 0.0;  // h_u or J_uv carried by RZ/RZZ, 1 for RX
};

struct Circuit {
  int n_qubits = 0;
  int n_params = 0;
  std::vector<Gate> gates;

  // Throws std::invalid_argument on out-of-range or coincident qubits.
  void validate() const;
  std::size_t count(GateKind kind) const;
};

enum class ParamMode { Standard, MultiAngle };

// Standard: values = (gamma_1..gamma_p, beta_1..beta_p).
// Multi-angle: one angle per rotation gate, laid out layer by layer as
// [RZ angles | RZZ angles | RX angles]; per_layer holds the counts.
struct ParamVector {
  ParamMode mode = ParamMode::Standard;
  int p = 0;
  std::vector<double> values;
  int per_layer = 0;

  static ParamVector standard(std::span<const double> gammas, std::span<const double> betas);
  double gamma(int layer) const;  // 0-based
  double beta(int layer) const;
  std::span<const double> gammas() const;
  std::span<const double> betas() const;
};

// H on every qubit, then p layers of RZ (per stored h), RZZ (per J pair in
// `pairs`, or all J pairs), RX (per qubit), so that the bound state is
// prod_l exp(-i beta_l H_B) exp(-i gamma_l H_C) |+>^N with H_B = -sum X.
Circuit build_qaoa(const IsingModel& m, int p);
Circuit build_layered(const IsingModel& m, int p, std::span<const VarPair> pairs,
                      ParamMode mode);

// Shifts beta (standard mode) or every angle (multi-angle mode) by integer
// multiples of pi into [-pi/2, pi/2). Both are exact symmetries up to a
// global phase. Standard-mode gamma is left untouched.
ParamVector canonicalize_params(const ParamVector& v);

// One gate per line: "<KIND> <q0> [<q1>] [<param> <scale> <literal>]".
std::string format_circuit(const Circuit& c);
Circuit parse_circuit(std::string_view text);

// ---------------------------------------------------------------------------
// Hardware connectivity

enum class MapKind { Linear, HeavyHex, Complete, Custom };

class CouplingMap {
 public:
  CouplingMap(int n_phys, std::vector<std::pair<int, int>> edges, MapKind kind);

  static CouplingMap linear(int n);
  static CouplingMap complete(int n);
  // rows chains of 4*cells+1 qubits joined by bridge qubits at every fourth
  // column, offset by two on alternate row gaps: degree-2/3 heavy-hex pattern.
  static CouplingMap heavy_hex(int rows, int cells);
  static CouplingMap custom(int n, std::vector<std::pair<int, int>> edges) {
    return {n, std::move(edges), MapKind::Custom};
  }

  int n_phys() const { return n_phys_; }
  MapKind kind() const { return kind_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbours(int q) const { return adjacency_[static_cast<std::size_t>(q)]; }
  bool adjacent(int a, int b) const;
  bool connected() const;
  double average_degree() const;
  // Hop distance, -1 when unreachable.
  int distance(int a, int b) const;
  // Shortest path a -> b, preferring the lowest-index neighbour at each hop.
  std::vector<int> shortest_path(int a, int b) const;
  // Breadth-first order from qubit 0, neighbours in ascending order.
  std::vector<int> bfs_order() const;

 private:
  int n_phys_;
  MapKind kind_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> dist_;
};

std::string_view map_kind_name(MapKind kind);

// Logical qubit u -> bfs_order()[u].
std::vector<int> default_layout(const CouplingMap& map, int n_logical);

struct RoutingResult {
  Circuit routed;  // on map.n_phys() qubits; RZZ expanded, SWAPs as 3 CNOTs
  int depth = 0;
  int cnot_count = 0;
  int swap_count = 0;
  std::vector<int> initial_layout;  // logical -> physical
  std::vector<int> final_layout;
};

// Longest dependency chain, every gate counting one step.
int circuit_depth(const Circuit& c);

// Greedy router. Runs of diagonal gates (RZ, RZZ) commute and are emitted in
// rounds of qubit-disjoint executable gates; when nothing in the run is
// executable, the farthest-apart pending pair (ties: lowest qubit indices) is
// brought together by SWAPs along a shortest path.
RoutingResult route_and_count(const Circuit& c, const CouplingMap& map,
                              std::span<const int> layout);

}  // namespace trafficqaoa
