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

#include "trafficqaoa/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace trafficqaoa {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::RX: return "RX";
    case GateKind::RZ: return "RZ";
    case GateKind::RZZ: return "RZZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

bool is_two_qubit(GateKind kind) {
  return kind == GateKind::RZZ || kind == GateKind::CNOT || kind == GateKind::SWAP;
}

bool is_diagonal(GateKind kind) { return kind == GateKind::RZ || kind == GateKind::RZZ; }

bool is_parameterized(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RZ || kind == GateKind::RZZ;
}

void Circuit::validate() const {
  for (const Gate& g : gates) {
    if (g.q0 < 0 || g.q0 >= n_qubits) throw std::invalid_argument("gate qubit out of range");
    if (is_two_qubit(g.kind)) {
      if (g.q1 < 0 || g.q1 >= n_qubits) throw std::invalid_argument("gate qubit out of range");
      if (g.q0 == g.q1) throw std::invalid_argument("two-qubit gate on a single qubit");
    }
    if (g.angle.param >= n_params) throw std::invalid_argument("angle parameter out of range");
  }
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

ParamVector ParamVector::standard(std::span<const double> gammas, std::span<const double> betas) {
  if (gammas.size() != betas.size())
    throw std::invalid_argument("gamma and beta lengths differ");
  ParamVector v;
  v.mode = ParamMode::Standard;
  v.p = static_cast<int>(gammas.size());
  v.per_layer = 2;
  v.values.assign(gammas.begin(), gammas.end());
  v.values.insert(v.values.end(), betas.begin(), betas.end());
  return v;
}

double ParamVector::gamma(int layer) const { return gammas()[static_cast<std::size_t>(layer)]; }
double ParamVector::beta(int layer) const { return betas()[static_cast<std::size_t>(layer)]; }

std::span<const double> ParamVector::gammas() const {
  if (mode != ParamMode::Standard) throw std::logic_error("gammas() needs standard mode");
  return std::span<const double>(values).subspan(0, static_cast<std::size_t>(p));
}

std::span<const double> ParamVector::betas() const {
  if (mode != ParamMode::Standard) throw std::logic_error("betas() needs standard mode");
  return std::span<const double>(values).subspan(static_cast<std::size_t>(p),
                                                 static_cast<std::size_t>(p));
}

Circuit build_layered(const IsingModel& m, int p, std::span<const VarPair> pairs,
                      ParamMode mode) {
  if (p < 1) throw std::invalid_argument("QAOA needs p >= 1");
  for (const VarPair& uv : pairs)
    if (!m.J.count(uv)) throw std::invalid_argument("pair is not a coupling of the model");

  Circuit c;
  c.n_qubits = static_cast<int>(m.n_qubits);
  const int n = c.n_qubits;
  const int per_layer = static_cast<int>(m.h.size() + pairs.size()) + n;
  c.n_params = mode == ParamMode::Standard ? 2 * p : p * per_layer;
  for (int u = 0; u < n; ++u) c.gates.push_back({GateKind::H, u});

  for (int l = 0; l < p; ++l) {
    int next = l * per_layer;
    auto ref = [&](bool mixer, double coeff) {
      if (mode == ParamMode::Standard)
        return AngleRef{mixer ? p + l : l, mixer ? -2.0 : 2.0 * coeff, 0.0};
      return AngleRef{next++, mixer ? -2.0 : 2.0, 0.0};
    };
    for (const auto& [u, hu] : m.h) {
      Gate g{GateKind::RZ, static_cast<int>(u)};
      g.angle = ref(false, hu);
      g.layer = l;
      g.coefficient = hu;
      c.gates.push_back(g);
    }
    for (const VarPair& uv : pairs) {
      const double j = m.J.at(uv);
      Gate g{GateKind::RZZ, static_cast<int>(uv.first), static_cast<int>(uv.second)};
      g.angle = ref(false, j);
      g.layer = l;
      g.coefficient = j;
      c.gates.push_back(g);
    }
    for (int u = 0; u < n; ++u) {
      Gate g{GateKind::RX, u};
      g.angle = ref(true, 1.0);
      g.layer = l;
      g.coefficient = 1.0;
      c.gates.push_back(g);
    }
  }
  return c;
}

Circuit build_qaoa(const IsingModel& m, int p) {
  std::vector<VarPair> pairs;
  for (const auto& [uv, j] : m.J) pairs.push_back(uv);
  return build_layered(m, p, pairs, ParamMode::Standard);
}

namespace {

double shift_half_open(double x) {
  // into [-pi/2, pi/2) by multiples of pi
  constexpr double pi = std::numbers::pi;
  double y = x - pi * std::floor((x + pi / 2) / pi);
  if (y >= pi / 2) y -= pi;
  if (y < -pi / 2) y += pi;
  return y;
}

}  // namespace

ParamVector canonicalize_params(const ParamVector& v) {
  ParamVector out = v;
  if (v.mode == ParamMode::Standard) {
    for (int l = 0; l < v.p; ++l) {
      auto& b = out.values[static_cast<std::size_t>(v.p + l)];
      b = shift_half_open(b);
    }
  } else {
    for (double& x : out.values) x = shift_half_open(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format

std::string format_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "circuit " << c.n_qubits << ' ' << c.n_params << '\n';
  char buf[128];
  for (const Gate& g : c.gates) {
    out << gate_name(g.kind) << ' ' << g.q0;
    if (is_two_qubit(g.kind)) out << ' ' << g.q1;
    if (is_parameterized(g.kind)) {
      std::snprintf(buf, sizeof buf, " %d %.17g %.17g %d %.17g", g.angle.param, g.angle.scale,
                    g.angle.literal, g.layer, g.coefficient);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

Circuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  Circuit c;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind)) continue;
    if (!header) {
      if (kind != "circuit" || !(fields >> c.n_qubits >> c.n_params))
        throw ParseError(lineno, "expected 'circuit <n_qubits> <n_params>'");
      header = true;
      continue;
    }
    Gate g{GateKind::H, 0};
    if (kind == "H") g.kind = GateKind::H;
    else if (kind == "RX") g.kind = GateKind::RX;
    else if (kind == "RZ") g.kind = GateKind::RZ;
    else if (kind == "RZZ") g.kind = GateKind::RZZ;
    else if (kind == "CNOT") g.kind = GateKind::CNOT;
    else if (kind == "SWAP") g.kind = GateKind::SWAP;
    else throw ParseError(lineno, "unknown gate '" + kind + "'");
    if (!(fields >> g.q0)) throw ParseError(lineno, "missing qubit");
    if (is_two_qubit(g.kind) && !(fields >> g.q1)) throw ParseError(lineno, "missing qubit");
    if (is_parameterized(g.kind) &&
        !(fields >> g.angle.param >> g.angle.scale >> g.angle.literal >> g.layer >> g.coefficient))
      throw ParseError(lineno, "missing angle fields");
    std::string extra;
    if (fields >> extra) throw ParseError(lineno, "trailing field '" + extra + "'");
    c.gates.push_back(g);
  }
  if (!header) throw ParseError(lineno, "missing circuit header");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Coupling maps

CouplingMap::CouplingMap(int n_phys, std::vector<std::pair<int, int>> edges, MapKind kind)
    : n_phys_(n_phys), kind_(kind) {
  if (n_phys < 1) throw std::invalid_argument("coupling map needs >= 1 qubit");
  adjacency_.assign(static_cast<std::size_t>(n_phys), {});
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_phys || b >= n_phys || a == b)
      throw std::invalid_argument("invalid coupling edge");
    if (a > b) std::swap(a, b);
    edges_.emplace_back(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [a, b] : edges_) {
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

  dist_.assign(static_cast<std::size_t>(n_phys), std::vector<int>(static_cast<std::size_t>(n_phys), -1));
  for (int s = 0; s < n_phys; ++s) {
    auto& d = dist_[static_cast<std::size_t>(s)];
    std::queue<int> q;
    d[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : neighbours(x))
        if (d[static_cast<std::size_t>(y)] < 0) {
          d[static_cast<std::size_t>(y)] = d[static_cast<std::size_t>(x)] + 1;
          q.push(y);
        }
    }
  }
}

CouplingMap CouplingMap::linear(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return {n, std::move(e), MapKind::Linear};
}

CouplingMap CouplingMap::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return {n, std::move(e), MapKind::Complete};
}

CouplingMap CouplingMap::heavy_hex(int rows, int cells) {
  if (rows < 1 || cells < 1) throw std::invalid_argument("heavy-hex needs rows, cells >= 1");
  const int row_len = 4 * cells + 1;
  std::vector<std::pair<int, int>> e;
  int next = 0;
  std::vector<int> prev_row;
  for (int r = 0; r < rows; ++r) {
    std::vector<int> row(static_cast<std::size_t>(row_len));
    if (r > 0) {
      // bridges between row r-1 and row r, reserved before the row itself
      const int offset = ((r - 1) % 2 == 0) ? 0 : 2;
      std::vector<std::pair<int, int>> bridges;
      for (int col = offset; col < row_len; col += 4) bridges.emplace_back(col, next++);
      for (int c = 0; c < row_len; ++c) row[static_cast<std::size_t>(c)] = next++;
      for (auto [col, b] : bridges) {
        e.emplace_back(prev_row[static_cast<std::size_t>(col)], b);
        e.emplace_back(b, row[static_cast<std::size_t>(col)]);
      }
    } else {
      for (int c = 0; c < row_len; ++c) row[static_cast<std::size_t>(c)] = next++;
    }
    for (int c = 0; c + 1 < row_len; ++c)
      e.emplace_back(row[static_cast<std::size_t>(c)], row[static_cast<std::size_t>(c + 1)]);
    prev_row = std::move(row);
  }
  return {next, std::move(e), MapKind::HeavyHex};
}

bool CouplingMap::adjacent(int a, int b) const {
  const auto& nb = neighbours(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool CouplingMap::connected() const {
  for (int d : dist_[0])
    if (d < 0) return false;
  return true;
}

double CouplingMap::average_degree() const {
  return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(n_phys_);
}

int CouplingMap::distance(int a, int b) const {
  return dist_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

std::vector<int> CouplingMap::shortest_path(int a, int b) const {
  if (distance(a, b) < 0) throw std::runtime_error("qubits are not connected");
  std::vector<int> path{a};
  int x = a;
  while (x != b) {
    for (int y : neighbours(x))
      if (distance(y, b) == distance(x, b) - 1) {
        x = y;
        break;
      }
    path.push_back(x);
  }
  return path;
}

std::vector<int> CouplingMap::bfs_order() const {
  std::vector<int> order;
  std::vector<char> seen(static_cast<std::size_t>(n_phys_), 0);
  for (int root = 0; root < n_phys_; ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    std::queue<int> q;
    q.push(root);
    seen[static_cast<std::size_t>(root)] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      order.push_back(x);
      for (int y : neighbours(x))
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          q.push(y);
        }
    }
  }
  return order;
}

std::string_view map_kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::Linear: return "linear";
    case MapKind::HeavyHex: return "heavy-hex";
    case MapKind::Complete: return "complete";
    case MapKind::Custom: return "custom";
  }
  return "?";
}

std::vector<int> default_layout(const CouplingMap& map, int n_logical) {
  if (n_logical > map.n_phys()) throw std::invalid_argument("more logical than physical qubits");
  auto order = map.bfs_order();
  order.resize(static_cast<std::size_t>(n_logical));
  return order;
}

// ---------------------------------------------------------------------------
// Routing

int circuit_depth(const Circuit& c) {
  std::vector<int> level(static_cast<std::size_t>(c.n_qubits), 0);
  int depth = 0;
  for (const Gate& g : c.gates) {
    int l = level[static_cast<std::size_t>(g.q0)];
    if (is_two_qubit(g.kind)) l = std::max(l, level[static_cast<std::size_t>(g.q1)]);
    ++l;
    level[static_cast<std::size_t>(g.q0)] = l;
    if (is_two_qubit(g.kind)) level[static_cast<std::size_t>(g.q1)] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

namespace {

class Router {
 public:
  Router(const Circuit& c, const CouplingMap& map, std::span<const int> layout)
      : circuit_(c), map_(map), phys_(layout.begin(), layout.end()),
        logical_(static_cast<std::size_t>(map.n_phys()), -1) {
    if (static_cast<int>(layout.size()) != c.n_qubits)
      throw std::invalid_argument("layout size does not match circuit width");
    if (c.n_qubits > map.n_phys())
      throw std::invalid_argument("circuit wider than coupling map");
    if (!map.connected()) throw std::invalid_argument("coupling map is disconnected");
    for (int u = 0; u < c.n_qubits; ++u) {
      const int q = phys_[static_cast<std::size_t>(u)];
      if (q < 0 || q >= map.n_phys() || logical_[static_cast<std::size_t>(q)] != -1)
        throw std::invalid_argument("layout is not an injective placement");
      logical_[static_cast<std::size_t>(q)] = u;
    }
    out_.n_qubits = map.n_phys();
    out_.n_params = c.n_params;
  }

  RoutingResult run() {
    RoutingResult res;
    res.initial_layout = phys_;
    const auto& gates = circuit_.gates;
    std::size_t i = 0;
    while (i < gates.size()) {
      if (is_diagonal(gates[i].kind)) {
        std::vector<std::size_t> run;
        while (i < gates.size() && is_diagonal(gates[i].kind)) run.push_back(i++);
        route_diagonal(run);
      } else {
        route_single(gates[i++]);
      }
    }
    res.final_layout = phys_;
    res.swap_count = swaps_;
    res.cnot_count = static_cast<int>(out_.count(GateKind::CNOT));
    res.depth = circuit_depth(out_);
    res.routed = std::move(out_);
    return res;
  }

 private:
  int pq(int logical) const { return phys_[static_cast<std::size_t>(logical)]; }

  void emit(Gate g) { out_.gates.push_back(g); }

  void emit_swap(int a, int b) {
    emit({GateKind::CNOT, a, b});
    emit({GateKind::CNOT, b, a});
    emit({GateKind::CNOT, a, b});
    ++swaps_;
    const int la = logical_[static_cast<std::size_t>(a)];
    const int lb = logical_[static_cast<std::size_t>(b)];
    std::swap(logical_[static_cast<std::size_t>(a)], logical_[static_cast<std::size_t>(b)]);
    if (la >= 0) phys_[static_cast<std::size_t>(la)] = b;
    if (lb >= 0) phys_[static_cast<std::size_t>(lb)] = a;
  }

  // Moves logical qubit u along a shortest path until it neighbours v.
  void bring_together(int u, int v) {
    const auto path = map_.shortest_path(pq(u), pq(v));
    for (std::size_t k = 0; k + 2 < path.size(); ++k) emit_swap(path[k], path[k + 1]);
  }

  void emit_mapped(const Gate& g) {
    Gate m = g;
    m.q0 = pq(g.q0);
    if (g.kind == GateKind::RZZ) {
      const int a = pq(g.q0), b = pq(g.q1);
      emit({GateKind::CNOT, a, b});
      Gate rz = g;
      rz.kind = GateKind::RZ;
      rz.q0 = b;
      rz.q1 = -1;
      emit(rz);
      emit({GateKind::CNOT, a, b});
      return;
    }
    if (g.kind == GateKind::SWAP) {
      const int a = pq(g.q0), b = pq(g.q1);
      emit({GateKind::CNOT, a, b});
      emit({GateKind::CNOT, b, a});
      emit({GateKind::CNOT, a, b});
      return;
    }
    if (is_two_qubit(g.kind)) m.q1 = pq(g.q1);
    emit(m);
  }

  void route_single(const Gate& g) {
    if (is_two_qubit(g.kind) && !map_.adjacent(pq(g.q0), pq(g.q1))) bring_together(g.q0, g.q1);
    emit_mapped(g);
  }

  void route_diagonal(std::vector<std::size_t> remaining) {
    const auto& gates = circuit_.gates;
    while (!remaining.empty()) {
      auto executable = [&](std::size_t idx) {
        const Gate& g = gates[idx];
        return !is_two_qubit(g.kind) || map_.adjacent(pq(g.q0), pq(g.q1));
      };
      // Pending executable two-qubit load per physical qubit.
      std::vector<int> load(static_cast<std::size_t>(map_.n_phys()), 0);
      std::vector<std::size_t> ready;
      for (std::size_t idx : remaining)
        if (executable(idx)) {
          ready.push_back(idx);
          const Gate& g = gates[idx];
          if (is_two_qubit(g.kind)) {
            ++load[static_cast<std::size_t>(pq(g.q0))];
            ++load[static_cast<std::size_t>(pq(g.q1))];
          }
        }

      if (ready.empty()) {
        std::size_t pick = remaining.front();
        int best = -1;
        std::pair<int, int> best_key{0, 0};
        for (std::size_t idx : remaining) {
          const Gate& g = gates[idx];
          const int d = map_.distance(pq(g.q0), pq(g.q1));
          const std::pair<int, int> key{std::min(g.q0, g.q1), std::max(g.q0, g.q1)};
          if (d > best || (d == best && key < best_key)) {
            best = d;
            best_key = key;
            pick = idx;
          }
        }
        const Gate& g = gates[pick];
        bring_together(std::min(g.q0, g.q1), std::max(g.q0, g.q1));
        continue;
      }

      auto weight = [&](std::size_t idx) {
        const Gate& g = gates[idx];
        if (!is_two_qubit(g.kind)) return 0;
        return load[static_cast<std::size_t>(pq(g.q0))] + load[static_cast<std::size_t>(pq(g.q1))];
      };
      std::stable_sort(ready.begin(), ready.end(),
                       [&](std::size_t a, std::size_t b) { return weight(a) > weight(b); });
      std::vector<char> busy(static_cast<std::size_t>(map_.n_phys()), 0);
      std::vector<char> done(gates.size(), 0);
      for (std::size_t idx : ready) {
        const Gate& g = gates[idx];
        const int a = pq(g.q0);
        const int b = is_two_qubit(g.kind) ? pq(g.q1) : a;
        if (busy[static_cast<std::size_t>(a)] || busy[static_cast<std::size_t>(b)]) continue;
        busy[static_cast<std::size_t>(a)] = busy[static_cast<std::size_t>(b)] = 1;
        emit_mapped(g);
        done[idx] = 1;
      }
      std::erase_if(remaining, [&](std::size_t idx) { return done[idx] != 0; });
    }
  }

  const Circuit& circuit_;
  const CouplingMap& map_;
  std::vector<int> phys_;     // logical -> physical
  std::vector<int> logical_;  // physical -> logical or -1
  Circuit out_;
  int swaps_ = 0;
};

}  // namespace

RoutingResult route_and_count(const Circuit& c, const CouplingMap& map,
                              std::span<const int> layout) {
  c.validate();
  return Router(c, map, layout).run();
}

}  // namespace trafficqaoa
