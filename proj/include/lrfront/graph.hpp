// Copyright 2026 The lrfront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// \file graph.hpp
/// ZZ-coupled qubit networks: construction, lattice generators, the
/// transverse-field Hamiltonian, and minimum-hop path analysis.
///
/// Energies are in units of the transverse energy gamma; a graph stores
/// Delta_{j,k}/gamma per edge. Qubits are numbered from 1.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lrfront/error.hpp"
#include "lrfront/log_value.hpp"
#include "lrfront/pauli.hpp"

namespace lrfront {

struct Edge {
  int j = 0;
  int k = 0;
  double delta_over_gamma = 0;
};

class CouplingGraph {
 public:
  struct Neighbor {
    int qubit;
    double delta_over_gamma;
  };

  /// Validates and stores the network. Edges may be given in either
  /// orientation; each unordered pair may appear once.
  CouplingGraph(int qubit_count, std::vector<Edge> edges, double gamma = 1.0)
      : qubit_count_(qubit_count), gamma_(gamma), adjacency_(static_cast<std::size_t>(qubit_count) + 1) {
    if (qubit_count < 1) throw InvalidArgument("qubit count must be positive");
    if (!(gamma > 0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be a positive finite number");
    for (const Edge& e : edges) {
      if (e.j < 1 || e.j > qubit_count || e.k < 1 || e.k > qubit_count) {
        throw DimensionError("edge (" + std::to_string(e.j) + "," + std::to_string(e.k) +
                             ") outside 1.." + std::to_string(qubit_count));
      }
      if (e.j == e.k) throw InvalidArgument("self-coupling on qubit " + std::to_string(e.j));
      if (!std::isfinite(e.delta_over_gamma) || e.delta_over_gamma == 0) {
        throw InvalidArgument("coupling on edge (" + std::to_string(e.j) + "," + std::to_string(e.k) +
                              ") must be finite and nonzero");
      }
      const auto key = std::minmax(e.j, e.k);
      if (!couplings_.emplace(key, e.delta_over_gamma).second) {
        throw InvalidArgument("duplicate edge (" + std::to_string(key.first) + "," +
                              std::to_string(key.second) + ")");
      }
    }
    for (const auto& [key, d] : couplings_) {
      adjacency_[static_cast<std::size_t>(key.first)].push_back({key.second, d});
      adjacency_[static_cast<std::size_t>(key.second)].push_back({key.first, d});
    }
  }

  int qubit_count() const { return qubit_count_; }
  double gamma() const { return gamma_; }
  std::size_t edge_count() const { return couplings_.size(); }

  /// Couplings keyed by (j, k) with j < k.
  const std::map<std::pair<int, int>, double>& couplings() const { return couplings_; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(couplings_.size());
    for (const auto& [key, d] : couplings_) out.push_back({key.first, key.second, d});
    return out;
  }

  std::optional<double> coupling(int j, int k) const {
    auto it = couplings_.find(std::minmax(j, k));
    if (it == couplings_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<Neighbor>& neighbors(int qubit) const {
    check_qubit(qubit);
    return adjacency_[static_cast<std::size_t>(qubit)];
  }

  void check_qubit(int qubit) const {
    if (qubit < 1 || qubit > qubit_count_) {
      throw DimensionError("qubit index " + std::to_string(qubit) + " outside 1.." +
                           std::to_string(qubit_count_));
    }
  }

  /// FNV-1a over a canonical text rendering; identifies the graph in output
  /// metadata.
  std::string digest() const {
    std::ostringstream os;
    os.precision(17);
    os << qubit_count_ << ';' << gamma_;
    for (const auto& [key, d] : couplings_) os << ';' << key.first << ',' << key.second << ',' << d;
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : os.str()) h = (h ^ c) * 0x100000001B3ull;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  int qubit_count_;
  double gamma_;
  std::map<std::pair<int, int>, double> couplings_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Uniform nearest-neighbour chain 1-2-...-n.
inline CouplingGraph build_chain(int n_qubits, double delta_over_gamma) {
  if (n_qubits < 1) throw InvalidArgument("chain needs at least one qubit");
  if (!(delta_over_gamma > 0)) throw InvalidArgument("chain coupling must be positive");
  std::vector<Edge> edges;
  for (int k = 1; k < n_qubits; ++k) edges.push_back({k, k + 1, delta_over_gamma});
  return CouplingGraph(n_qubits, std::move(edges));
}

// ---------------------------------------------------------------------------
// Lattices

struct LatticeSpec {
  int dimension = 1;  // 1, 2 or 3
  int extent = 1;     // coordinates run over -extent..extent on every axis
  double delta_over_gamma = 1.0;
};

using Coordinates = std::array<int, 3>;

inline constexpr std::int64_t kDefaultSiteCap = 1'000'000;

/// Square lattice graph together with the coordinate <-> qubit map. Qubits
/// are numbered lexicographically over (x, y, z), each from -N to N.
class Lattice {
 public:
  explicit Lattice(const LatticeSpec& spec, std::int64_t site_cap = kDefaultSiteCap)
      : spec_(validated(spec, site_cap)), graph_(make_graph(spec_)) {}

  const LatticeSpec& spec() const { return spec_; }
  const CouplingGraph& graph() const { return graph_; }
  int side() const { return 2 * spec_.extent + 1; }
  int site_count() const { return graph_.qubit_count(); }

  int index_of(const Coordinates& c) const {
    int idx = 0;
    for (int d = 0; d < spec_.dimension; ++d) {
      if (std::abs(c[static_cast<std::size_t>(d)]) > spec_.extent) {
        throw DimensionError("lattice coordinate outside -N..N");
      }
      idx = idx * side() + (c[static_cast<std::size_t>(d)] + spec_.extent);
    }
    for (int d = spec_.dimension; d < 3; ++d) {
      if (c[static_cast<std::size_t>(d)] != 0) throw DimensionError("coordinate beyond lattice dimension");
    }
    return idx + 1;
  }

  Coordinates coordinates_of(int qubit) const {
    graph_.check_qubit(qubit);
    Coordinates c{0, 0, 0};
    int rest = qubit - 1;
    for (int d = spec_.dimension - 1; d >= 0; --d) {
      c[static_cast<std::size_t>(d)] = rest % side() - spec_.extent;
      rest /= side();
    }
    return c;
  }

  int origin() const { return index_of({0, 0, 0}); }

 private:
  static LatticeSpec validated(const LatticeSpec& s, std::int64_t cap) {
    if (s.dimension < 1 || s.dimension > 3) throw InvalidArgument("lattice dimension must be 1, 2 or 3");
    if (s.extent < 1) throw InvalidArgument("lattice extent must be at least 1");
    if (!(s.delta_over_gamma > 0)) throw InvalidArgument("lattice coupling must be positive");
    std::int64_t sites = 1;
    for (int d = 0; d < s.dimension; ++d) {
      sites *= 2 * static_cast<std::int64_t>(s.extent) + 1;
      if (sites > cap) {
        throw LimitExceeded("lattice exceeds the site cap of " + std::to_string(cap) + " sites");
      }
    }
    return s;
  }

  static CouplingGraph make_graph(const LatticeSpec& s) {
    const int side = 2 * s.extent + 1;
    int sites = 1;
    for (int d = 0; d < s.dimension; ++d) sites *= side;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(sites) * static_cast<std::size_t>(s.dimension));
    int stride = 1;
    // Axis d has stride side^(dimension-1-d); walk axes from the last.
    for (int d = s.dimension - 1; d >= 0; --d) {
      for (int q = 0; q < sites; ++q) {
        if ((q / stride) % side != side - 1) edges.push_back({q + 1, q + stride + 1, s.delta_over_gamma});
      }
      stride *= side;
    }
    return CouplingGraph(sites, std::move(edges));
  }

  LatticeSpec spec_;
  CouplingGraph graph_;
};

inline Lattice build_lattice(const LatticeSpec& spec, std::int64_t site_cap = kDefaultSiteCap) {
  return Lattice(spec, site_cap);
}

/// H/gamma = -sum_k X_k - 1/2 sum_{j<k} (Delta_{jk}/gamma) Z_j Z_k.
inline OperatorSum hamiltonian(const CouplingGraph& g) {
  OperatorSum h(g.qubit_count());
  for (int q = 1; q <= g.qubit_count(); ++q) h.add(PauliString::x(q), -1.0);
  for (const auto& [key, d] : g.couplings()) {
    h.add(PauliString{0, PauliString::bit(key.first) | PauliString::bit(key.second)}, -0.5 * d);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Minimum paths

/// Minimum hop count between two qubits and the sum, over all paths of that
/// length, of the squared product of Delta/gamma along the path.
struct MinPathSummary {
  int source = 0;
  int target = 0;
  std::optional<int> hops;             // absent when target is unreachable
  LogValue weight_sum;                 // zero when unreachable
  std::optional<std::uint64_t> path_count;  // absent on overflow or when unreachable

  bool reachable() const { return hops.has_value(); }

  /// L; throws for unreachable pairs.
  int length() const {
    if (!hops) {
      throw InvalidArgument("qubits " + std::to_string(source) + " and " + std::to_string(target) +
                            " are not connected: no leading order");
    }
    return *hops;
  }
};

/// Hop distances from `source`; -1 marks unreachable qubits.
inline std::vector<int> hop_distances(const CouplingGraph& g, int source) {
  g.check_qubit(source);
  std::vector<int> dist(static_cast<std::size_t>(g.qubit_count()) + 1, -1);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& nb : g.neighbors(u)) {
      auto& dv = dist[static_cast<std::size_t>(nb.qubit)];
      if (dv < 0) {
        dv = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(nb.qubit);
      }
    }
  }
  return dist;
}

/// Dynamic program over the breadth-first layers from j; every shortest
/// path to k is a walk through strictly increasing layers.
inline MinPathSummary min_path_summary(const CouplingGraph& g, int j, int k) {
  g.check_qubit(j);
  g.check_qubit(k);
  MinPathSummary s{j, k, std::nullopt, LogValue::zero(), std::nullopt};
  const auto dist = hop_distances(g, j);
  const int target_dist = dist[static_cast<std::size_t>(k)];
  if (target_dist < 0) return s;

  std::vector<std::vector<int>> layers(static_cast<std::size_t>(target_dist) + 1);
  for (int q = 1; q <= g.qubit_count(); ++q) {
    const int d = dist[static_cast<std::size_t>(q)];
    if (d >= 0 && d <= target_dist) layers[static_cast<std::size_t>(d)].push_back(q);
  }
  const auto n = static_cast<std::size_t>(g.qubit_count()) + 1;
  std::vector<LogValue> weight(n, LogValue::zero());
  std::vector<std::uint64_t> count(n, 0);
  std::vector<bool> overflow(n, false);
  weight[static_cast<std::size_t>(j)] = LogValue::one();
  count[static_cast<std::size_t>(j)] = 1;
  for (int d = 1; d <= target_dist; ++d) {
    for (int v : layers[static_cast<std::size_t>(d)]) {
      const auto vi = static_cast<std::size_t>(v);
      for (const auto& nb : g.neighbors(v)) {
        const auto ui = static_cast<std::size_t>(nb.qubit);
        if (dist[ui] != d - 1) continue;
        weight[vi] += weight[ui] * LogValue::from_log(2.0 * std::log(std::abs(nb.delta_over_gamma)));
        overflow[vi] = overflow[vi] || overflow[ui] || __builtin_add_overflow(count[vi], count[ui], &count[vi]);
      }
    }
  }
  const auto ki = static_cast<std::size_t>(k);
  s.hops = target_dist;
  s.weight_sum = weight[ki];
  if (!overflow[ki]) s.path_count = count[ki];
  return s;
}

/// Every minimum-hop path from j to k as a qubit sequence, refusing once more
/// than `cap` paths have been found. Empty when k is unreachable.
inline std::vector<std::vector<int>> enumerate_min_paths(const CouplingGraph& g, int j, int k,
                                                         std::size_t cap) {
  g.check_qubit(j);
  g.check_qubit(k);
  const auto to_target = hop_distances(g, k);
  std::vector<std::vector<int>> paths;
  if (to_target[static_cast<std::size_t>(j)] < 0) return paths;
  std::vector<int> current{j};
  std::function<void(int)> walk = [&](int u) {
    if (u == k) {
      if (paths.size() == cap) {
        throw LimitExceeded("more than " + std::to_string(cap) + " minimum paths between qubits " +
                            std::to_string(j) + " and " + std::to_string(k));
      }
      paths.push_back(current);
      return;
    }
    const int du = to_target[static_cast<std::size_t>(u)];
    for (const auto& nb : g.neighbors(u)) {
      if (to_target[static_cast<std::size_t>(nb.qubit)] != du - 1) continue;
      current.push_back(nb.qubit);
      walk(nb.qubit);
      current.pop_back();
    }
  };
  walk(j);
  return paths;
}

}  // namespace lrfront
