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

// Command-line front end. Each command turns a RunConfig into a ResultTable;
// `run` wires argument parsing, dispatch, output and exit codes together.
//
//   lrfront correlate --graph chain:9 --engine compare --tmin 1e-3 --tmax 1 --tsteps 40 --tlog
//   lrfront front     --graph chain:10450 --targets 10250:10450 --tmin 1360 --tmax 1400 --tsteps 21
//   lrfront velocity  --graph chain:200 --cthresh 1e-25
//   lrfront leading   --graph file:net.txt --ref 1

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lrfront/analytic.hpp"
#include "lrfront/exact.hpp"
#include "lrfront/graph.hpp"
#include "lrfront/network.hpp"
#include "lrfront/table.hpp"

namespace lrfront::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kOtherError = 1, kUsageError = 2, kLimitRefused = 3, kMismatch = 4 };

enum class Command { correlate, front, velocity, leading };
enum class EngineChoice { exact, series, analytic, compare };
enum class Scale { automatic, linear, log10 };

struct GraphSource {
  enum Kind { chain, lattice2d, lattice3d, file } kind = chain;
  int size = 9;      // qubits for chains, extent N for lattices
  std::string path;  // network file

  int dimension() const { return kind == lattice2d ? 2 : kind == lattice3d ? 3 : kind == chain ? 1 : 0; }
  bool is_lattice() const { return kind == lattice2d || kind == lattice3d; }

  std::string str() const {
    switch (kind) {
      case chain: return "chain:" + std::to_string(size);
      case lattice2d: return "lattice2d:" + std::to_string(size);
      case lattice3d: return "lattice3d:" + std::to_string(size);
      case file: return "file:" + path;
    }
    return "";
  }
};

inline GraphSource parse_graph_source(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("graph must be chain:N, lattice2d:N, lattice3d:N or file:PATH");
  const std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
  GraphSource g;
  if (kind == "file") {
    if (arg.empty()) throw InvalidArgument("file: needs a path");
    g.kind = GraphSource::file;
    g.path = arg;
    return g;
  }
  if (kind == "chain") {
    g.kind = GraphSource::chain;
  } else if (kind == "lattice2d") {
    g.kind = GraphSource::lattice2d;
  } else if (kind == "lattice3d") {
    g.kind = GraphSource::lattice3d;
  } else {
    throw InvalidArgument("unknown graph kind '" + kind + "'");
  }
  std::size_t used = 0;
  try {
    g.size = std::stoi(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != arg.size() || g.size < 1) throw InvalidArgument("graph size in '" + text + "' must be a positive integer");
  return g;
}

/// One entry of a site list: a qubit index range a..b, or lattice coordinates.
struct Selector {
  int first = 0, last = 0;
  std::optional<Coordinates> coordinates;
  int coordinate_count = 0;
};

/// Comma-separated entries: `5`, `2:9`, or `(x,y[,z])` on lattices.
inline std::vector<Selector> parse_selectors(const std::string& text) {
  std::vector<Selector> out;
  std::size_t i = 0;
  const auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidArgument("bad site selector '" + s + "' in '" + text + "'");
    return v;
  };
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == ',') {
      ++i;
      continue;
    }
    Selector sel;
    if (text[i] == '(') {
      const auto close = text.find(')', i);
      if (close == std::string::npos) throw InvalidArgument("unclosed '(' in site list '" + text + "'");
      std::stringstream parts(text.substr(i + 1, close - i - 1));
      Coordinates c{0, 0, 0};
      std::string part;
      while (std::getline(parts, part, ',')) {
        if (sel.coordinate_count == 3) throw InvalidArgument("coordinates take at most 3 components");
        c[static_cast<std::size_t>(sel.coordinate_count++)] = parse_int(part);
      }
      sel.coordinates = c;
      i = close + 1;
    } else {
      auto end = text.find(',', i);
      if (end == std::string::npos) end = text.size();
      const std::string item = text.substr(i, end - i);
      const auto colon = item.find(':');
      sel.first = parse_int(item.substr(0, colon));
      sel.last = colon == std::string::npos ? sel.first : parse_int(item.substr(colon + 1));
      if (sel.last < sel.first) throw InvalidArgument("empty range '" + item + "'");
      i = end;
    }
    out.push_back(sel);
  }
  return out;
}

struct RunConfig {
  Command command = Command::correlate;
  EngineChoice engine = EngineChoice::analytic;
  GraphSource graph;
  std::optional<double> delta;  // Delta/gamma for built-in graphs (default 1)
  std::optional<std::string> ref;
  std::optional<std::string> targets;

  double tmin = 0, tmax = 1;
  int tsteps = 11;
  bool tlog = false;
  std::vector<double> times;  // overrides the grid when nonempty

  int order = 12;
  std::size_t max_terms = 2'000'000;
  int dense_limit = kDefaultDenseLimit;
  std::int64_t max_sites = kDefaultSiteCap;
  double cthresh = 1e-25;
  double clip = kDefaultClipLog10;
  Scale scale = Scale::automatic;

  std::optional<std::string> ray;
  int angle_steps = 0;
  double theta_min = 0, theta_max = std::numbers::pi / 4;
  double phi_min = 0, phi_max = std::numbers::pi / 2;
  bool degrees = false;

  std::string format = "csv";
  std::optional<std::string> out;
  std::string command_line;

  double delta_or_default() const { return delta.value_or(1.0); }
};

inline const char* to_string(Command c) {
  switch (c) {
    case Command::correlate: return "correlate";
    case Command::front: return "front";
    case Command::velocity: return "velocity";
    case Command::leading: return "leading";
  }
  return "?";
}

inline const char* to_string(EngineChoice e) {
  switch (e) {
    case EngineChoice::exact: return "exact";
    case EngineChoice::series: return "series";
    case EngineChoice::analytic: return "analytic";
    case EngineChoice::compare: return "compare";
  }
  return "?";
}

/// The time grid: explicit list, or tsteps points from tmin to tmax.
inline std::vector<double> time_grid(const RunConfig& c) {
  std::vector<double> t = c.times;
  if (t.empty()) {
    if (c.tsteps < 1) throw InvalidArgument("--tsteps must be at least 1");
    if (c.tlog && !(c.tmin > 0)) throw InvalidArgument("--tlog needs --tmin > 0");
    if (c.tsteps > 1 && !(c.tmax > c.tmin)) throw InvalidArgument("--tmax must exceed --tmin");
    for (int i = 0; i < c.tsteps; ++i) {
      const double f = c.tsteps == 1 ? 0.0 : static_cast<double>(i) / (c.tsteps - 1);
      t.push_back(c.tlog ? c.tmin * std::pow(c.tmax / c.tmin, f) : c.tmin + f * (c.tmax - c.tmin));
    }
    if (c.tsteps > 1) t.back() = c.tmax;
  }
  check_time_grid(t);
  return t;
}

namespace detail {

inline std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + format_number(x);
  return s;
}

inline std::string join_ints(const std::vector<int>& v) {
  // Collapses consecutive runs into a:b so the echo stays short.
  std::string s;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[j] + 1) ++j;
    s += (s.empty() ? "" : ",") + std::to_string(v[i]);
    if (j > i) s += ":" + std::to_string(v[j]);
    i = j + 1;
  }
  return s;
}

}  // namespace detail

/// Graph plus, for lattices, the coordinate map. Built lazily: closed-form
/// commands on large lattices never need the graph itself.
class Workspace {
 public:
  explicit Workspace(const RunConfig& c) : config_(c) {
    if (c.graph.kind == GraphSource::file && c.delta) {
      throw InvalidArgument("--delta applies to built-in graphs; file graphs carry their own couplings");
    }
    if (c.graph.kind != GraphSource::file && !(c.delta_or_default() > 0)) {
      throw InvalidArgument("--delta must be positive");
    }
    if (c.graph.is_lattice()) {
      spec_ = LatticeSpec{c.graph.dimension(), c.graph.size, c.delta_or_default()};
      std::int64_t sites = 1;
      for (int d = 0; d < spec_.dimension; ++d) {
        sites *= 2 * static_cast<std::int64_t>(spec_.extent) + 1;
        check_site_cap(sites, c.max_sites);
      }
      site_count_ = static_cast<int>(sites);
    } else if (c.graph.kind == GraphSource::chain) {
      check_site_cap(c.graph.size, c.max_sites);
      site_count_ = c.graph.size;
    } else {
      file_graph_ = load_network_file(c.graph.path);
      site_count_ = file_graph_->qubit_count();
    }
  }

  const GraphSource& source() const { return config_.graph; }
  int site_count() const { return site_count_; }
  const LatticeSpec& lattice_spec() const { return spec_; }

  const CouplingGraph& graph() {
    if (file_graph_) return *file_graph_;
    if (config_.graph.kind == GraphSource::chain) {
      if (!chain_) chain_ = build_chain(config_.graph.size, config_.delta_or_default());
      return *chain_;
    }
    return lattice().graph();
  }

  const Lattice& lattice() {
    if (!lattice_) lattice_.emplace(spec_, config_.max_sites);
    return *lattice_;
  }

  /// Index arithmetic without building the lattice.
  int index_of(const Coordinates& c) const {
    const int side = 2 * spec_.extent + 1;
    int idx = 0;
    for (int d = 0; d < spec_.dimension; ++d) {
      if (std::abs(c[static_cast<std::size_t>(d)]) > spec_.extent) throw DimensionError("lattice coordinate outside -N..N");
      idx = idx * side + c[static_cast<std::size_t>(d)] + spec_.extent;
    }
    for (int d = spec_.dimension; d < 3; ++d) {
      if (c[static_cast<std::size_t>(d)] != 0) throw DimensionError("coordinate beyond lattice dimension");
    }
    return idx + 1;
  }

  Coordinates coordinates_of(int q) const {
    const int side = 2 * spec_.extent + 1;
    Coordinates c{0, 0, 0};
    int rest = q - 1;
    for (int d = spec_.dimension - 1; d >= 0; --d) {
      c[static_cast<std::size_t>(d)] = rest % side - spec_.extent;
      rest /= side;
    }
    return c;
  }

  void check_site(int q) const {
    if (q < 1 || q > site_count_) {
      throw DimensionError("site " + std::to_string(q) + " outside 1.." + std::to_string(site_count_));
    }
  }

  std::vector<int> resolve(const std::vector<Selector>& sels) const {
    std::vector<int> out;
    for (const auto& s : sels) {
      if (s.coordinates) {
        if (!config_.graph.is_lattice()) throw InvalidArgument("coordinate selectors need a lattice graph");
        if (s.coordinate_count != spec_.dimension) {
          throw InvalidArgument("lattice" + std::to_string(spec_.dimension) + "d coordinates need " +
                                std::to_string(spec_.dimension) + " components");
        }
        out.push_back(index_of(*s.coordinates));
        continue;
      }
      for (int q = s.first; q <= s.last; ++q) {
        check_site(q);
        out.push_back(q);
      }
    }
    return out;
  }

  int reference() const {
    if (config_.ref) {
      const auto r = resolve(parse_selectors(*config_.ref));
      if (r.size() != 1) throw InvalidArgument("--ref must name exactly one site");
      return r[0];
    }
    return config_.graph.is_lattice() ? index_of({0, 0, 0}) : 1;
  }

  std::vector<int> targets() const {
    if (config_.targets) {
      auto t = resolve(parse_selectors(*config_.targets));
      if (t.empty()) throw InvalidArgument("--targets selects no sites");
      return t;
    }
    std::vector<int> all(static_cast<std::size_t>(site_count_));
    for (int q = 1; q <= site_count_; ++q) all[static_cast<std::size_t>(q - 1)] = q;
    return all;
  }

  /// Coordinate column names for lattice output.
  std::vector<std::string> coordinate_columns() const {
    static const char* names[] = {"x", "y", "z"};
    std::vector<std::string> out;
    if (config_.graph.is_lattice()) {
      for (int d = 0; d < spec_.dimension; ++d) out.push_back(names[d]);
    }
    return out;
  }

  void append_coordinates(std::vector<Cell>& row, int q) const {
    if (!config_.graph.is_lattice()) return;
    const Coordinates c = coordinates_of(q);
    for (int d = 0; d < spec_.dimension; ++d) row.push_back(std::int64_t{c[static_cast<std::size_t>(d)]});
  }

 private:
  const RunConfig& config_;
  LatticeSpec spec_{};
  int site_count_ = 0;
  std::optional<CouplingGraph> file_graph_, chain_;
  std::optional<Lattice> lattice_;
};

namespace detail {

inline bool use_log10(const RunConfig& c, bool analytic_default) {
  if (c.scale == Scale::automatic) return analytic_default;
  return c.scale == Scale::log10;
}

inline Cell value_cell(double linear, bool log10) {
  return log10 ? Cell{linear > 0 ? std::log10(linear) : -INFINITY} : Cell{linear};
}

inline Cell value_cell(const LogValue& v, bool log10) {
  return log10 ? Cell{v.log10_magnitude()} : Cell{v.to_double()};
}

inline void common_meta(ResultTable& t, const RunConfig& c) {
  t.set_meta("tool", std::string("lrfront ") + kVersion);
  t.set_meta("command_line", c.command_line);
  t.set_meta("command", to_string(c.command));
  t.set_meta("graph", c.graph.str());
  if (c.graph.kind != GraphSource::file) t.set_meta("delta_over_gamma", format_number(c.delta_or_default()));
  t.set_meta("time_convention", "t/tau with tau = pi*hbar/gamma");
  t.set_meta("correlation", "normalized Frobenius norm of [Z_ref(t), Z_target]");
}

inline void site_meta(ResultTable& t, const Workspace& w, const RunConfig& c, int ref, const std::vector<int>& targets) {
  t.set_meta("site_numbering", w.source().is_lattice()
                                   ? "qubits numbered lexicographically over (x,y,z) from -N to N, starting at 1"
                                   : "qubits numbered from 1");
  t.set_meta("ref", std::to_string(ref));
  t.set_meta("targets", join_ints(targets));
  (void)c;
}

inline void time_meta(ResultTable& t, const std::vector<double>& times) {
  t.set_meta("times", join_numbers(times));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// correlate

inline ResultTable cmd_correlate(const RunConfig& c) {
  Workspace w(c);
  const int ref = w.reference();
  const std::vector<int> targets = w.targets();
  const std::vector<double> times = time_grid(c);
  const bool log10 = detail::use_log10(c, c.engine == EngineChoice::analytic);
  const std::string prefix = log10 ? "log10_C" : "C";
  const CouplingGraph& g = w.graph();

  std::vector<std::string> cols{"ref", "target"};
  for (const auto& n : w.coordinate_columns()) cols.push_back(n);
  cols.push_back("t_over_tau");
  switch (c.engine) {
    case EngineChoice::exact:
    case EngineChoice::analytic: cols.push_back(prefix); break;
    case EngineChoice::series:
      cols.push_back(prefix);
      cols.push_back("series_diagnostic");
      break;
    case EngineChoice::compare:
      cols.insert(cols.end(), {prefix + "_exact", prefix + "_analytic", "log10_ratio"});
      break;
  }
  ResultTable table(cols);
  detail::common_meta(table, c);
  detail::site_meta(table, w, c, ref, targets);
  detail::time_meta(table, times);
  table.set_meta("engine", to_string(c.engine));
  table.set_meta("scale", log10 ? "log10" : "linear");
  table.set_meta("graph_digest", g.digest());
  if (c.engine == EngineChoice::series) table.set_meta("order", std::to_string(c.order));

  std::optional<Spectrum> spectrum;
  if (c.engine == EngineChoice::exact || c.engine == EngineChoice::compare) {
    table.set_meta("dense_limit", std::to_string(c.dense_limit));
    spectrum = diagonalize(g, c.dense_limit);
  }
  SeriesOptions sopts;
  sopts.max_terms = c.max_terms;

  for (int k : targets) {
    std::vector<double> exact;
    if (spectrum) exact = correlation_exact(*spectrum, ref, k, times).values;
    std::optional<MinPathSummary> summary;
    if (c.engine == EngineChoice::analytic || c.engine == EngineChoice::compare) summary = min_path_summary(g, ref, k);
    std::optional<SeriesExpansion> series;
    if (c.engine == EngineChoice::series) series.emplace(g, ref, k, c.order, sopts);

    for (std::size_t i = 0; i < times.size(); ++i) {
      std::vector<Cell> row{std::int64_t{ref}, std::int64_t{k}};
      w.append_coordinates(row, k);
      row.push_back(times[i]);
      switch (c.engine) {
        case EngineChoice::exact: row.push_back(detail::value_cell(exact[i], log10)); break;
        case EngineChoice::series: {
          const SeriesResult r = series->evaluate(times[i]);
          row.push_back(detail::value_cell(r.value, log10));
          row.push_back(r.last_order_norm);
          break;
        }
        case EngineChoice::analytic:
        case EngineChoice::compare: {
          const auto a = general_correlation(*summary, times[i]);
          if (c.engine == EngineChoice::compare) row.push_back(detail::value_cell(exact[i], log10));
          if (!a) {
            row.push_back(kUnreachable);
            if (c.engine == EngineChoice::compare) row.push_back(kUnreachable);
            break;
          }
          row.push_back(detail::value_cell(*a, log10));
          if (c.engine == EngineChoice::compare) {
            row.push_back(exact[i] > 0 && !a->is_zero() ? std::log10(exact[i]) - a->log10_magnitude()
                          : exact[i] == 0 && a->is_zero()  ? Cell{Token{"nan"}}
                                                           : Cell{exact[i] > 0 ? INFINITY : -INFINITY});
          }
          break;
        }
      }
      table.add_row(std::move(row));
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// front

inline ResultTable cmd_front(const RunConfig& c) {
  if (c.engine != EngineChoice::analytic) throw InvalidArgument("front snapshots use the analytic engine only");
  Workspace w(c);
  const std::vector<double> times = time_grid(c);
  const bool log10 = detail::use_log10(c, true);
  const std::string value_col = log10 ? "log10_C" : "C";
  const auto emit = [&](double l10) { return log10 ? Cell{l10} : Cell{std::pow(10.0, l10)}; };

  std::vector<std::string> cols{"t_over_tau"};
  if (w.source().is_lattice()) {
    for (const auto& n : w.coordinate_columns()) cols.push_back(n);
  } else {
    cols.push_back("site");
  }
  cols.push_back(value_col);
  ResultTable table(cols);
  detail::common_meta(table, c);
  detail::time_meta(table, times);
  table.set_meta("engine", "analytic");
  table.set_meta("scale", log10 ? "log10" : "linear");
  table.set_meta("clip_log10", format_number(c.clip));
  table.set_meta("clip_rule", "sites with C above 10^clip or C = 0 are omitted");

  if (w.source().is_lattice()) {
    if (c.targets || c.ref) throw InvalidArgument("lattice fronts cover the whole grid around the origin");
    table.set_meta("ref", "origin");
    for (double t : times) {
      for (const auto& s : front_snapshot_lattice(w.lattice_spec(), t, c.clip, c.max_sites).sites) {
        std::vector<Cell> row{t};
        for (int d = 0; d < w.lattice_spec().dimension; ++d) {
          row.push_back(std::int64_t{s.coordinates[static_cast<std::size_t>(d)]});
        }
        row.push_back(emit(s.log10_c));
        table.add_row(std::move(row));
      }
    }
    return table;
  }

  const std::vector<int> sites = w.targets();
  if (w.source().kind == GraphSource::chain) {
    if (c.ref && w.reference() != 1) throw InvalidArgument("chain fronts are measured from qubit 1");
    for (std::size_t i = 1; i < sites.size(); ++i) {
      if (sites[i] != sites[i - 1] + 1) throw InvalidArgument("chain fronts need one contiguous --targets range a:b");
    }
    table.set_meta("ref", "1");
    table.set_meta("targets", detail::join_ints(sites));
    for (double t : times) {
      for (const auto& s : front_snapshot_chain(sites.front(), sites.back(), c.delta_or_default(), t, c.clip,
                                                c.max_sites)
                               .sites) {
        table.add_row({t, std::int64_t{s.coordinates[0]}, emit(s.log10_c)});
      }
    }
    return table;
  }

  const int ref = w.reference();
  detail::site_meta(table, w, c, ref, sites);
  const CouplingGraph& g = w.graph();
  table.set_meta("graph_digest", g.digest());
  std::vector<MinPathSummary> summaries;
  for (int k : sites) summaries.push_back(min_path_summary(g, ref, k));
  for (double t : times) {
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const auto v = general_correlation(summaries[i], t);
      if (!v || v->is_zero() || v->log10_magnitude() > c.clip) continue;
      table.add_row({t, std::int64_t{sites[i]}, emit(v->log10_magnitude())});
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// velocity

namespace detail {

inline std::vector<int> parse_ray(const std::string& text, int dimension) {
  std::vector<int> step;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw InvalidArgument("bad --ray component '" + part + "'");
    step.push_back(v);
  }
  if (static_cast<int>(step.size()) != dimension) {
    throw InvalidArgument("--ray needs " + std::to_string(dimension) + " integer components");
  }
  if (std::all_of(step.begin(), step.end(), [](int s) { return s == 0; })) throw InvalidArgument("--ray must be nonzero");
  return step;
}

inline std::vector<double> angle_points(double lo, double hi, int steps) {
  std::vector<double> out;
  for (int i = 0; i <= steps; ++i) out.push_back(steps == 0 ? lo : lo + (hi - lo) * i / steps);
  return out;
}

inline void add_crossings(ResultTable& table, const std::vector<ThresholdCrossing>& crossings,
                          const std::vector<std::vector<Cell>>& site_cells, Cell reference) {
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    std::vector<Cell> row = site_cells[i];
    row.push_back(crossings[i].t_over_tau);
    row.push_back(crossings[i].velocity ? Cell{*crossings[i].velocity} : Cell{});
    row.push_back(reference);
    table.add_row(std::move(row));
  }
}

}  // namespace detail

inline ResultTable cmd_velocity(const RunConfig& c) {
  if (c.engine != EngineChoice::analytic) throw InvalidArgument("velocities use the analytic engine only");
  Workspace w(c);
  const double d = c.delta_or_default();
  const double unit = c.degrees ? std::numbers::pi / 180 : 1.0;

  if (c.angle_steps > 0) {
    if (!w.source().is_lattice()) throw InvalidArgument("angular profiles need lattice2d or lattice3d");
    const bool three = w.lattice_spec().dimension == 3;
    const std::string suffix = c.degrees ? "_deg" : "";
    std::vector<std::string> cols{"theta" + suffix};
    if (three) cols.push_back("phi" + suffix);
    cols.push_back("v_lr");
    ResultTable table(cols);
    detail::common_meta(table, c);
    table.set_meta("mode", "angular");
    table.set_meta("angles", three ? "theta azimuth from x, phi polar from z" : "theta from the x axis");
    table.set_meta("angle_unit", c.degrees ? "degrees" : "radians");
    table.set_meta("symmetry", "directions are folded into the fundamental wedge before evaluation");
    table.set_meta("velocity_units", "lattice spacings per unit t/tau");
    for (double th : detail::angle_points(c.theta_min, c.theta_max, c.angle_steps)) {
      if (!three) {
        table.add_row({th, v_lr_2d(reduce_angle_2d(th * unit), d)});
        continue;
      }
      for (double ph : detail::angle_points(c.phi_min, c.phi_max, c.angle_steps)) {
        const double t = th * unit, p = ph * unit;
        const auto dir = reduce_direction_3d(std::sin(p) * std::cos(t), std::sin(p) * std::sin(t), std::cos(p));
        table.add_row({th, ph, v_lr_3d(dir.theta, dir.phi, d)});
      }
    }
    return table;
  }

  const double c_thresh = c.cthresh;
  if (!(c_thresh > 0)) throw InvalidArgument("--cthresh must be positive");

  if (w.source().kind == GraphSource::chain) {
    if (c.ref && w.reference() != 1) throw InvalidArgument("chain velocities are measured from qubit 1");
    const std::vector<int> sites = w.targets();
    for (std::size_t i = 1; i < sites.size(); ++i) {
      if (sites[i] != sites[i - 1] + 1) throw InvalidArgument("chain velocities need one contiguous --targets range a:b");
    }
    ResultTable table({"site", "t_over_tau", "v", "v_lr"});
    detail::common_meta(table, c);
    table.set_meta("mode", "threshold crossings");
    table.set_meta("cthresh", format_number(c_thresh));
    table.set_meta("ref", "1");
    table.set_meta("targets", detail::join_ints(sites));
    table.set_meta("velocity", "v_k = 1/(t_k - t_(k-1)) in sites per unit t/tau");
    std::vector<std::vector<Cell>> cells;
    for (int k : sites) cells.push_back({std::int64_t{k}});
    detail::add_crossings(table, finite_difference_velocity_chain(sites.front(), sites.back(), d, c_thresh), cells,
                          v_lr_chain(d));
    return table;
  }

  if (w.source().is_lattice()) {
    const int dim = w.lattice_spec().dimension;
    if (c.ref || c.targets) throw InvalidArgument("lattice velocities follow --ray from the origin");
    const std::vector<int> step = detail::parse_ray(c.ray.value_or(dim == 2 ? "1,0" : "1,0,0"), dim);
    int reach = 0;
    for (int s : step) reach = std::max(reach, std::abs(s));
    std::vector<double> times;
    std::vector<std::vector<Cell>> cells;
    for (int i = 0; i * reach <= w.lattice_spec().extent; ++i) {
      Coordinates co{0, 0, 0};
      std::vector<Cell> row{std::int64_t{i}};
      for (int a = 0; a < dim; ++a) {
        co[static_cast<std::size_t>(a)] = i * step[static_cast<std::size_t>(a)];
        row.push_back(std::int64_t{co[static_cast<std::size_t>(a)]});
      }
      times.push_back(threshold_time_lattice(dim, co, d, c_thresh));
      cells.push_back(std::move(row));
    }
    double x = std::abs(step[0]), y = std::abs(step[1]), z = dim == 3 ? std::abs(step[2]) : 0.0;
    const double len = std::hypot(x, y, z);
    const double v_dir = velocity_from_cosines(x / len, y / len, z / len, d) / len;
    std::vector<std::string> cols{"step"};
    for (const auto& n : w.coordinate_columns()) cols.push_back(n);
    cols.insert(cols.end(), {"t_over_tau", "v", "v_lr"});
    ResultTable table(cols);
    detail::common_meta(table, c);
    table.set_meta("mode", "threshold crossings along a ray");
    table.set_meta("cthresh", format_number(c_thresh));
    table.set_meta("ray", c.ray.value_or(dim == 2 ? "1,0" : "1,0,0"));
    table.set_meta("velocity", "ray steps per unit t/tau; v_lr is the closed-form velocity along the ray");
    detail::add_crossings(table, finite_difference_velocity(times, 0, c_thresh), cells, v_dir);
    return table;
  }

  const int ref = w.reference();
  const std::vector<int> sites = w.targets();
  const CouplingGraph& g = w.graph();
  std::vector<MinPathSummary> ray;
  std::vector<std::vector<Cell>> cells;
  for (int k : sites) {
    ray.push_back(min_path_summary(g, ref, k));
    if (!ray.back().reachable()) throw InvalidArgument("site " + std::to_string(k) + " is unreachable from the reference");
    cells.push_back({std::int64_t{k}});
  }
  ResultTable table({"site", "t_over_tau", "v", "v_lr"});
  detail::common_meta(table, c);
  detail::site_meta(table, w, c, ref, sites);
  table.set_meta("mode", "threshold crossings along the listed sites");
  table.set_meta("cthresh", format_number(c_thresh));
  table.set_meta("graph_digest", g.digest());
  table.set_meta("velocity", "v = 1/(t_i - t_(i-1)) per listed site; no closed-form reference for general graphs");
  detail::add_crossings(table, finite_difference_velocity(ray, c_thresh), cells, Cell{});
  return table;
}

// ---------------------------------------------------------------------------
// leading

struct LeadingReport {
  ResultTable table;
  int mismatches = 0;
};

inline constexpr double kLeadingTolerance = 1e-10;  // on ln of the prefactor

inline LeadingReport cmd_leading(const RunConfig& c) {
  Workspace w(c);
  const int ref = w.reference();
  const std::vector<int> targets = w.targets();
  const CouplingGraph& g = w.graph();
  std::vector<std::string> cols{"ref", "target"};
  for (const auto& n : w.coordinate_columns()) cols.push_back(n);
  cols.insert(cols.end(), {"L", "order", "path_count", "log10_prefactor", "log10_prefactor_path_sum", "status"});
  LeadingReport report{ResultTable(cols), 0};
  ResultTable& table = report.table;
  detail::common_meta(table, c);
  detail::site_meta(table, w, c, ref, targets);
  table.set_meta("graph_digest", g.digest());
  table.set_meta("prefactor", "C ~ prefactor * (t/tau)^order; symbolic leading term vs minimum-path sum");
  table.set_meta("tolerance_ln", format_number(kLeadingTolerance));
  LeadingOptions opts;
  opts.max_terms = c.max_terms;

  for (int k : targets) {
    std::vector<Cell> row{std::int64_t{ref}, std::int64_t{k}};
    w.append_coordinates(row, k);
    const MinPathSummary s = min_path_summary(g, ref, k);
    const auto lt = leading_term(g, ref, k, opts);
    if (!s.reachable() || !lt) {
      if (s.reachable() != lt.has_value()) ++report.mismatches;
      for (int i = 0; i < 5; ++i) row.push_back(kUnreachable);
      row.push_back(Token{s.reachable() != lt.has_value() ? "mismatch" : "unreachable"});
      table.add_row(std::move(row));
      continue;
    }
    const int hops = s.length();
    const double symbolic = lt->log_prefactor();
    const double path_sum = lrfront::detail::log_prefactor(hops, s.weight_sum.log_magnitude());
    const bool ok = lt->order == 2 * hops + 1 &&
                    std::abs(symbolic - path_sum) <= kLeadingTolerance * std::max(1.0, std::abs(path_sum));
    if (!ok) ++report.mismatches;
    row.push_back(std::int64_t{hops});
    row.push_back(std::int64_t{lt->order});
    row.push_back(s.path_count ? Cell{static_cast<std::int64_t>(*s.path_count)} : Cell{Token{"overflow"}});
    row.push_back(symbolic / std::numbers::ln10);
    row.push_back(path_sum / std::numbers::ln10);
    row.push_back(Token{ok ? "ok" : "mismatch"});
    table.add_row(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------------
// argument parsing and process entry

inline std::string quote_arg(const std::string& a) {
  if (!a.empty() && a.find_first_of(" \t\n'\"\\$`()*?[]{};&|<>!#~") == std::string::npos) return a;
  std::string q = "'";
  for (char ch : a) q += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return q + "'";
}

/// Registers the shared options on one subcommand.
inline void add_options(CLI::App& sub, RunConfig& c, std::string& graph, std::string& engine, bool& linear,
                        bool& log10) {
  sub.add_option("--graph", graph, "chain:N | lattice2d:N | lattice3d:N | file:PATH")->capture_default_str();
  sub.add_option("--delta", c.delta, "Delta/gamma for built-in graphs (default 1)");
  sub.add_option("--ref", c.ref, "reference site: index or (x,y[,z])");
  sub.add_option("--target,--targets", c.targets, "sites: list of indices, ranges a:b, or (x,y[,z])");
  sub.add_option("--tmin", c.tmin, "first time, t/tau")->capture_default_str();
  sub.add_option("--tmax", c.tmax, "last time, t/tau")->capture_default_str();
  sub.add_option("--tsteps", c.tsteps, "number of time points")->capture_default_str();
  sub.add_flag("--tlog", c.tlog, "logarithmic time spacing");
  sub.add_option("--times", c.times, "explicit increasing times (overrides the grid)")->delimiter(',');
  sub.add_option("--engine", engine, "exact | series | analytic | compare")->capture_default_str();
  sub.add_option("--order", c.order, "series truncation order")->capture_default_str();
  sub.add_option("--max-terms", c.max_terms, "cap on Pauli terms per series order")->capture_default_str();
  sub.add_option("--dense-limit", c.dense_limit, "largest qubit count for dense evolution")->capture_default_str();
  sub.add_option("--max-sites", c.max_sites, "cap on lattice sites")->capture_default_str();
  sub.add_option("--cthresh", c.cthresh, "threshold correlation for crossing times")->capture_default_str();
  sub.add_option("--clip", c.clip, "omit front values above 10^clip")->capture_default_str();
  auto* lin = sub.add_flag("--linear", linear, "write C instead of log10 C");
  sub.add_flag("--log10", log10, "write log10 C")->excludes(lin);
  sub.add_option("--ray", c.ray, "integer lattice step for ray velocities, e.g. 1,1");
  sub.add_option("--angle-steps", c.angle_steps, "angular profile with this many intervals per angle");
  sub.add_option("--theta-min", c.theta_min, "azimuth range start")->capture_default_str();
  sub.add_option("--theta-max", c.theta_max, "azimuth range end")->capture_default_str();
  sub.add_option("--phi-min", c.phi_min, "polar range start")->capture_default_str();
  sub.add_option("--phi-max", c.phi_max, "polar range end")->capture_default_str();
  sub.add_flag("--degrees", c.degrees, "angles in degrees");
  sub.add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub.add_option("--out", c.out, "output path (default: standard output)");
}

/// Parses, runs and writes; returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lieb-Robinson correlation fronts for ZZ-coupled qubit arrays"};
  app.set_version_flag("--version", std::string("lrfront ") + kVersion);
  app.require_subcommand(1);
  RunConfig c;
  std::string graph = "chain:9", engine = "analytic";
  bool linear = false, log10 = false;
  const std::pair<const char*, Command> commands[] = {{"correlate", Command::correlate},
                                                      {"front", Command::front},
                                                      {"velocity", Command::velocity},
                                                      {"leading", Command::leading}};
  const char* help[] = {"correlation versus time for reference/target pairs",
                        "clipped correlation snapshots around the front",
                        "threshold-crossing velocities or angular velocity profiles",
                        "lowest nonvanishing order, symbolic vs path sum"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < 4; ++i) {
    subs.push_back(app.add_subcommand(commands[i].first, help[i]));
    add_options(*subs.back(), c, graph, engine, linear, log10);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  for (std::size_t i = 0; i < 4; ++i) {
    if (subs[i]->parsed()) c.command = commands[i].second;
  }
  for (int i = 0; i < argc; ++i) c.command_line += (i ? " " : "") + quote_arg(argv[i]);
  c.scale = linear ? Scale::linear : log10 ? Scale::log10 : Scale::automatic;

  try {
    c.graph = parse_graph_source(graph);
    if (engine == "exact") {
      c.engine = EngineChoice::exact;
    } else if (engine == "series") {
      c.engine = EngineChoice::series;
    } else if (engine == "analytic") {
      c.engine = EngineChoice::analytic;
    } else if (engine == "compare") {
      c.engine = EngineChoice::compare;
    } else {
      throw InvalidArgument("unknown engine '" + engine + "'");
    }

    int status = kOk;
    std::optional<ResultTable> table;
    switch (c.command) {
      case Command::correlate: table = cmd_correlate(c); break;
      case Command::front: table = cmd_front(c); break;
      case Command::velocity: table = cmd_velocity(c); break;
      case Command::leading: {
        auto report = cmd_leading(c);
        if (report.mismatches > 0) {
          err << "lrfront: " << report.mismatches << " leading-order mismatch(es)\n";
          status = kMismatch;
        }
        table = std::move(report.table);
        break;
      }
    }
    table->set_meta("format", c.format);
    const std::string text = c.format == "json" ? render_json(*table) : render_csv(*table);
    if (c.out) {
      write_file_atomic(*c.out, text);
    } else {
      out << text;
    }
    return status;
  } catch (const LimitExceeded& e) {
    err << "lrfront: limit: " << e.what() << '\n';
    return kLimitRefused;
  } catch (const ParseError& e) {
    err << "lrfront: parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidArgument& e) {
    err << "lrfront: " << e.what() << '\n';
    return kUsageError;
  } catch (const DimensionError& e) {
    err << "lrfront: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "lrfront: error: " << e.what() << '\n';
    return kOtherError;
  }
}

}  // namespace lrfront::cli
