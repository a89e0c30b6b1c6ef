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

/// \file network.hpp
/// Reading and writing network descriptions.
///
/// Line format:
///
///     # comment
///     qubits 9
///     gamma 1.0               (optional, default 1)
///     edge 1 2 0.75           (1-based j != k, Delta/gamma)
///
/// Structured format (detected by a leading '{'):
///
///     {"qubits": 9, "gamma": 1.0, "couplings": [[1, 2, 0.75], ...]}

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lrfront/graph.hpp"

namespace lrfront {

namespace detail {

inline double parse_real(const std::string& token, const std::string& field, int line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw ParseError("field '" + field + "': expected a number, got '" + token + "'", line);
  }
  return v;
}

inline int parse_int(const std::string& token, const std::string& field, int line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty() || v < -2147483647L || v > 2147483647L) {
    throw ParseError("field '" + field + "': expected an integer, got '" + token + "'", line);
  }
  return static_cast<int>(v);
}

struct RawEdge {
  Edge edge;
  int line = 0;       // text format
  std::string where;  // structured format, e.g. "couplings[3]"
};

[[noreturn]] inline void fail(const RawEdge& r, const std::string& msg) {
  if (!r.where.empty()) throw ParseError(r.where + ": " + msg);
  throw ParseError(msg, r.line);
}

inline std::string origin_of(const RawEdge& r) {
  return r.where.empty() ? "line " + std::to_string(r.line) : r.where;
}

/// Shared validation of both input formats, so both give the same
/// diagnostics.
inline CouplingGraph assemble(int qubits, double gamma, const std::vector<RawEdge>& raw) {
  if (qubits < 1) throw ParseError("'qubits' must be a positive integer");
  if (!(gamma > 0) || !std::isfinite(gamma)) throw ParseError("'gamma' must be positive");
  std::map<std::pair<int, int>, RawEdge> seen;
  std::vector<Edge> edges;
  for (const RawEdge& r : raw) {
    const Edge& e = r.edge;
    if (e.j < 1 || e.j > qubits || e.k < 1 || e.k > qubits) {
      fail(r, "edge (" + std::to_string(e.j) + "," + std::to_string(e.k) +
                  ") references a qubit outside 1.." + std::to_string(qubits));
    }
    if (e.j == e.k) fail(r, "self-loop on qubit " + std::to_string(e.j));
    if (!std::isfinite(e.delta_over_gamma) || e.delta_over_gamma == 0) {
      fail(r, "edge (" + std::to_string(e.j) + "," + std::to_string(e.k) + ") has zero or non-finite coupling");
    }
    const auto key = std::minmax(e.j, e.k);
    auto [it, fresh] = seen.emplace(key, r);
    if (!fresh) {
      const Edge& prev = it->second.edge;
      const bool mirrored = prev.j != e.j;
      if (mirrored && prev.delta_over_gamma != e.delta_over_gamma) {
        fail(r, "symmetry violation: edge (" + std::to_string(prev.j) + "," + std::to_string(prev.k) +
                    ") and its mirror disagree on the coupling");
      }
      fail(r, std::string(mirrored ? "mirrored" : "duplicate") + " edge (" + std::to_string(key.first) +
                  "," + std::to_string(key.second) + "), first given at " + origin_of(it->second));
    }
    edges.push_back(e);
  }
  return CouplingGraph(qubits, std::move(edges), gamma);
}

inline CouplingGraph load_structured(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("network document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "qubits" && key != "gamma" && key != "couplings") {
      throw ParseError("unknown key '" + key + "'");
    }
  }
  if (!doc.contains("qubits") || !doc["qubits"].is_number_integer()) {
    throw ParseError("'qubits' must be present and an integer");
  }
  double gamma = 1.0;
  if (doc.contains("gamma")) {
    if (!doc["gamma"].is_number()) throw ParseError("'gamma' must be a number");
    gamma = doc["gamma"].get<double>();
  }
  std::vector<RawEdge> raw;
  if (doc.contains("couplings")) {
    const auto& list = doc["couplings"];
    if (!list.is_array()) throw ParseError("'couplings' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& c = list[i];
      const std::string where = "couplings[" + std::to_string(i) + "]";
      if (!c.is_array() || c.size() != 3 || !c[0].is_number_integer() || !c[1].is_number_integer() ||
          !c[2].is_number()) {
        throw ParseError(where + ": expected [j, k, delta_over_gamma]");
      }
      raw.push_back({{c[0].get<int>(), c[1].get<int>(), c[2].get<double>()}, 0, where});
    }
  }
  return assemble(doc["qubits"].get<int>(), gamma, raw);
}

}  // namespace detail

inline CouplingGraph load_network(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return detail::load_structured(text);

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int qubits = -1;
  int qubits_line = 0;
  std::optional<double> gamma;
  std::vector<detail::RawEdge> raw;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "qubits") {
      if (tok.size() != 2) throw ParseError("'qubits' takes exactly one value", lineno);
      if (qubits >= 0) throw ParseError("'qubits' given twice (first on line " + std::to_string(qubits_line) + ")", lineno);
      qubits = detail::parse_int(tok[1], "qubits", lineno);
      if (qubits < 1) throw ParseError("'qubits' must be a positive integer", lineno);
      qubits_line = lineno;
    } else if (kw == "gamma") {
      if (tok.size() != 2) throw ParseError("'gamma' takes exactly one value", lineno);
      if (gamma) throw ParseError("'gamma' given twice", lineno);
      gamma = detail::parse_real(tok[1], "gamma", lineno);
      if (!(*gamma > 0) || !std::isfinite(*gamma)) throw ParseError("'gamma' must be positive", lineno);
    } else if (kw == "edge") {
      if (tok.size() != 4) throw ParseError("'edge' takes three values: j k delta_over_gamma", lineno);
      raw.push_back({{detail::parse_int(tok[1], "j", lineno), detail::parse_int(tok[2], "k", lineno),
                      detail::parse_real(tok[3], "delta_over_gamma", lineno)},
                     lineno, {}});
    } else {
      throw ParseError("unknown keyword '" + kw + "'", lineno);
    }
  }
  if (qubits < 0) throw ParseError("missing 'qubits' header");
  return detail::assemble(qubits, gamma.value_or(1.0), raw);
}

inline CouplingGraph load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open network file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_network(buf.str());
}

/// Line-format rendering that load_network reads back to an equal graph.
inline std::string write_network(const CouplingGraph& g) {
  std::ostringstream os;
  os.precision(17);
  os << "qubits " << g.qubit_count() << "\n";
  os << "gamma " << g.gamma() << "\n";
  for (const Edge& e : g.edges()) os << "edge " << e.j << ' ' << e.k << ' ' << e.delta_over_gamma << "\n";
  return os.str();
}

}  // namespace lrfront
