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

/// \file exact.hpp
/// Reference engines for C_{j,k}(t) = || [Z_j(t), Z_k] ||.
///
///  * correlation_exact: full diagonalization, valid at all times.
///  * correlation_series: the Heisenberg expansion truncated at n_max,
///    built from iterated symbolic commutators with H.
///  * leading_term: the first nonvanishing order, with exact coefficients.
///
/// Time is the dimensionless t/tau with tau = pi hbar / gamma, so that
/// H t / hbar = pi (H/gamma) (t/tau).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lrfront/graph.hpp"
#include "lrfront/log_value.hpp"
#include "lrfront/pauli.hpp"
#include "lrfront/pauli_exact.hpp"

namespace lrfront {

enum class Engine { exact, series, analytic };

inline const char* to_string(Engine e) {
  switch (e) {
    case Engine::exact: return "exact";
    case Engine::series: return "series";
    case Engine::analytic: return "analytic";
  }
  return "?";
}

/// Correlation values on a time grid, tagged with the engine that made them.
struct CorrelationSeries {
  Engine engine = Engine::exact;
  int source = 0;
  int target = 0;
  std::string graph_digest;
  std::optional<int> truncation_order;
  std::vector<double> times;   // t/tau, strictly increasing
  std::vector<double> values;  // C >= 0
};

inline void check_time_grid(const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0) throw InvalidArgument("times must be finite and >= 0");
    if (i > 0 && !(times[i] > times[i - 1])) throw InvalidArgument("times must be strictly increasing");
  }
}

// ---------------------------------------------------------------------------
// Dense engine

/// Eigendecomposition of H/gamma. H is real in the computational basis, so
/// the eigenvectors are real orthogonal.
struct Spectrum {
  int qubit_count = 0;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  /// max |V diag(E) V^T - H| / max |H|.
  double reconstruction_residual(const Eigen::MatrixXd& h) const {
    const Eigen::MatrixXd r = eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose() - h;
    return r.cwiseAbs().maxCoeff() / std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  }
};

/// Real dense H/gamma; see to_dense for the basis convention.
inline Eigen::MatrixXd dense_hamiltonian(const CouplingGraph& g, int dense_limit = kDefaultDenseLimit) {
  return to_dense(hamiltonian(g), dense_limit).matrix.real();
}

inline Spectrum diagonalize(const CouplingGraph& g, int dense_limit = kDefaultDenseLimit) {
  const Eigen::MatrixXd h = dense_hamiltonian(g, dense_limit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw Error("Hamiltonian diagonalization did not converge");
  return {g.qubit_count(), solver.eigenvalues(), solver.eigenvectors()};
}

/// +1/-1 eigenvalue of Z_q on every basis state.
inline Eigen::VectorXd z_diagonal(int qubit, int qubit_count) {
  const Eigen::Index dim = Eigen::Index{1} << qubit_count;
  const int shift = qubit_count - qubit;  // qubit 1 is the most significant bit
  Eigen::VectorXd d(dim);
  for (Eigen::Index b = 0; b < dim; ++b) d[b] = (b >> shift & 1) ? -1.0 : 1.0;
  return d;
}

/// Precomputed pieces for evolving Z_j many times.
class HeisenbergEvolution {
 public:
  HeisenbergEvolution(const Spectrum& spectrum, int source)
      : spectrum_(spectrum), source_(source) {
    if (source < 1 || source > spectrum.qubit_count) {
      throw DimensionError("qubit index " + std::to_string(source) + " outside register");
    }
    const Eigen::VectorXd z = z_diagonal(source, spectrum.qubit_count);
    const auto& v = spectrum.eigenvectors;
    z_eigenbasis_ = v.transpose() * z.asDiagonal() * v;
  }

  /// Z_j(t) = exp(i pi H t) Z_j exp(-i pi H t) in the computational basis.
  Eigen::MatrixXcd operator_at(double t_over_tau) const {
    const auto& e = spectrum_.eigenvalues;
    const Eigen::Index dim = e.size();
    const double w = std::numbers::pi * t_over_tau;
    Eigen::VectorXcd phase(dim);
    for (Eigen::Index a = 0; a < dim; ++a) phase[a] = std::polar(1.0, w * e[a]);
    const Eigen::MatrixXcd inner =
        phase.asDiagonal() * z_eigenbasis_.cast<Complex>() * phase.conjugate().asDiagonal();
    const Eigen::MatrixXcd v = spectrum_.eigenvectors.cast<Complex>();
    return v * inner * v.transpose();
  }

  /// || [Z_j(t), Z_k] ||. Z_k is diagonal, so the commutator keeps exactly
  /// the entries of Z_j(t) between states that differ on qubit k, times +-2.
  double correlation(int target, double t_over_tau) const {
    if (target < 1 || target > spectrum_.qubit_count) {
      throw DimensionError("qubit index " + std::to_string(target) + " outside register");
    }
    if (t_over_tau == 0) return 0.0;  // Z_j and Z_k commute; skip the basis round trip
    const Eigen::MatrixXcd a = operator_at(t_over_tau);
    const int shift = spectrum_.qubit_count - target;
    const Eigen::Index dim = a.rows();
    double s = 0;
    for (Eigen::Index c = 0; c < dim; ++c) {
      for (Eigen::Index r = 0; r < dim; ++r) {
        if (((r ^ c) >> shift) & 1) s += std::norm(a(r, c));
      }
    }
    return std::sqrt(4.0 * s / static_cast<double>(dim));
  }

  int source() const { return source_; }

 private:
  const Spectrum& spectrum_;
  int source_;
  Eigen::MatrixXd z_eigenbasis_;
};

inline CorrelationSeries correlation_exact(const Spectrum& spectrum, int j, int k,
                                           const std::vector<double>& times) {
  check_time_grid(times);
  HeisenbergEvolution evo(spectrum, j);
  CorrelationSeries out{Engine::exact, j, k, {}, std::nullopt, times, {}};
  out.values.reserve(times.size());
  for (double t : times) out.values.push_back(evo.correlation(k, t));
  return out;
}

inline CorrelationSeries correlation_exact(const CouplingGraph& g, int j, int k, const std::vector<double>& times,
                                           int dense_limit = kDefaultDenseLimit) {
  g.check_qubit(j);
  g.check_qubit(k);
  auto out = correlation_exact(diagonalize(g, dense_limit), j, k, times);
  out.graph_digest = g.digest();
  return out;
}

// ---------------------------------------------------------------------------
// Series engine

struct SeriesOptions {
  std::size_t max_terms = 2'000'000;  // per symbolic operator
  double tolerance = 1e-10;           // convergence flag on the last order
};

struct SeriesResult {
  double value = 0;            // || sum_{n <= n_max} C^(n) (t/tau)^n ||
  double last_order_norm = 0;  // largest of the last two ||C^(n)|| (t/tau)^n
  bool converged = true;       // last_order_norm <= tolerance
};

/// The operators C^(n) = (i pi)^n / n! [[(H)^n, Z_j], Z_k] for n = 1..n_max.
class SeriesExpansion {
 public:
  SeriesExpansion(const CouplingGraph& g, int j, int k, int n_max, const SeriesOptions& opts = {})
      : opts_(opts) {
    g.check_qubit(j);
    g.check_qubit(k);
    if (n_max < 1) throw InvalidArgument("series order must be at least 1");
    const int nq = g.qubit_count();
    if (nq > kMaxMaskQubits) throw DimensionError("series engine holds at most 64 qubits");
    const OperatorSum h = hamiltonian(g);
    const PauliString zk = PauliString::z(k);
    OperatorSum nested(nq, PauliString::z(j));
    double scale = 1;  // pi^n / n!
    orders_.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
      nested = commutator_sum(h, nested);
      if (nested.size() > opts.max_terms) {
        throw LimitExceeded("series engine: order " + std::to_string(n) + " holds " +
                            std::to_string(nested.size()) + " Pauli terms, above the cap of " +
                            std::to_string(opts.max_terms));
      }
      scale *= std::numbers::pi / n;
      const Complex factor = scale * Phase{n & 3}.value();
      OperatorSum c(nq);
      for (const auto& [p, coef] : nested.terms()) {
        if (commutes(p, zk)) continue;
        const auto [phase, prod] = multiply(p, zk);
        c.add(prod, 2.0 * factor * coef * phase.value());
      }
      orders_.push_back(std::move(c));
    }
  }

  int order() const { return static_cast<int>(orders_.size()); }

  /// C^(n) as an operator, n in 1..order().
  const OperatorSum& coefficient(int n) const { return orders_.at(static_cast<std::size_t>(n - 1)); }

  SeriesResult evaluate(double t_over_tau) const {
    if (!(t_over_tau >= 0) || !std::isfinite(t_over_tau)) throw InvalidArgument("t/tau must be finite and >= 0");
    OperatorSum total(orders_.front().qubit_count());
    double tn = 1;
    SeriesResult r;
    for (std::size_t n = 0; n < orders_.size(); ++n) {
      tn *= t_over_tau;
      total += orders_[n] * Complex(tn);
      // Orders alternate in parity, so one of the last two can vanish identically.
      if (n + 2 >= orders_.size()) r.last_order_norm = std::max(r.last_order_norm, frobenius_norm(orders_[n]) * tn);
    }
    r.value = frobenius_norm(total);
    r.converged = r.last_order_norm <= opts_.tolerance;
    return r;
  }

 private:
  SeriesOptions opts_;
  std::vector<OperatorSum> orders_;
};

inline SeriesResult correlation_series(const CouplingGraph& g, int j, int k, double t_over_tau, int n_max,
                                       const SeriesOptions& opts = {}) {
  return SeriesExpansion(g, j, k, n_max, opts).evaluate(t_over_tau);
}

// ---------------------------------------------------------------------------
// Leading order, exact coefficients

/// 2H/gamma with integral coefficients: -2 sum X_q - sum Delta_{jk} Z_j Z_k.
/// Each distinct coupling value becomes one symbolic variable.
struct ExactHamiltonian {
  ExactOperatorSum doubled;
  std::vector<double> variable_values;
};

inline ExactHamiltonian exact_hamiltonian(const CouplingGraph& g) {
  ExactHamiltonian out{ExactOperatorSum(g.qubit_count()), {}};
  for (int q = 1; q <= g.qubit_count(); ++q) out.doubled.add(PauliString::x(q), Monomial::one(), {-2, 0});
  for (const auto& [key, d] : g.couplings()) {
    auto it = std::find(out.variable_values.begin(), out.variable_values.end(), d);
    const auto var = static_cast<int>(it - out.variable_values.begin());
    if (it == out.variable_values.end()) out.variable_values.push_back(d);
    out.doubled.add(PauliString{0, PauliString::bit(key.first) | PauliString::bit(key.second)},
                    Monomial::variable(var), {-1, 0});
  }
  return out;
}

/// First nonvanishing term of the expansion. The operator is
///
///     C^(n) = (i pi)^n / n! G^(n),   G^(n) = [[(H)^n, Z_j], Z_k],
///
/// and G^(n) is held exactly as 2^n G^(n) (integral coefficients).
struct LeadingTerm {
  int order = 0;
  ExactOperatorSum scaled_generator{1};  // 2^order G^(order)
  std::vector<double> variable_values;  // Delta/gamma for each symbolic variable

  /// Pauli strings that survive at this order.
  std::vector<PauliString> support() const { return scaled_generator.support(); }

  /// ||G^(n)|| in units of gamma^n.
  long double generator_norm() const {
    return scaled_generator.norm(variable_values) / std::pow(2.0L, order);
  }

  /// ln of ||C^(n)|| = pi^n / n! ||G^(n)||.
  double log_prefactor() const {
    return static_cast<double>(order * std::log(std::numbers::pi_v<long double>) -
                               std::lgamma(static_cast<long double>(order) + 1) +
                               std::log(generator_norm()));
  }

  double prefactor() const { return std::exp(log_prefactor()); }
};

struct LeadingOptions {
  std::size_t max_terms = 2'000'000;
};

/// Iterates [(2H)^n, Z_j] until commuting with Z_k leaves something. Returns
/// nullopt when j and k are not connected, since every order then vanishes.
inline std::optional<LeadingTerm> leading_term(const CouplingGraph& g, int j, int k,
                                               const LeadingOptions& opts = {}) {
  const MinPathSummary path = min_path_summary(g, j, k);
  if (!path.reachable()) return std::nullopt;
  if (g.qubit_count() > kMaxMaskQubits) throw DimensionError("exact engine holds at most 64 qubits");

  const ExactHamiltonian h = exact_hamiltonian(g);
  const PauliString zk = PauliString::z(k);
  ExactOperatorSum nested(g.qubit_count());
  nested.add(PauliString::z(j), Monomial::one(), {1, 0});
  const int order_limit = 2 * path.length() + 1;
  for (int n = 1; n <= order_limit; ++n) {
    nested = commutator_sum(h.doubled, nested);
    if (nested.size() > opts.max_terms) {
      throw LimitExceeded("leading-term search: order " + std::to_string(n) + " holds " +
                          std::to_string(nested.size()) + " terms, above the cap of " +
                          std::to_string(opts.max_terms));
    }
    ExactOperatorSum gen(g.qubit_count());
    for (const auto& [key, c] : nested.terms()) {
      if (commutes(key.string, zk)) continue;
      const auto [phase, prod] = multiply(key.string, zk);
      gen.add(prod, key.monomial, (c * GaussianInteger{2, 0}).rotated(phase.power));
    }
    if (!gen.empty()) return LeadingTerm{n, std::move(gen), h.variable_values};
  }
  throw Error("no nonvanishing order up to 2L+1 = " + std::to_string(order_limit) +
              " for connected qubits " + std::to_string(j) + " and " + std::to_string(k));
}

}  // namespace lrfront
