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

/// \file pauli.hpp
/// Pauli strings in symplectic (x-mask, z-mask) form and weighted sums of
/// them.
///
/// Qubits are numbered from 1 in every public factory and accessor; bit q-1
/// of a mask belongs to qubit q. A string with bits x and z set on the same
/// qubit denotes Y there, so the operator represented by masks (x, z) is
///
///     i^{|x & z|} X^x Z^z
///
/// and the string itself never carries a phase.

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lrfront/error.hpp"

namespace lrfront {

using Complex = std::complex<double>;

/// Largest register the mask representation can hold.
inline constexpr int kMaxMaskQubits = 64;

/// Default cap on qubits for any dense (2^n x 2^n) rendering.
inline constexpr int kDefaultDenseLimit = 14;

struct PauliString {
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  static PauliString identity() { return {}; }
  static PauliString x(int qubit) { return {bit(qubit), 0}; }
  static PauliString y(int qubit) { return {bit(qubit), bit(qubit)}; }
  static PauliString z(int qubit) { return {0, bit(qubit)}; }

  /// Parses "IXYZ"-style text; the first character is qubit 1.
  static PauliString parse(const std::string& letters) {
    if (static_cast<int>(letters.size()) > kMaxMaskQubits) {
      throw DimensionError("Pauli string longer than " + std::to_string(kMaxMaskQubits) + " qubits");
    }
    PauliString p;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const std::uint64_t b = std::uint64_t{1} << i;
      switch (letters[i]) {
        case 'I': case '_': break;
        case 'X': p.x_mask |= b; break;
        case 'Y': p.x_mask |= b; p.z_mask |= b; break;
        case 'Z': p.z_mask |= b; break;
        default:
          throw InvalidArgument(std::string("unknown Pauli letter '") + letters[i] + "'");
      }
    }
    return p;
  }

  bool is_identity() const { return (x_mask | z_mask) == 0; }
  std::uint64_t support() const { return x_mask | z_mask; }
  int weight() const { return std::popcount(support()); }

  /// Highest qubit (1-based) acted on nontrivially, or 0 for the identity.
  int extent() const { return kMaxMaskQubits - std::countl_zero(support()); }

  char letter(int qubit) const {
    const std::uint64_t b = bit(qubit);
    const bool xs = x_mask & b;
    const bool zs = z_mask & b;
    return xs ? (zs ? 'Y' : 'X') : (zs ? 'Z' : 'I');
  }

  std::string str(int qubit_count) const {
    std::string out;
    out.reserve(static_cast<std::size_t>(qubit_count));
    for (int q = 1; q <= qubit_count; ++q) out.push_back(letter(q));
    return out;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

  static std::uint64_t bit(int qubit) {
    if (qubit < 1 || qubit > kMaxMaskQubits) {
      throw DimensionError("qubit index " + std::to_string(qubit) + " outside 1.." +
                           std::to_string(kMaxMaskQubits));
    }
    return std::uint64_t{1} << (qubit - 1);
  }
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept {
    std::uint64_t h = p.x_mask * 0x9E3779B97F4A7C15ull;
    h ^= p.z_mask + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// A power of i, stored mod 4.
struct Phase {
  int power = 0;

  Complex value() const {
    static constexpr double re[4] = {1, 0, -1, 0};
    static constexpr double im[4] = {0, 1, 0, -1};
    return {re[power & 3], im[power & 3]};
  }
  friend bool operator==(const Phase& a, const Phase& b) { return ((a.power - b.power) & 3) == 0; }
};

struct PauliProduct {
  Phase phase;
  PauliString product;
};

/// a*b = phase * product.
inline PauliProduct multiply(const PauliString& a, const PauliString& b) {
  const PauliString prod{a.x_mask ^ b.x_mask, a.z_mask ^ b.z_mask};
  // (i^{|xa za|} X^xa Z^za)(i^{|xb zb|} X^xb Z^zb) with Z^za X^xb = (-1)^{|za xb|} X^xb Z^za.
  const int power = std::popcount(a.x_mask & a.z_mask) + std::popcount(b.x_mask & b.z_mask) +
                    2 * std::popcount(a.z_mask & b.x_mask) - std::popcount(prod.x_mask & prod.z_mask);
  return {Phase{power & 3}, prod};
}

inline bool commutes(const PauliString& a, const PauliString& b) {
  return ((std::popcount(a.x_mask & b.z_mask) + std::popcount(a.z_mask & b.x_mask)) & 1) == 0;
}

/// Weighted sum of Pauli strings with complex coefficients.
class OperatorSum {
 public:
  using Map = std::unordered_map<PauliString, Complex, PauliStringHash>;

  explicit OperatorSum(int qubit_count, double prune_threshold = 0.0)
      : qubit_count_(qubit_count), prune_(prune_threshold) {
    if (qubit_count < 1 || qubit_count > kMaxMaskQubits) {
      throw DimensionError("qubit count " + std::to_string(qubit_count) + " outside 1.." +
                           std::to_string(kMaxMaskQubits));
    }
  }

  OperatorSum(int qubit_count, const PauliString& p, Complex c = 1.0) : OperatorSum(qubit_count) {
    add(p, c);
  }

  static OperatorSum identity(int qubit_count, Complex c = 1.0) {
    return OperatorSum(qubit_count, PauliString::identity(), c);
  }

  int qubit_count() const { return qubit_count_; }
  double prune_threshold() const { return prune_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }

  Complex coefficient(const PauliString& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Complex{} : it->second;
  }

  /// Accumulates c into the coefficient of p, dropping the entry if the
  /// result falls to (or below) the prune threshold.
  OperatorSum& add(const PauliString& p, Complex c) {
    check_fits(p);
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) <= prune_) terms_.erase(it);
    return *this;
  }

  /// Terms in a deterministic (mask) order.
  std::vector<std::pair<PauliString, Complex>> sorted_terms() const {
    std::vector<std::pair<PauliString, Complex>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  OperatorSum& operator+=(const OperatorSum& other) {
    check_same(other);
    for (const auto& [p, c] : other.terms_) add(p, c);
    return *this;
  }
  OperatorSum& operator-=(const OperatorSum& other) {
    check_same(other);
    for (const auto& [p, c] : other.terms_) add(p, -c);
    return *this;
  }
  OperatorSum& operator*=(Complex s) {
    if (s == Complex{}) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (std::abs(it->second) <= prune_) {
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
    return *this;
  }

  friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
  friend OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
  friend OperatorSum operator*(OperatorSum a, Complex s) { return a *= s; }
  friend OperatorSum operator*(Complex s, OperatorSum a) { return a *= s; }

  /// Exact equality of term maps.
  friend bool operator==(const OperatorSum& a, const OperatorSum& b) {
    return a.qubit_count_ == b.qubit_count_ && a.terms_ == b.terms_;
  }

  /// Largest coefficient-wise distance to another sum.
  double max_abs_difference(const OperatorSum& other) const {
    check_same(other);
    double d = 0;
    for (const auto& [p, c] : terms_) d = std::max(d, std::abs(c - other.coefficient(p)));
    for (const auto& [p, c] : other.terms_) {
      if (!terms_.contains(p)) d = std::max(d, std::abs(c));
    }
    return d;
  }

  void check_same(const OperatorSum& other) const {
    if (other.qubit_count_ != qubit_count_) {
      throw DimensionError("operator sums over " + std::to_string(qubit_count_) + " and " +
                           std::to_string(other.qubit_count_) + " qubits");
    }
  }

  void check_fits(const PauliString& p) const {
    if (p.extent() > qubit_count_) {
      throw DimensionError("Pauli string acts on qubit " + std::to_string(p.extent()) +
                           " of a " + std::to_string(qubit_count_) + "-qubit register");
    }
  }

 private:
  int qubit_count_;
  double prune_;
  Map terms_;
};

/// [a, b] of two strings: empty when they commute, else 2ab.
inline OperatorSum commutator(const PauliString& a, const PauliString& b, int qubit_count) {
  OperatorSum out(qubit_count);
  out.check_fits(a);
  out.check_fits(b);
  if (commutes(a, b)) return out;
  const auto [phase, prod] = multiply(a, b);
  out.add(prod, 2.0 * phase.value());
  return out;
}

/// [A, B] by bilinearity. Pairs that commute are skipped before any
/// arithmetic, so only anticommuting pairs touch the accumulator.
inline OperatorSum commutator_sum(const OperatorSum& a, const OperatorSum& b) {
  a.check_same(b);
  OperatorSum out(a.qubit_count(), std::max(a.prune_threshold(), b.prune_threshold()));
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      if (commutes(pa, pb)) continue;
      const auto [phase, prod] = multiply(pa, pb);
      out.add(prod, 2.0 * ca * cb * phase.value());
    }
  }
  return out;
}

/// Normalized Frobenius norm sqrt(Tr(A^dag A) / 2^n). Distinct strings are
/// orthonormal under this inner product, so it is the l2 norm of the
/// coefficients.
inline double frobenius_norm(const OperatorSum& a) {
  double s = 0;
  for (const auto& [p, c] : a.terms()) s += std::norm(c);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Dense rendering

/// 2^n x 2^n complex matrix. Qubit 1 is the leftmost tensor factor, i.e. the
/// most significant bit of the basis index.
struct DenseOperator {
  int qubit_count = 0;
  Eigen::MatrixXcd matrix;

  Eigen::Index dimension() const { return matrix.rows(); }
};

inline void check_dense_limit(int qubit_count, int dense_limit) {
  if (qubit_count > dense_limit) {
    throw LimitExceeded("dense rendering of " + std::to_string(qubit_count) +
                        " qubits exceeds the dense limit of " + std::to_string(dense_limit) +
                        " qubits");
  }
}

/// Maps a qubit mask (bit q-1 = qubit q) to dense-index bits (qubit 1 = MSB).
inline std::uint64_t dense_bits(std::uint64_t mask, int qubit_count) {
  std::uint64_t out = 0;
  for (int q = 0; q < qubit_count; ++q) {
    if (mask >> q & 1) out |= std::uint64_t{1} << (qubit_count - 1 - q);
  }
  return out;
}

/// Adds c * P into a dense matrix: P|col> = i^{|x&z|} (-1)^{|z & col|} |col ^ x>.
inline void accumulate_dense(Eigen::MatrixXcd& m, const PauliString& p, Complex c, int qubit_count) {
  const std::uint64_t xb = dense_bits(p.x_mask, qubit_count);
  const std::uint64_t zb = dense_bits(p.z_mask, qubit_count);
  const Complex base = c * Phase{std::popcount(p.x_mask & p.z_mask) & 3}.value();
  const std::uint64_t dim = std::uint64_t{1} << qubit_count;
  for (std::uint64_t col = 0; col < dim; ++col) {
    const bool neg = std::popcount(zb & col) & 1;
    m(static_cast<Eigen::Index>(col ^ xb), static_cast<Eigen::Index>(col)) += neg ? -base : base;
  }
}

inline DenseOperator to_dense(const OperatorSum& a, int dense_limit = kDefaultDenseLimit) {
  check_dense_limit(a.qubit_count(), dense_limit);
  const auto dim = Eigen::Index{1} << a.qubit_count();
  DenseOperator out{a.qubit_count(), Eigen::MatrixXcd::Zero(dim, dim)};
  for (const auto& [p, c] : a.terms()) accumulate_dense(out.matrix, p, c, a.qubit_count());
  return out;
}

/// sqrt(Tr(Q^dag Q) / N) of a dense matrix.
inline double normalized_frobenius(const Eigen::MatrixXcd& q) {
  return std::sqrt(q.squaredNorm() / static_cast<double>(q.rows()));
}

}  // namespace lrfront
