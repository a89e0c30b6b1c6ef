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

/// \file pauli_exact.hpp
/// Exact-coefficient operator sums. Each term is a Pauli string times a
/// monomial in a small set of symbolic variables (one per distinct coupling
/// value) times a Gaussian integer. Nothing is rounded until evaluate().

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lrfront/pauli.hpp"

namespace lrfront {

/// a + b i with 128-bit parts; every operation is overflow-checked.
struct GaussianInteger {
  __int128 re = 0;
  __int128 im = 0;

  bool is_zero() const { return re == 0 && im == 0; }

  friend bool operator==(const GaussianInteger&, const GaussianInteger&) = default;

  friend GaussianInteger operator+(const GaussianInteger& a, const GaussianInteger& b) {
    GaussianInteger r;
    if (__builtin_add_overflow(a.re, b.re, &r.re) || __builtin_add_overflow(a.im, b.im, &r.im)) {
      overflow();
    }
    return r;
  }

  friend GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
    __int128 rr, ii, ri, ir;
    if (__builtin_mul_overflow(a.re, b.re, &rr) || __builtin_mul_overflow(a.im, b.im, &ii) ||
        __builtin_mul_overflow(a.re, b.im, &ri) || __builtin_mul_overflow(a.im, b.re, &ir)) {
      overflow();
    }
    GaussianInteger r;
    if (__builtin_sub_overflow(rr, ii, &r.re) || __builtin_add_overflow(ri, ir, &r.im)) overflow();
    return r;
  }

  /// Multiplies by i^power.
  GaussianInteger rotated(int power) const {
    switch (power & 3) {
      case 0: return *this;
      case 1: return {-im, re};
      case 2: return {-re, -im};
      default: return {im, -re};
    }
  }

  Complex value() const { return {static_cast<double>(re), static_cast<double>(im)}; }

  [[noreturn]] static void overflow() {
    throw LimitExceeded("exact coefficient overflowed 128-bit integer range");
  }
};

/// Exponent vector over at most kMaxExactVariables symbols.
inline constexpr int kMaxExactVariables = 32;

struct Monomial {
  std::array<std::uint8_t, kMaxExactVariables> exponent{};

  static Monomial one() { return {}; }
  static Monomial variable(int index) {
    if (index < 0 || index >= kMaxExactVariables) {
      throw LimitExceeded("more than " + std::to_string(kMaxExactVariables) +
                          " distinct coupling values in exact mode");
    }
    Monomial m;
    m.exponent[static_cast<std::size_t>(index)] = 1;
    return m;
  }

  int degree() const {
    int d = 0;
    for (auto e : exponent) d += e;
    return d;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < a.exponent.size(); ++i) {
      const int e = a.exponent[i] + b.exponent[i];
      if (e > 255) throw LimitExceeded("monomial degree above 255 in exact mode");
      r.exponent[i] = static_cast<std::uint8_t>(e);
    }
    return r;
  }

  long double evaluate(const std::vector<double>& values) const {
    long double v = 1;
    for (std::size_t i = 0; i < exponent.size(); ++i) {
      if (exponent[i] != 0) v *= std::pow(static_cast<long double>(values.at(i)), exponent[i]);
    }
    return v;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct ExactTermKey {
  PauliString string;
  Monomial monomial;
  friend bool operator==(const ExactTermKey&, const ExactTermKey&) = default;
};

struct ExactTermKeyHash {
  std::size_t operator()(const ExactTermKey& k) const noexcept {
    std::uint64_t h = PauliStringHash{}(k.string);
    for (auto e : k.monomial.exponent) h = (h ^ e) * 0x100000001B3ull;
    return static_cast<std::size_t>(h);
  }
};

class ExactOperatorSum {
 public:
  using Map = std::unordered_map<ExactTermKey, GaussianInteger, ExactTermKeyHash>;

  explicit ExactOperatorSum(int qubit_count) : probe_(qubit_count) {}

  int qubit_count() const { return probe_.qubit_count(); }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }

  ExactOperatorSum& add(const PauliString& p, const Monomial& m, const GaussianInteger& c) {
    probe_.check_fits(p);
    if (c.is_zero()) return *this;
    auto [it, inserted] = terms_.try_emplace(ExactTermKey{p, m}, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
  }

  /// Distinct Pauli strings present.
  std::vector<PauliString> support() const {
    std::vector<PauliString> out;
    for (const auto& [k, c] : terms_) out.push_back(k.string);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Substitutes numeric values for the variables.
  OperatorSum evaluate(const std::vector<double>& values) const {
    std::unordered_map<PauliString, std::complex<long double>, PauliStringHash> acc;
    for (const auto& [k, c] : terms_) {
      const long double m = k.monomial.evaluate(values);
      acc[k.string] += std::complex<long double>(static_cast<long double>(c.re) * m,
                                                 static_cast<long double>(c.im) * m);
    }
    OperatorSum out(qubit_count());
    for (const auto& [p, c] : acc) {
      out.add(p, Complex(static_cast<double>(c.real()), static_cast<double>(c.imag())));
    }
    return out;
  }

  /// Normalized Frobenius norm after substitution, accumulated in long double.
  long double norm(const std::vector<double>& values) const {
    std::unordered_map<PauliString, std::complex<long double>, PauliStringHash> acc;
    for (const auto& [k, c] : terms_) {
      const long double m = k.monomial.evaluate(values);
      acc[k.string] += std::complex<long double>(static_cast<long double>(c.re) * m,
                                                 static_cast<long double>(c.im) * m);
    }
    long double s = 0;
    for (const auto& [p, c] : acc) s += std::norm(c);
    return std::sqrt(s);
  }

  void check_same(const ExactOperatorSum& other) const { probe_.check_same(other.probe_); }

 private:
  OperatorSum probe_;  // carries qubit_count and its dimension checks
  Map terms_;
};

inline ExactOperatorSum commutator_sum(const ExactOperatorSum& a, const ExactOperatorSum& b) {
  a.check_same(b);
  ExactOperatorSum out(a.qubit_count());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      if (commutes(ka.string, kb.string)) continue;
      const auto [phase, prod] = multiply(ka.string, kb.string);
      out.add(prod, ka.monomial * kb.monomial, (ca * cb * GaussianInteger{2, 0}).rotated(phase.power));
    }
  }
  return out;
}

}  // namespace lrfront
