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

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lrfront/error.hpp"

namespace lrfront {

/// A real number stored as sign and natural log of its magnitude, so that
/// values like 1e-1700 or (2*10^4)! stay representable.
class LogValue {
 public:
  constexpr LogValue() = default;

  static constexpr LogValue zero() { return {}; }
  static constexpr LogValue one() { return from_log(0.0); }

  /// +exp(log_magnitude).
  static constexpr LogValue from_log(double log_magnitude, int sign = 1) {
    LogValue v;
    if (sign == 0 || log_magnitude == -std::numeric_limits<double>::infinity()) return v;
    v.sign_ = sign > 0 ? 1 : -1;
    v.log_ = log_magnitude;
    return v;
  }

  static LogValue from_double(double x) {
    if (x == 0.0) return zero();
    return from_log(std::log(std::abs(x)), x > 0 ? 1 : -1);
  }

  int sign() const { return sign_; }
  double log_magnitude() const { return log_; }
  bool is_zero() const { return sign_ == 0; }

  /// log10 |x|; -inf for zero.
  double log10_magnitude() const { return log_ / std::numbers::ln10; }

  /// Linear value; may under- or overflow.
  double to_double() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_); }

  friend LogValue operator*(const LogValue& a, const LogValue& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log(a.log_ + b.log_, a.sign_ * b.sign_);
  }

  friend LogValue operator/(const LogValue& a, const LogValue& b) {
    if (b.is_zero()) throw InvalidArgument("LogValue division by zero");
    if (a.is_zero()) return zero();
    return from_log(a.log_ - b.log_, a.sign_ * b.sign_);
  }

  /// Signed log-sum-exp.
  friend LogValue operator+(const LogValue& a, const LogValue& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LogValue& hi = a.log_ >= b.log_ ? a : b;
    const LogValue& lo = a.log_ >= b.log_ ? b : a;
    const double r = std::exp(lo.log_ - hi.log_);
    if (hi.sign_ == lo.sign_) return from_log(hi.log_ + std::log1p(r), hi.sign_);
    if (r == 1.0) return zero();
    return from_log(hi.log_ + std::log1p(-r), hi.sign_);
  }

  friend LogValue operator-(const LogValue& a) { return from_log(a.log_, -a.sign_); }
  friend LogValue operator-(const LogValue& a, const LogValue& b) { return a + (-b); }

  LogValue& operator*=(const LogValue& b) { return *this = *this * b; }
  LogValue& operator+=(const LogValue& b) { return *this = *this + b; }

  /// |x|^p keeps the sign only for odd integer p.
  LogValue pow(double p) const {
    if (is_zero()) {
      if (p == 0) return one();
      if (p < 0) throw InvalidArgument("LogValue: zero to a negative power");
      return zero();
    }
    const bool odd = std::fmod(std::abs(p), 2.0) == 1.0;
    return from_log(log_ * p, (sign_ < 0 && odd) ? -1 : 1);
  }

  LogValue abs() const { return from_log(log_, sign_ == 0 ? 0 : 1); }

  friend bool operator==(const LogValue& a, const LogValue& b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log_ == b.log_);
  }

  friend bool operator<(const LogValue& a, const LogValue& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    if (a.sign_ == 0) return false;
    return a.sign_ > 0 ? a.log_ < b.log_ : a.log_ > b.log_;
  }
  friend bool operator>(const LogValue& a, const LogValue& b) { return b < a; }
  friend bool operator<=(const LogValue& a, const LogValue& b) { return !(b < a); }
  friend bool operator>=(const LogValue& a, const LogValue& b) { return !(a < b); }

  std::string str() const {
    if (is_zero()) return "0";
    const double l10 = log10_magnitude();
    const double e = std::floor(l10);
    return std::string(sign_ < 0 ? "-" : "") + std::to_string(std::pow(10.0, l10 - e)) + "e" +
           std::to_string(static_cast<long long>(e));
  }

 private:
  int sign_ = 0;
  double log_ = -std::numeric_limits<double>::infinity();
};

/// ln(n!) via log-gamma.
inline double log_factorial(double n) {
  if (n < 0) throw InvalidArgument("log_factorial of a negative number");
  return std::lgamma(n + 1.0);
}

}  // namespace lrfront
