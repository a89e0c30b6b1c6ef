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

#include <gtest/gtest.h>

#include <random>

#include "lrfront/log_value.hpp"

using namespace lrfront;

TEST(LogValue, ZeroAndOne) {
  EXPECT_TRUE(LogValue::zero().is_zero());
  EXPECT_EQ(LogValue::one().to_double(), 1.0);
  EXPECT_EQ(LogValue::from_double(0.0), LogValue::zero());
  EXPECT_EQ(LogValue::zero().log10_magnitude(), -std::numeric_limits<double>::infinity());
}

TEST(LogValue, ArithmeticMatchesLinear) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng), b = u(rng);
    const auto la = LogValue::from_double(a), lb = LogValue::from_double(b);
    EXPECT_NEAR((la * lb).to_double(), a * b, 1e-12 * std::abs(a * b));
    EXPECT_NEAR((la / lb).to_double(), a / b, 1e-12 * std::abs(a / b));
    EXPECT_NEAR((la + lb).to_double(), a + b, 1e-12 * (std::abs(a) + std::abs(b)));
    EXPECT_NEAR((la - lb).to_double(), a - b, 1e-12 * (std::abs(a) + std::abs(b)));
    EXPECT_EQ(la < lb, a < b);
  }
}

TEST(LogValue, ExactCancellationGivesZero) {
  const auto a = LogValue::from_log(-4000.0);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE((LogValue::zero() + LogValue::zero()).is_zero());
}

TEST(LogValue, ExtremeRange) {
  const auto tiny = LogValue::from_log(-1e5);
  const auto sum = tiny + tiny;
  EXPECT_NEAR(sum.log_magnitude(), -1e5 + std::log(2.0), 1e-9);
  EXPECT_EQ(tiny.to_double(), 0.0);  // linear conversion underflows, log form does not
  EXPECT_NEAR(tiny.pow(3).log_magnitude(), -3e5, 1e-6);
  EXPECT_EQ(LogValue::from_double(-2).pow(3).sign(), -1);
  EXPECT_EQ(LogValue::from_double(-2).pow(2).sign(), 1);
  EXPECT_THROW(LogValue::one() / LogValue::zero(), InvalidArgument);
}

TEST(LogFactorial, SmallAndLarge) {
  EXPECT_NEAR(log_factorial(0), 0.0, 1e-15);
  EXPECT_NEAR(log_factorial(5), std::log(120.0), 1e-13);
  // ln(20001!) by Stirling with three correction terms.
  const double n = 20001;
  const double stirling = n * std::log(n) - n + 0.5 * std::log(2 * std::numbers::pi * n) + 1 / (12 * n) -
                          1 / (360 * n * n * n);
  EXPECT_NEAR(log_factorial(n), stirling, 1e-9);
  EXPECT_THROW(log_factorial(-1), InvalidArgument);
}
