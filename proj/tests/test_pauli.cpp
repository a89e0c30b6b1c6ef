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

#include "lrfront/graph.hpp"
#include "lrfront/pauli.hpp"
#include "lrfront/pauli_exact.hpp"
#include "oracles.hpp"

using namespace lrfront;

namespace {

const Complex I(0, 1);

PauliString P(const char* s) { return PauliString::parse(s); }

}  // namespace

TEST(PauliString, ParseAndLetters) {
  const auto p = P("IXYZ");
  EXPECT_EQ(p.str(4), "IXYZ");
  EXPECT_EQ(p.letter(3), 'Y');
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(p.extent(), 4);
  EXPECT_TRUE(PauliString::identity().is_identity());
  EXPECT_EQ(PauliString::y(2), P("IY"));
  EXPECT_THROW(P("XQ"), InvalidArgument);
  EXPECT_THROW(PauliString::x(0), DimensionError);
}

TEST(PauliMultiply, SingleQubitRelations) {
  auto r = multiply(P("XI"), P("ZI"));
  EXPECT_EQ(r.product, P("YI"));
  EXPECT_EQ(r.phase.value(), -I);  // XZ = -iY

  r = multiply(PauliString::identity(), P("XYZ"));
  EXPECT_EQ(r.product, P("XYZ"));
  EXPECT_EQ(r.phase.value(), Complex(1));

  r = multiply(P("ZZ"), P("ZZ"));
  EXPECT_TRUE(r.product.is_identity());
  EXPECT_EQ(r.phase.value(), Complex(1));

  r = multiply(P("Y"), P("Z"));  // YZ = iX
  EXPECT_EQ(r.product, P("X"));
  EXPECT_EQ(r.phase.value(), I);
}

TEST(PauliCommutator, Examples) {
  auto c = commutator(P("X"), P("Z"), 1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.coefficient(P("Y")), -2.0 * I);

  EXPECT_TRUE(commutator(P("ZI"), P("IZ"), 2).empty());

  c = commutator(P("ZZ"), P("IX"), 2);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.coefficient(P("ZY")), 2.0 * I);
}

TEST(PauliCommutator, DimensionErrors) {
  EXPECT_THROW(commutator(P("IIX"), P("Z"), 2), DimensionError);
  OperatorSum a(2), b(3);
  EXPECT_THROW(commutator_sum(a, b), DimensionError);
  EXPECT_THROW(a + b, DimensionError);
  EXPECT_THROW(a.add(P("IIZ"), 1.0), DimensionError);
  EXPECT_THROW(OperatorSum(0), DimensionError);
}

TEST(OperatorSumAlgebra, CommutatorSumExamples) {
  std::mt19937_64 rng(7);
  const auto a = oracle::random_sum(3, 6, rng);
  EXPECT_TRUE(commutator_sum(a, a).empty());
  EXPECT_TRUE(commutator_sum(a, OperatorSum::identity(3, Complex(2.5, -1))).empty());

  // [H_chain3, Z_1] = [-X_1, Z_1] = 2i Y_1 (gamma = 1).
  const auto h = hamiltonian(build_chain(3, 1.0));
  const auto c = commutator_sum(h, OperatorSum(3, PauliString::z(1)));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.coefficient(PauliString::y(1)), 2.0 * I);
}

TEST(OperatorSumAlgebra, PruneThresholdDropsSmallCoefficients) {
  OperatorSum s(2, 1e-9);
  s.add(P("XI"), 1.0);
  s.add(P("XI"), -1.0 + 1e-12);
  EXPECT_TRUE(s.empty());
  OperatorSum exact(2);
  exact.add(P("XI"), 1.0);
  exact.add(P("XI"), -1.0 + 1e-12);
  EXPECT_EQ(exact.size(), 1u);
}

TEST(FrobeniusNorm, Examples) {
  EXPECT_DOUBLE_EQ(frobenius_norm(OperatorSum(3, P("XYZ"))), 1.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(OperatorSum(2)), 0.0);
  OperatorSum s(2);
  s.add(P("XI"), 3.0);
  s.add(P("IZ"), 4.0 * I);
  EXPECT_DOUBLE_EQ(frobenius_norm(s), 5.0);
  EXPECT_NEAR(normalized_frobenius(oracle::kron_sum(s)), 5.0, 1e-12);
}

TEST(ToDense, Conventions) {
  const auto id = to_dense(OperatorSum::identity(3));
  EXPECT_TRUE(id.matrix.isApprox(Eigen::MatrixXcd::Identity(8, 8)));

  const auto z1 = to_dense(OperatorSum(2, PauliString::z(1))).matrix;
  Eigen::VectorXcd diag(4);
  diag << 1, 1, -1, -1;
  EXPECT_TRUE(z1.isApprox(Eigen::MatrixXcd(diag.asDiagonal())));

  EXPECT_THROW(to_dense(OperatorSum(5), 4), LimitExceeded);
}

TEST(ToDense, MatchesKroneckerProducts) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 4;
    const auto s = oracle::random_sum(n, 8, rng);
    const auto dense = to_dense(s).matrix;
    EXPECT_LT((dense - oracle::kron_sum(s)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

// --- invariants -------------------------------------------------------------

TEST(PauliProperties, Antisymmetry) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    const auto a = oracle::random_sum(n, 8, rng);
    const auto b = oracle::random_sum(n, 8, rng);
    EXPECT_EQ(commutator_sum(a, b), commutator_sum(b, a) * Complex(-1));
  }
}

TEST(PauliProperties, JacobiIdentityExact) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const auto a = oracle::random_sum(n, 8, rng);
    const auto b = oracle::random_sum(n, 8, rng);
    const auto c = oracle::random_sum(n, 8, rng);
    const auto total = commutator_sum(a, commutator_sum(b, c)) + commutator_sum(b, commutator_sum(c, a)) +
                       commutator_sum(c, commutator_sum(a, b));
    EXPECT_TRUE(total.empty()) << "trial " << trial;  // integer coefficients: exact cancellation
  }
}

TEST(PauliProperties, NormMatchesDenseTrace) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    auto s = oracle::random_sum(n, 12, rng);
    s *= Complex(0.37, -1.3);
    const double expected = normalized_frobenius(oracle::kron_sum(s));
    EXPECT_NEAR(frobenius_norm(s), expected, 1e-12 * std::max(1.0, expected));
  }
}

TEST(PauliProperties, MultiplyAssociativeAndMatchesDense) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 5;
    const auto a = oracle::random_string(n, rng);
    const auto b = oracle::random_string(n, rng);
    const auto c = oracle::random_string(n, rng);
    const auto ab = multiply(a, b);
    const auto ab_c = multiply(ab.product, c);
    const auto bc = multiply(b, c);
    const auto a_bc = multiply(a, bc.product);
    EXPECT_EQ(ab_c.product, a_bc.product);
    EXPECT_EQ(Phase{ab.phase.power + ab_c.phase.power}, Phase{bc.phase.power + a_bc.phase.power});

    const Eigen::MatrixXcd lhs = oracle::kron_pauli(a, n) * oracle::kron_pauli(b, n);
    const Eigen::MatrixXcd rhs = ab.phase.value() * oracle::kron_pauli(ab.product, n);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(PauliProperties, DisjointSupportCommutes) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = oracle::random_string(6, rng);
    auto b = oracle::random_string(6, rng);
    const std::uint64_t left = 0b000111, right = 0b111000;
    a.x_mask &= left;
    a.z_mask &= left;
    b.x_mask &= right;
    b.z_mask &= right;
    EXPECT_TRUE(commutator(a, b, 6).empty());
  }
}

// --- exact-coefficient mode ------------------------------------------------

TEST(ExactCoefficients, GaussianIntegerArithmetic) {
  const GaussianInteger a{3, -2}, b{1, 4};
  EXPECT_EQ(a * b, (GaussianInteger{11, 10}));
  EXPECT_EQ(a.rotated(1), (GaussianInteger{2, 3}));
  EXPECT_EQ(a.rotated(2), (GaussianInteger{-3, 2}));
  EXPECT_EQ(a.rotated(3), (GaussianInteger{-2, -3}));
  const GaussianInteger big{static_cast<__int128>(1) << 100, 0};
  EXPECT_THROW(big * big, LimitExceeded);
}

TEST(ExactCoefficients, CommutatorAgreesWithFloatingPoint) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> coef(-3, 3), var(0, 2);
  const std::vector<double> values{0.7, -1.9, 2.5};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 4;
    ExactOperatorSum a(n), b(n);
    for (int t = 0; t < 6; ++t) {
      a.add(oracle::random_string(n, rng), Monomial::variable(var(rng)), {coef(rng), coef(rng)});
      b.add(oracle::random_string(n, rng), Monomial::one(), {coef(rng), coef(rng)});
    }
    const auto exact = commutator_sum(a, b).evaluate(values);
    const auto numeric = commutator_sum(a.evaluate(values), b.evaluate(values));
    EXPECT_LT(exact.max_abs_difference(numeric), 1e-12);
    EXPECT_NEAR(static_cast<double>(commutator_sum(a, b).norm(values)), frobenius_norm(numeric), 1e-11);
  }
}
