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

#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "lrfront/analytic.hpp"
#include "lrfront/exact.hpp"
#include "oracles.hpp"

using namespace lrfront;

namespace {

constexpr double kPi = std::numbers::pi;

/// || [exp(iHs) Z_j exp(-iHs), Z_k] || with s = pi t/tau, via a Pade matrix
/// exponential of the Kronecker-built Hamiltonian.
double correlation_by_expm(const CouplingGraph& g, int j, int k, double t) {
  const int n = g.qubit_count();
  const Eigen::MatrixXcd h = oracle::kron_sum(hamiltonian(g));
  const Eigen::MatrixXcd u = (Complex(0, kPi * t) * h).exp();
  const Eigen::MatrixXcd zj = oracle::kron_pauli(PauliString::z(j), n);
  const Eigen::MatrixXcd zk = oracle::kron_pauli(PauliString::z(k), n);
  const Eigen::MatrixXcd a = u * zj * u.adjoint();
  return normalized_frobenius(a * zk - zk * a);
}

CouplingGraph two_path_square() {
  return CouplingGraph(4, {{1, 2, 2.0}, {2, 3, 0.5}, {1, 4, 1.0}, {4, 3, 1.0}});
}

}  // namespace

TEST(Diagonalize, SingleQubit) {
  const auto s = diagonalize(build_chain(1, 1.0));
  ASSERT_EQ(s.eigenvalues.size(), 2);
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-14);
}

TEST(Diagonalize, TracelessTwoQubitChain) {
  const auto s = diagonalize(build_chain(2, 1.0));
  ASSERT_EQ(s.eigenvalues.size(), 4);
  EXPECT_NEAR(s.eigenvalues.sum(), 0.0, 1e-13);
}

TEST(Diagonalize, NineQubitReconstruction) {
  const auto g = build_chain(9, 1.0);
  const auto s = diagonalize(g);
  EXPECT_EQ(s.eigenvalues.size(), 512);
  EXPECT_LT(s.reconstruction_residual(dense_hamiltonian(g)), 1e-10);
}

TEST(Diagonalize, RefusesOverLimit) {
  try {
    diagonalize(build_chain(6, 1.0), 5);
    FAIL() << "expected LimitExceeded";
  } catch (const LimitExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("dense limit of 5"), std::string::npos);
  }
}

TEST(CorrelationExact, SingleQubitClosedForm) {
  std::vector<double> times;
  for (int i = 0; i <= 400; ++i) times.push_back(i * 0.005);
  const auto c = correlation_exact(build_chain(1, 1.0), 1, 1, times);
  EXPECT_EQ(c.engine, Engine::exact);
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_NEAR(c.values[i], 2.0 * std::abs(std::sin(2 * kPi * times[i])), 1e-10) << times[i];
  }
}

TEST(CorrelationExact, ZeroAtTimeZero) {
  const auto g = build_chain(5, 2.0);
  for (int k = 2; k <= 5; ++k) EXPECT_EQ(correlation_exact(g, 1, k, {0.0}).values[0], 0.0);
}

TEST(CorrelationExact, MatchesMatrixExponentialOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    const auto g = oracle::random_connected_graph(3 + trial % 3, rng);
    const std::vector<double> times{0.03, 0.2, 0.7, 1.9};
    const int k = g.qubit_count();
    const auto c = correlation_exact(g, 1, k, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      EXPECT_NEAR(c.values[i], correlation_by_expm(g, 1, k, times[i]), 1e-10);
    }
  }
}

TEST(CorrelationExact, RejectsBadInput) {
  const auto g = build_chain(3, 1.0);
  EXPECT_THROW(correlation_exact(g, 1, 4, {0.1}), DimensionError);
  EXPECT_THROW(correlation_exact(g, 1, 2, {0.2, 0.1}), InvalidArgument);
  EXPECT_THROW(correlation_exact(g, 1, 2, {-0.1}), InvalidArgument);
}

TEST(CorrelationExactProperties, BoundSymmetryUnitarity) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 5;
    const auto g = oracle::random_connected_graph(n, rng);
    const auto spectrum = diagonalize(g);
    std::uniform_int_distribution<int> pick(1, n);
    const int j = pick(rng), k = pick(rng);
    std::vector<double> times;
    for (int i = 0; i < 25; ++i) times.push_back(0.13 * i);
    const auto jk = correlation_exact(spectrum, j, k, times);
    const auto kj = correlation_exact(spectrum, k, j, times);
    HeisenbergEvolution evo(spectrum, j);
    for (std::size_t i = 0; i < times.size(); ++i) {
      EXPECT_LE(jk.values[i], 2.0 + 1e-12);
      EXPECT_NEAR(jk.values[i], kj.values[i], 1e-12);
      EXPECT_NEAR(normalized_frobenius(evo.operator_at(times[i])), 1.0, 1e-12);
    }
  }
}

TEST(CorrelationSeries, NearestNeighbourLeadingOrder) {
  const auto g = build_chain(9, 1.0);
  const double t = 0.01;
  const auto r = correlation_series(g, 1, 2, t, 3);
  // Only the n = 3 term survives up to third order: (2^3/3!) pi^3 (Delta/gamma) t^3.
  EXPECT_NEAR(r.value, 8.0 / 6.0 * std::pow(kPi, 3) * std::pow(t, 3), 1e-12 * r.value);
  const auto higher = correlation_series(g, 1, 2, t, 9);
  EXPECT_NEAR(higher.value / r.value, 1.0, 1e-3);
}

TEST(CorrelationSeries, BelowLeadingOrderIsZero) {
  const auto g = build_chain(5, 1.0);
  const auto r = correlation_series(g, 1, 3, 0.1, 4);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.last_order_norm, 0.0);
}

TEST(CorrelationSeries, MatchesDenseEngineOnRandomGraphs) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = oracle::random_connected_graph(4, rng);
    std::uniform_int_distribution<int> pick(1, 4);
    const int j = pick(rng), k = pick(rng);
    const auto r = correlation_series(g, j, k, 0.05, 12);
    EXPECT_NEAR(r.value, correlation_exact(g, j, k, {0.05}).values[0], 1e-8);
  }
}

TEST(CorrelationSeries, TermCapIsEnforced) {
  SeriesOptions opts;
  opts.max_terms = 10;
  EXPECT_THROW(correlation_series(build_lattice({2, 1, 1.0}).graph(), 1, 9, 0.1, 8, opts), LimitExceeded);
  EXPECT_THROW(correlation_series(build_chain(3, 1.0), 1, 2, 0.1, 0), InvalidArgument);
}

TEST(CorrelationSeries, ConvergenceFlag) {
  const auto g = build_chain(3, 1.0);
  EXPECT_TRUE(correlation_series(g, 1, 3, 0.02, 15).converged);
  EXPECT_FALSE(correlation_series(g, 1, 3, 0.6, 6).converged);
}

TEST(CorrelationSeriesProperties, AgreesWithExactWithinDiagnostic) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 5;
    const auto g = oracle::random_connected_graph(n, rng);
    std::uniform_int_distribution<int> pick(1, n);
    const int j = pick(rng), k = pick(rng);
    const SeriesExpansion series(g, j, k, 30);
    const auto spectrum = diagonalize(g);
    HeisenbergEvolution evo(spectrum, j);
    for (double t : {0.01, 0.05, 0.1, 0.2}) {
      const auto r = series.evaluate(t);
      EXPECT_NEAR(r.value, evo.correlation(k, t), std::max(10 * r.last_order_norm, 1e-12)) << "t=" << t;
    }
  }
}

TEST(CorrelationSeriesProperties, LowerOrdersVanishAndLeadingIsOdd) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const auto g = oracle::random_connected_graph(n, rng);
    std::uniform_int_distribution<int> pick(1, n);
    const int j = pick(rng);
    int k = pick(rng);
    if (k == j) k = j % n + 1;
    const int leading = 2 * min_path_summary(g, j, k).length() + 1;
    const SeriesExpansion series(g, j, k, leading);
    for (int order = 1; order < leading; ++order) EXPECT_TRUE(series.coefficient(order).empty());
    EXPECT_FALSE(series.coefficient(leading).empty());
    EXPECT_EQ(leading % 2, 1);
  }
}

TEST(LeadingTerm, SelfCorrelation) {
  const auto lt = leading_term(build_chain(4, 1.0), 1, 1);
  ASSERT_TRUE(lt);
  EXPECT_EQ(lt->order, 1);
  EXPECT_NEAR(lt->prefactor(), 4 * kPi, 1e-12);
  ASSERT_EQ(lt->support().size(), 1u);
  EXPECT_EQ(lt->support()[0], PauliString::x(1));
}

TEST(LeadingTerm, ThirdQubitOfChain) {
  const double d = 1.7;
  const auto lt = leading_term(build_chain(5, d), 1, 3);
  ASSERT_TRUE(lt);
  EXPECT_EQ(lt->order, 5);
  EXPECT_NEAR(lt->prefactor(), 16 * std::pow(kPi, 5) / 120 * d * d, 1e-12 * lt->prefactor());
  ASSERT_EQ(lt->support().size(), 1u);
  EXPECT_EQ(lt->support()[0], PauliString::parse("XXXII"));
  // 2^5 G^(5) = 2^5 (-2i)^6 (-1/2)^2 Delta^2 X1X2X3 = 512 Delta^2 X1X2X3 with a single monomial.
  ASSERT_EQ(lt->scaled_generator.size(), 1u);
  const auto& [key, coef] = *lt->scaled_generator.terms().begin();
  EXPECT_EQ(key.monomial.degree(), 2);
  EXPECT_EQ(coef.re * coef.re + coef.im * coef.im, static_cast<__int128>(512) * 512);
}

TEST(LeadingTerm, TwoPathSquareMatchesPathSum) {
  const auto g = two_path_square();
  const auto lt = leading_term(g, 1, 3);
  ASSERT_TRUE(lt);
  EXPECT_EQ(lt->order, 5);
  EXPECT_EQ(lt->support().size(), 2u);
  const double expected = std::log(16 * std::pow(kPi, 5) / 120 * std::sqrt(2.0));
  EXPECT_NEAR(lt->log_prefactor(), expected, 1e-12);
}

TEST(LeadingTerm, UnreachableHasNoLeadingOrder) {
  const CouplingGraph g(4, {{1, 2, 1.0}, {3, 4, 1.0}});
  EXPECT_FALSE(leading_term(g, 1, 3));
}

TEST(LeadingTermProperties, OrderIsTwoLPlusOneAndPrefactorMatchesPathSum) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 2 + trial % 7;
    const auto g = oracle::random_connected_graph(n, rng, 0.25);
    std::uniform_int_distribution<int> pick(1, n);
    const int j = pick(rng), k = pick(rng);
    const auto s = min_path_summary(g, j, k);
    const auto lt = leading_term(g, j, k);
    ASSERT_TRUE(lt);
    EXPECT_EQ(lt->order, 2 * s.length() + 1);
    const double analytic = general_correlation(s, 1.0)->log_magnitude();  // prefactor at t/tau = 1
    EXPECT_NEAR(lt->log_prefactor(), analytic, 1e-12 * std::max(1.0, std::abs(analytic)));
  }
}
