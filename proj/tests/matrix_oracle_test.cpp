#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "support/generators.hpp"
#include "wco/matrix_oracle.hpp"

using namespace wco;

namespace {

WeightedSystem make(std::vector<double> masses, std::vector<Index> phi, std::vector<double> u) {
  return WeightedSystem(DiscreteMeasureSpace(std::move(masses)), Transformation(std::move(phi)),
                        WeightFunction(std::move(u)));
}

OperatorMatrix diag(std::vector<double> d) {
  OperatorMatrix a;
  a.entries = Eigen::MatrixXd::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) a.entries(i, i) = d[i];
  return a;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(BuildMatrix, IdentityMapGivesDiagonal) {
  const auto a = build_matrix(make({1, 1}, {0, 1}, {2, 3}));
  Eigen::Matrix2d expected;
  expected << 2, 0, 0, 3;
  EXPECT_EQ(a.entries, Eigen::MatrixXd(expected));
}

TEST(BuildMatrix, ConstantMap) {
  const auto a = build_matrix(make({1, 1}, {0, 0}, {1, 1}));
  Eigen::Matrix2d expected;
  expected << 1, 0, 1, 0;
  EXPECT_EQ(a.entries, Eigen::MatrixXd(expected));
}

TEST(BuildMatrix, MassScaling) {
  // A(0,1) = u(0) sqrt(m_0 / m_1) = sqrt(4 / 1); A(1,0) = sqrt(1 / 4)
  const auto a = build_matrix(make({4, 1}, {1, 0}, {1, 1}));
  EXPECT_DOUBLE_EQ(a.entries(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(a.entries(1, 0), 0.5);
  EXPECT_EQ(a.entries(0, 0), 0.0);
  EXPECT_EQ(a.entries(1, 1), 0.0);
}

TEST(BuildMatrix, CapIsEnforced) {
  const WeightedSystem big(DiscreteMeasureSpace::unit(65), Transformation::identity(65), WeightFunction::constant(65, 1));
  EXPECT_THROW(build_matrix(big), InputError);
  EXPECT_NO_THROW(build_matrix(big, 65));
}

TEST(DefectOperator, IdentityVanishes) {
  for (unsigned m = 1; m <= 5; ++m) EXPECT_EQ(max_abs(defect_operator(diag({1, 1, 1}), m).b_m), 0.0);
}

TEST(DefectOperator, DiagonalScalar) {
  const double c = 1.5;
  for (unsigned m = 1; m <= 5; ++m) {
    const auto d = defect_operator(diag({c, c}), m);
    const Eigen::MatrixXd expected = std::pow(c * c - 1, m) * Eigen::MatrixXd::Identity(2, 2);
    EXPECT_LT(max_abs(d.b_m - expected), 1e-12);
  }
}

TEST(DefectOperator, ZeroWeight) {
  const auto a = build_matrix(make({1, 2, 3}, {1, 2, 0}, {0, 0, 0}));
  for (unsigned m = 1; m <= 5; ++m) {
    const auto d = defect_operator(a, m);
    const Eigen::MatrixXd expected = (m % 2 ? -1.0 : 1.0) * Eigen::MatrixXd::Identity(3, 3);
    EXPECT_EQ(max_abs(d.b_m - expected), 0.0);
    EXPECT_EQ(max_abs(d.quasi), 0.0);
  }
}

TEST(DefectOperator, DiagonalMatchesClassifierDefects) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = testkit::random_system(rng);
    const auto a = build_matrix(s);
    for (unsigned m = 1; m <= 4; ++m) {
      const auto ops = defect_operator(a, m);
      const auto d = defect_sums(j_recursive(s, m + 1), m);
      for (Index p = 0; p < s.size(); ++p) {
        const double scale = std::max(1.0, std::abs(d.g0[p]));
        ASSERT_NEAR(ops.b_m(p, p), d.g0[p], 1e-10 * scale);
        ASSERT_NEAR(ops.quasi(p, p), d.g[p], 1e-10 * std::max(1.0, std::abs(d.g[p])));
      }
      ASSERT_LE(off_diagonal_max(ops.b_m), 1e-10 * std::max(1.0, max_abs(ops.b_m)));
      ASSERT_LE(off_diagonal_max(ops.quasi), 1e-10 * std::max(1.0, max_abs(ops.quasi)));
    }
  }
}

TEST(PowerGram, ZeroPowerIsIdentity) {
  const auto a = build_matrix(make({1, 2}, {1, 1}, {0.3, 0.7}));
  EXPECT_EQ(power_gram(a, 0), Eigen::MatrixXd::Identity(2, 2));
}

TEST(PowerGram, FirstPowerIsDiagonalJ1) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testkit::random_system(rng);
    const auto g = power_gram(build_matrix(s), 1);
    const auto j1 = j_direct(s, 1);
    ASSERT_LE(off_diagonal_max(g), 1e-12);
    for (Index p = 0; p < s.size(); ++p) ASSERT_NEAR(g(p, p), j1[p], 1e-12 * std::max(1.0, j1[p]));
  }
}

TEST(PowerGram, SixPointFourthPower) {
  std::mt19937_64 rng(53);
  const auto s = testkit::random_system(rng, {6, 6, 0.1, 10.0, 0.0, 2.0});
  const auto g = power_gram(build_matrix(s), 4);
  const auto j4 = testkit::path_sum_j(s, 4);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(6, 6);
  for (Index p = 0; p < 6; ++p) expected(p, p) = j4[p];
  EXPECT_LE(max_abs(g - expected), 1e-10 * std::max(1.0, max_abs(expected)));
}

TEST(Normality, Cases) {
  EXPECT_TRUE(normality_check(diag({0.3, -2, 7})).normal);
  const auto constant = normality_check(build_matrix(make({1, 1}, {0, 0}, {1, 1})));
  EXPECT_FALSE(constant.normal);
  EXPECT_DOUBLE_EQ(constant.residual, 1.0);
  EXPECT_TRUE(normality_check(build_matrix(make({1, 1, 1, 1}, {3, 0, 1, 2}, {1, 1, 1, 1}))).normal);
}

TEST(Spectrum, DiagonalZeroOne) {
  const auto r = spectrum_eigen(diag({1, 0}));
  ASSERT_EQ(r.eigenvalues.size(), 2u);
  EXPECT_TRUE(r.normal);
  std::vector<double> re{r.eigenvalues[0].real(), r.eigenvalues[1].real()};
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], 0.0, 1e-15);
  EXPECT_NEAR(re[1], 1.0, 1e-15);
}

TEST(Spectrum, ThreeCycleRootsOfUnity) {
  const auto r = spectrum_eigen(build_matrix(make({1, 1, 1}, {1, 2, 0}, {1, 1, 1})));
  ASSERT_EQ(r.eigenvalues.size(), 3u);
  for (const auto& z : r.eigenvalues) {
    EXPECT_NEAR(std::abs(z), 1.0, 1e-12);
    EXPECT_LT(std::abs(z * z * z - 1.0), 1e-12);
  }
  double arg_sum = 0;
  for (const auto& z : r.eigenvalues) arg_sum += std::abs(std::arg(z));
  EXPECT_NEAR(arg_sum, 4 * std::numbers::pi / 3, 1e-12);
  EXPECT_LT(r.gram_modulus_mismatch, 1e-12);
}

TEST(Spectrum, NormalZeroOneWeights) {
  const auto a = build_matrix(make({1, 1, 1}, {1, 0, 2}, {1, 1, 0}));
  ASSERT_TRUE(normality_check(a).normal);
  for (const auto& z : spectrum_eigen(a).eigenvalues) {
    const double r = std::abs(z);
    EXPECT_TRUE(std::abs(r) < 1e-8 || std::abs(r - 1) < 1e-8) << r;
  }
}

TEST(Hyponormality, Cases) {
  EXPECT_TRUE(p_hyponormality_check(diag({2, 0.5}), 1).holds);
  EXPECT_TRUE(p_hyponormality_check(diag({2, 0.5}), 0.5).holds);
  const auto cycle = build_matrix(make({1, 3, 2}, {1, 2, 0}, {std::sqrt(3.0), std::sqrt(2.0 / 3), std::sqrt(0.5)}));
  ASSERT_TRUE(normality_check(cycle).normal);
  for (double p : {0.25, 0.5, 1.0, 2.0}) EXPECT_TRUE(p_hyponormality_check(cycle, p).holds);
  // diag(2,0) - [[1,1],[1,1]] = [[1,-1],[-1,-1]] has eigenvalues +- sqrt 2
  const auto r = p_hyponormality_check(build_matrix(make({1, 1}, {0, 0}, {1, 1})), 1);
  EXPECT_FALSE(r.holds);
  EXPECT_NEAR(r.min_eigenvalue, -std::sqrt(2.0), 1e-12);
  EXPECT_THROW(p_hyponormality_check(diag({1}), 0), InputError);
}

TEST(Adjoint, InnerProductIdentity) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = testkit::random_system(rng);
    const auto a = build_matrix(s);
    const Index n = s.size();
    const auto xs = testkit::random_reals(rng, n, -1, 1);
    const auto ys = testkit::random_reals(rng, n, -1, 1);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xs.data(), n);
    const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ys.data(), n);
    const double lhs = (a.entries * x).dot(y);
    const double rhs = x.dot(a.adjoint() * y);
    ASSERT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(Adjoint, MatchesWeightedOperatorAction) {
  // (W f)(x) = u(x) f(phi x) on plain functions; A acts on coordinates f_j sqrt(m_j).
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testkit::random_system(rng);
    const auto a = build_matrix(s);
    const Index n = s.size();
    const auto f = testkit::random_reals(rng, n, -1, 1);
    Eigen::VectorXd coords(n);
    for (Index j = 0; j < n; ++j) coords[j] = f[j] * std::sqrt(s.space.mass(j));
    const Eigen::VectorXd image = a.entries * coords;
    for (Index i = 0; i < n; ++i) {
      const double wf = s.u(i) * f[s.phi(i)];
      ASSERT_NEAR(image[i], wf * std::sqrt(s.space.mass(i)), 1e-12 * std::max(1.0, std::abs(image[i])));
    }
  }
}

TEST(OracleClassify, HandCases) {
  const auto v = oracle_classify(build_matrix(make({1, 1}, {0, 0}, {1, 1})), 2);
  EXPECT_FALSE(v.is_isometry());
  EXPECT_TRUE(v.is_quasi_isometry());
  EXPECT_FALSE(v.is_m_isometry());
  EXPECT_TRUE(v.is_quasi_m_isometry());
  EXPECT_TRUE(oracle_classify(diag({1, 1}), 3).is_m_isometry());
}

TEST(OracleClassify, AgreesWithClosedForm) {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = trial % 2 ? testkit::random_system(rng) : testkit::structured_system(rng);
    const auto a = build_matrix(s);
    for (unsigned m = 1; m <= 4; ++m) ASSERT_TRUE(classify(s, m).same_classes(oracle_classify(a, m))) << trial;
  }
}

TEST(HermitianReport, ResidualAndEigenvalues) {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const auto r = hermitian_report("x", m, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_EQ(r.label, "x");
  EXPECT_DOUBLE_EQ(r.max_abs_residual, 1.0);
  ASSERT_EQ(r.eigenvalues.size(), 2u);
  EXPECT_NEAR(r.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(r.eigenvalues[1], 3.0, 1e-14);
}
