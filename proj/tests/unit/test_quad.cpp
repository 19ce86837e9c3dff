#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "sympwidth/quad.hpp"

using namespace sympwidth;

TEST(HopfRule, NodesAreUnitVectorsAndWeightsSumToOne) {
  for (int n = 1; n <= 3; ++n) {
    const QuadratureRule rule = hopf_rule(n, 4, 8);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      EXPECT_NEAR(rule.node(i).norm(), 1.0, 1e-12);
      EXPECT_GT(rule.weight(i), 0.0);
      total += rule.weight(i);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_EQ(rule.ambient_dim(), 2 * n);
  }
}

TEST(HopfRule, ReproducesSphereMoments) {
  // E[x^2] = 1/d and E[x^4] = 3/(d(d+2)) on S^{d-1}.
  for (int n = 1; n <= 3; ++n) {
    const QuadratureRule rule = hopf_rule(n, 12, 16);
    const double d = 2.0 * n;
    EXPECT_NEAR(integrate(rule, [](const Vec& u) { return u[0] * u[0]; }), 1.0 / d, 1e-10);
    EXPECT_NEAR(integrate(rule, [](const Vec& u) { return std::pow(u[0], 4); }),
                3.0 / (d * (d + 2.0)), 1e-10);
    EXPECT_NEAR(integrate(rule, [n](const Vec& u) { return u[0] * u[n]; }), 0.0, 1e-14);
  }
}

TEST(HopfRule, RejectsOddOrTinyAngularCounts) {
  EXPECT_THROW(hopf_rule(2, 4, 7), std::invalid_argument);
  EXPECT_THROW(hopf_rule(2, 4, 2), std::invalid_argument);
  EXPECT_THROW(hopf_rule(0, 4, 8), std::invalid_argument);
  EXPECT_THROW(hopf_rule(2, 0, 8), std::invalid_argument);
}

TEST(MonteCarloRule, IsSeededAndNormalised) {
  const QuadratureRule a = monte_carlo_rule(2, 5000, 42);
  const QuadratureRule b = monte_carlo_rule(2, 5000, 42);
  const QuadratureRule c = monte_carlo_rule(2, 5000, 43);
  ASSERT_EQ(a.size(), 5000u);
  EXPECT_EQ(a.nodes(), b.nodes());
  EXPECT_NE(a.nodes(), c.nodes());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.node(i).norm(), 1.0, 1e-12);
  EXPECT_NEAR(integrate(a, [](const Vec&) { return 1.0; }), 1.0, 1e-12);
  EXPECT_NEAR(integrate(a, [](const Vec& u) { return u[0] * u[0]; }), 0.25, 0.02);
  EXPECT_EQ(a.kind(), RuleKind::kMonteCarlo);
}

TEST(QuadratureRule, TransformedMapsEveryNode) {
  const QuadratureRule rule = hopf_rule(1, 2, 8);
  Mat m(2, 2);
  m << 2.0, 0.0, 0.0, 3.0;
  const QuadratureRule t = rule.transformed(m);
  ASSERT_EQ(t.size(), rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    EXPECT_DOUBLE_EQ(t.node(i)[0], 2.0 * rule.node(i)[0]);
    EXPECT_DOUBLE_EQ(t.node(i)[1], 3.0 * rule.node(i)[1]);
    EXPECT_EQ(t.weight(i), rule.weight(i));
  }
}

TEST(Integrate, ResultDoesNotDependOnThreadCount) {
  const QuadratureRule rule = hopf_rule(2, 16, 48);
  const auto f = [](const Vec& u) { return std::exp(u[0]) * std::cos(3.0 * u[3]); };
  const int saved = max_threads();
  set_max_threads(1);
  const double one = integrate(rule, f);
  set_max_threads(4);
  const double four = integrate(rule, f);
  set_max_threads(saved);
  EXPECT_EQ(one, four);
}

TEST(Integrate, MatrixIntegrandGivesIsotropicSecondMoment) {
  const QuadratureRule rule = hopf_rule(2, 6, 12);
  const Mat m = integrate_matrix(
      rule, [](const Vec& u) -> Mat { return u * u.transpose(); }, 4, 4);
  EXPECT_LT((m - 0.25 * Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  std::vector<double> nodes, weights;
  gauss_legendre_unit(6, nodes, weights);
  double moment = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) moment += weights[i] * std::pow(nodes[i], 11);
  EXPECT_NEAR(moment, 1.0 / 12.0, 1e-14);
}

TEST(HopfRule, ComplexComponentNormMoments) {
  const QuadratureRule rule = hopf_rule(2, 16, 8);
  EXPECT_NEAR(integrate(rule, [](const Vec& u) { return std::hypot(u[0], u[2]); }), 2.0 / 3.0, 1e-8);
  EXPECT_NEAR(integrate(rule,
                        [](const Vec& u) { return std::hypot(u[0], u[2]) + std::hypot(u[1], u[3]); }),
              4.0 / 3.0, 1e-8);
}

TEST(HopfRule, ClosedUnderAntipodes) {
  const QuadratureRule rule = hopf_rule(2, 3, 8);
  const Eigen::MatrixXd& nodes = rule.nodes();
  for (Eigen::Index i = 0; i < nodes.cols(); ++i) {
    bool found = false;
    for (Eigen::Index j = 0; j < nodes.cols() && !found; ++j)
      found = (nodes.col(i) + nodes.col(j)).norm() < 1e-12 &&
              std::abs(rule.weight(static_cast<std::size_t>(i)) - rule.weight(static_cast<std::size_t>(j))) < 1e-15;
    EXPECT_TRUE(found) << "node " << i;
  }
}

TEST(MonteCarloRule, LargeSampleSecondMoment) {
  const QuadratureRule mc = monte_carlo_rule(2, 1000000, 9);
  EXPECT_NEAR(integrate(mc, [](const Vec& u) { return u[0] * u[0]; }), 0.25, 5e-3);
}

TEST(HopfRule, BlockRotationsLeaveTheComplexNormIntegralFixed) {
  // Rotations inside each (x_j, y_j) plane and swaps of the planes.
  for (int n = 2; n <= 3; ++n) {
    const QuadratureRule rule = hopf_rule(n, 12, 16);
    const double base = integrate(rule, [n](const Vec& u) { return std::hypot(u[0], u[n]); });
    Mat rotation = Mat::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
      const int k = (j + 1) % n;
      const double phi = 0.3 + 0.9 * j;
      rotation(k, j) = std::cos(phi);
      rotation(k, n + j) = -std::sin(phi);
      rotation(n + k, j) = std::sin(phi);
      rotation(n + k, n + j) = std::cos(phi);
    }
    const double rotated = integrate(rule, [&](const Vec& u) {
      const Vec v = rotation * u;
      return std::hypot(v[0], v[n]);
    });
    EXPECT_NEAR(rotated, base, 1e-8) << "n=" << n;
  }
}

TEST(HopfRule, RotationsMixingThePlanesConverge) {
  // The kink of |z_1| is off the grid, so agreement improves with the rule.
  Mat mix = Mat::Identity(4, 4);
  const double c = std::cos(0.7), s = std::sin(0.7);
  mix(0, 0) = mix(2, 2) = c;
  mix(1, 1) = mix(3, 3) = c;
  mix(0, 1) = mix(2, 3) = -s;
  mix(1, 0) = mix(3, 2) = s;
  double previous = 1.0;
  for (int k : {16, 64}) {
    const QuadratureRule rule = hopf_rule(2, k, 2 * k);
    const double base = integrate(rule, [](const Vec& u) { return std::hypot(u[0], u[2]); });
    const double rotated = integrate(rule, [&](const Vec& u) {
      const Vec v = mix * u;
      return std::hypot(v[0], v[2]);
    });
    EXPECT_LT(std::abs(rotated - base), previous);
    previous = std::abs(rotated - base);
  }
  EXPECT_LT(previous, 1e-6);
}
