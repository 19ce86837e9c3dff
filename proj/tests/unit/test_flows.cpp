#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sympwidth/flows.hpp"

using namespace sympwidth;

namespace {

Vec random_point(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  Vec z(dim);
  for (int i = 0; i < dim; ++i) z[i] = normal(gen);
  return z;
}

// Central differences of the value, for checking gradients.
Vec fd_gradient(const HamiltonianSystem& sys, const Vec& z) {
  Vec g(z.size());
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    Vec p = z, m = z;
    p[i] += h;
    m[i] -= h;
    g[i] = (sys.value(p) - sys.value(m)) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST(Hamiltonian, VectorFieldOfX1Y1) {
  const HamiltonianSystem h = HamiltonianSystem::preset("x1y1", 2);
  Vec z(4);
  z << 1.0, 2.0, 3.0, 4.0;
  const Vec f = hamiltonian_vector_field(h, z);
  EXPECT_DOUBLE_EQ(f[0], 1.0);
  EXPECT_DOUBLE_EQ(f[1], 0.0);
  EXPECT_DOUBLE_EQ(f[2], -3.0);
  EXPECT_DOUBLE_EQ(f[3], 0.0);
}

TEST(Hamiltonian, TrigGradientsMatchFiniteDifferences) {
  std::mt19937_64 gen(5);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const HamiltonianSystem h = HamiltonianSystem::random_hopf_trig(2, 4, seed);
    for (int trial = 0; trial < 5; ++trial) {
      const Vec z = random_point(4, gen);
      EXPECT_LT((h.gradient(z) - fd_gradient(h, z)).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
}

TEST(Hamiltonian, RandomTrigIsQuadraticallyHomogeneous) {
  std::mt19937_64 gen(6);
  const HamiltonianSystem h = HamiltonianSystem::random_hopf_trig(3, 5, 9);
  const Vec z = random_point(6, gen);
  EXPECT_NEAR(h.value(2.0 * z), 4.0 * h.value(z), 1e-11 * std::max(1.0, std::abs(h.value(z))));
}

TEST(Hamiltonian, RejectsUnknownPresets) {
  EXPECT_THROW(HamiltonianSystem::preset("nope", 2), std::invalid_argument);
  EXPECT_THROW(HamiltonianSystem::preset("r2cos", 2), std::invalid_argument);
}

TEST(Flow, X1Y1IsAHyperbolicScaling) {
  const HamiltonianSystem h = HamiltonianSystem::preset("x1y1", 1);
  Eigen::MatrixXd pts(2, 1);
  pts << 1.0, 1.0;
  const FlowedBoundary out = flow(h, pts, 0.5, 200);
  EXPECT_NEAR(out.points(0, 0), std::exp(0.5), 1e-10);
  EXPECT_NEAR(out.points(1, 0), std::exp(-0.5), 1e-10);
  EXPECT_EQ(out.step_count, 200);
}

TEST(Flow, OscillatorReturnsAfterAPeriod) {
  const HamiltonianSystem h = HamiltonianSystem::preset("oscillator", 2);
  std::mt19937_64 gen(7);
  Eigen::MatrixXd pts(4, 3);
  for (int c = 0; c < 3; ++c) pts.col(c) = random_point(4, gen);
  const FlowedBoundary out = flow(h, pts, 2.0 * std::numbers::pi, 2000);
  EXPECT_LT((out.points - pts).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_EQ(default_flow_steps(0.01), 200);
  EXPECT_EQ(default_flow_steps(3.0), 600);
}

TEST(Variation, RotationsLeaveTheBallFixed) {
  // A rotation by one angular grid step maps the boundary cloud onto itself.
  const QuadratureRule rule = hopf_rule(2, 6, 12);
  const Body ball = Body::ball(2);
  EXPECT_NEAR(flowed_mean_width(ball, HamiltonianSystem::preset("oscillator", 2),
                                std::numbers::pi / 6.0, rule, 12, 400),
              mean_width(ball, rule), 1e-8);
}

TEST(Variation, FirstVariationVanishesOnAToricBody) {
  Vec r(2);
  r << 1.0, 2.0;
  const QuadratureRule rule = hopf_rule(2, 6, 12);
  const double v = first_variation(Body::symplectic_ellipsoid(r),
                                   HamiltonianSystem::random_hopf_trig(2, 3, 1), 1e-3, rule);
  EXPECT_LT(std::abs(v), 5e-4);
}

TEST(DiskSecondVariation, MatchesTheSpectralFormula) {
  // Q(cos k t) = k^4 - k^2.
  for (int k = 0; k <= 5; ++k) {
    const double q = disk_second_variation([k](double t) { return std::cos(k * t); }, 64);
    EXPECT_NEAR(q, std::pow(k, 4) - std::pow(k, 2), 1e-9) << "k=" << k;
  }
  EXPECT_NEAR(disk_second_variation([](double t) { return std::sin(3.0 * t); }, 64), 72.0, 1e-9);
}

TEST(Flow, LinearHamiltonianTranslates) {
  const HamiltonianSystem h = HamiltonianSystem::cartesian(2, {Monomial{{1, 0, 0, 0}, 1.0}});
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(4, 1);
  const FlowedBoundary out = flow(h, pts, 0.5, 10);
  EXPECT_NEAR(out.points(2, 0), -0.5, 1e-14);
  EXPECT_NEAR(out.points(0, 0), 0.0, 1e-14);
  EXPECT_EQ(flow(h, pts, 0.0, 10).points, pts);
}

TEST(Flow, X1Y1ExactSolution) {
  const HamiltonianSystem h = HamiltonianSystem::preset("x1y1", 2);
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(4, 1);
  pts(0, 0) = 1.0;
  const FlowedBoundary out = flow(h, pts, 1.0, default_flow_steps(1.0));
  EXPECT_NEAR(out.points(0, 0), std::exp(1.0), 1e-9);
}

TEST(Variation, FlowedMeanWidthExamples) {
  Vec r(2);
  r << 1.0, 2.0;
  const Body e = Body::symplectic_ellipsoid(r);
  const QuadratureRule rule = hopf_rule(2, 8, 16);
  const HamiltonianSystem torus = HamiltonianSystem::preset("oscillator", 2);
  EXPECT_NEAR(flowed_mean_width(e, torus, 0.0, rule, 16, 200), mean_width(e, rule), 1e-5);
  // Torus rotation by one angular step leaves a toric body and its cloud fixed.
  EXPECT_NEAR(flowed_mean_width(e, torus, std::numbers::pi / 8.0, rule, 16, 400), mean_width(e, rule), 1e-8);
  Vec a(2), b(2);
  a << 1.0, 2.0;
  b << 2.0, 1.0;
  const Body skew = Body::ellipsoid(a, b);
  const QuadratureRule fine = hopf_rule(2, 12, 24);
  const HamiltonianSystem hyp = HamiltonianSystem::preset("x1y1", 2);
  EXPECT_LT(flowed_mean_width(skew, hyp, 0.05, fine, 24, 200), flowed_mean_width(skew, hyp, 0.0, fine, 24, 200));
}

TEST(Variation, DiskSecondVariationByFiniteDifferences) {
  const QuadratureRule rule = hopf_rule(1, 2, 8192);
  const Body disk = Body::ball(1);
  EXPECT_NEAR(first_variation(disk, HamiltonianSystem::preset("r2cos", 1), 1e-3, rule), 0.0, 5e-4);
  EXPECT_NEAR(second_variation_fd(disk, HamiltonianSystem::preset("r2cos", 1), 1e-2, rule), 0.0, 2e-3);
  const HamiltonianSystem minus_cos = HamiltonianSystem::hopf_trig(1, {TrigTerm{{1}, {}, -1.0, false}});
  EXPECT_NEAR(second_variation_fd(disk, minus_cos, 1e-2, rule), 0.0, 2e-3);
  const HamiltonianSystem cos2 = HamiltonianSystem::hopf_trig(1, {TrigTerm{{2}, {}, 1.0, false}});
  EXPECT_NEAR(second_variation_fd(disk, cos2, 1e-2, rule), 12.0, 5e-2);
}

TEST(Flow, JacobianIsSymplecticForPolynomialHamiltonians) {
  const int n = 2;
  const std::vector<HamiltonianSystem> systems = {
      HamiltonianSystem::cartesian(n, {{{1, 0, 0, 0}, 1.0}, {{0, 0, 0, 1}, -0.5}}),
      HamiltonianSystem::preset("x1y1", n), HamiltonianSystem::preset("oscillator", n),
      HamiltonianSystem::cartesian(n, {{{2, 0, 0, 0}, 0.3}, {{0, 1, 1, 0}, 0.7}, {{0, 0, 0, 2}, -0.2}})};
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Mat::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  std::mt19937_64 gen(21);
  const double h = 1e-5;
  for (const HamiltonianSystem& sys : systems) {
    for (int sample = 0; sample < 4; ++sample) {
      const Vec z = random_point(2 * n, gen);
      Eigen::MatrixXd points(2 * n, 4 * n);
      for (int i = 0; i < 2 * n; ++i) {
        points.col(2 * i) = z + h * Vec::Unit(2 * n, i);
        points.col(2 * i + 1) = z - h * Vec::Unit(2 * n, i);
      }
      const Eigen::MatrixXd moved = flow(sys, points, 0.5, default_flow_steps(0.5)).points;
      Mat jac(2 * n, 2 * n);
      for (int i = 0; i < 2 * n; ++i) jac.col(i) = (moved.col(2 * i) - moved.col(2 * i + 1)) / (2 * h);
      EXPECT_LT((jac.transpose() * j * jac - j).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
}
