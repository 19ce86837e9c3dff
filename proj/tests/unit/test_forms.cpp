#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sympwidth/bodies.hpp"
#include "sympwidth/forms.hpp"

using namespace sympwidth;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST(ClosedForms, SymplecticEllipsoidMeanWidth) {
  EXPECT_DOUBLE_EQ(mw_symplectic_ellipsoid2(1.0, 1.0), 2.0);
  EXPECT_NEAR(mw_symplectic_ellipsoid2(1.0, 2.0), 28.0 / 9.0, 1e-15);
  EXPECT_DOUBLE_EQ(mw_symplectic_ellipsoid2(1.0, 2.0), mw_symplectic_ellipsoid2(2.0, 1.0));
  const QuadratureRule rule = hopf_rule(2, 32, 8);
  EXPECT_NEAR(mean_width(Body::symplectic_ellipsoid(vec2(0.7, 2.3)), rule),
              mw_symplectic_ellipsoid2(0.7, 2.3), 1e-10);
}

TEST(ClosedForms, UnitBallVolumes) {
  constexpr double pi = std::numbers::pi;
  EXPECT_NEAR(unit_ball_volume(1), 2.0, 1e-15);
  EXPECT_NEAR(unit_ball_volume(2), pi, 1e-15);
  EXPECT_NEAR(unit_ball_volume(3), 4.0 * pi / 3.0, 1e-14);
  EXPECT_NEAR(unit_ball_volume(4), pi * pi / 2.0, 1e-14);
}

TEST(ClosedForms, PolydiskProductFormula) {
  const QuadratureRule rule = hopf_rule(2, 16, 32);
  EXPECT_NEAR(mw_polydisk(vec2(1.0, 1.0)), 8.0 / 3.0, 1e-14);
  EXPECT_NEAR(mw_polydisk(vec2(1.0, 2.0)), mean_width(Body::polydisk(vec2(1.0, 2.0)), rule), 1e-12);
  Vec r3(3);
  r3 << 1.0, 0.5, 2.0;
  EXPECT_NEAR(mw_polydisk(r3), mean_width(Body::polydisk(r3), hopf_rule(3, 12, 16)), 1e-10);
}

TEST(ClosedForms, UnionOfConjugateEllipsoids) {
  EXPECT_NEAR(mw_union_conjugate_ellipsoids(1.5, 1.5), 3.0, 1e-12);
  EXPECT_NEAR(mw_union_conjugate_ellipsoids(2.0, 1.0), mw_union_conjugate_ellipsoids(1.0, 2.0), 1e-15);
  const double x1 = mw_union_conjugate_ellipsoids(std::sqrt(2.0), std::sqrt(2.0 / (std::numbers::pi - 1.0)));
  EXPECT_NEAR(x1, 2.63062, 1e-5);
  const Body u = Body::union_of({Body::symplectic_ellipsoid(vec2(2.0, 1.0)),
                                 Body::symplectic_ellipsoid(vec2(1.0, 2.0))});
  EXPECT_NEAR(mean_width(u, hopf_rule(2, 128, 4)), mw_union_conjugate_ellipsoids(2.0, 1.0), 1e-4);
}

TEST(MspEllipsoid, UsesWilliamsonRadii) {
  const QuadratureRule rule = hopf_rule(2, 16, 8);
  Mat form = Mat::Zero(4, 4);
  form.diagonal() << 1.0, 1.0 / 16.0, 1.0 / 16.0, 1.0;
  EXPECT_NEAR(msp_ellipsoid(form, rule), 4.0, 1e-12);
  Mat ball = Mat::Identity(6, 6);
  EXPECT_NEAR(msp_ellipsoid(ball, hopf_rule(3, 8, 8)), 2.0, 1e-10);
}

TEST(ClosedForms, SmallExamples) {
  Vec one(1);
  one << 1.0;
  EXPECT_NEAR(mw_polydisk(one), 2.0, 1e-14);
  EXPECT_NEAR(mw_union_conjugate_ellipsoids(2.0, 1.0), (8.0 / 9.0) * (8.0 - std::pow(2.5, 1.5)), 1e-12);
  const QuadratureRule rule = hopf_rule(2, 16, 8);
  Mat e12 = Mat::Zero(4, 4);
  e12.diagonal() << 1.0, 0.25, 1.0, 0.25;
  EXPECT_NEAR(msp_ellipsoid(e12, rule), 28.0 / 9.0, 1e-12);
  EXPECT_NEAR(msp_ellipsoid(Mat::Identity(4, 4), rule), 2.0, 1e-12);
}

TEST(ClosedForms, PolydiskScalesLinearly) {
  const Vec r = vec2(0.7, 1.9);
  for (double c : {0.5, 2.0, 3.0}) EXPECT_DOUBLE_EQ(mw_polydisk(c * r), c * mw_polydisk(r));
}

TEST(MspEllipsoid, NeverExceedsTheMeanWidth) {
  const QuadratureRule rule = hopf_rule(2, 32, 64);
  const double axes[][4] = {{1, 2, 2, 1}, {1, 1, 4, 4}, {0.5, 3, 1, 2}, {2, 1, 0.4, 1.5}};
  for (const auto& ax : axes) {
    const Vec a = vec2(ax[0], ax[1]), b = vec2(ax[2], ax[3]);
    Vec diag(4);
    diag << a.cwiseInverse().cwiseAbs2(), b.cwiseInverse().cwiseAbs2();
    const double msp = msp_ellipsoid(Mat(diag.asDiagonal()), rule);
    EXPECT_LE(msp, mean_width(Body::ellipsoid(a, b), rule) + 1e-6);
  }
}
