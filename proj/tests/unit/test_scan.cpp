#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sympwidth/forms.hpp"
#include "sympwidth/scan.hpp"

using namespace sympwidth;

TEST(EmbeddingCapacity, PiecewiseValuesAndContinuity) {
  EXPECT_DOUBLE_EQ(cb_ellipsoid(1.0), 1.0);
  EXPECT_DOUBLE_EQ(cb_ellipsoid(1.5), 1.5);
  EXPECT_DOUBLE_EQ(cb_ellipsoid(3.0), 2.0);
  EXPECT_DOUBLE_EQ(cb_ellipsoid(4.5), 2.25);
  EXPECT_DOUBLE_EQ(cb_ellipsoid(6.0), 2.5);
  EXPECT_DOUBLE_EQ(cb_ellipsoid(6.5), 2.6);
  for (double a : {2.0, 4.0, 5.0, 6.25})
    EXPECT_NEAR(cb_ellipsoid(a - 1e-12), cb_ellipsoid(a + 1e-12), 1e-11) << "a=" << a;
  EXPECT_THROW(cb_ellipsoid(0.9), std::invalid_argument);
  EXPECT_THROW(cb_ellipsoid(7.0), std::invalid_argument);
}

TEST(Staircase, RowsSatisfyTheChain) {
  std::vector<double> a;
  for (int k = 0; k <= 10; ++k) a.push_back(1.0 + 0.55 * k);
  const auto rows = staircase_table(a, hopf_rule(2, 8, 8), false);
  ASSERT_EQ(rows.size(), a.size());
  for (const auto& r : rows) {
    EXPECT_TRUE(r.urysohn);
    EXPECT_TRUE(r.strict_chain);
    EXPECT_DOUBLE_EQ(r.vol, std::sqrt(r.a));
    EXPECT_DOUBLE_EQ(r.msp_upper_sq_quarter, r.mw_sq_quarter);
  }
  EXPECT_DOUBLE_EQ(rows.front().mw_sq_quarter, 1.0);
}

TEST(Staircase, OptimizedUpperBoundMatchesClosedForm) {
  DescentOptions options;
  options.starts = 1;
  const auto rows = staircase_table({1.5}, hopf_rule(2, 16, 32), true, options);
  EXPECT_NEAR(rows[0].msp_upper_sq_quarter, rows[0].mw_sq_quarter, 1e-5);
}

TEST(RamosProfile, EndpointsAndConvexity) {
  const ToricProfile prof = ramos_profile(512);
  const auto& s = prof.curve_samples();
  EXPECT_NEAR(s.front().x(), 0.0, 1e-12);
  EXPECT_NEAR(s.front().y(), 2.0 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(s.back().x(), 2.0 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(s.back().y(), 0.0, 1e-12);
  EXPECT_TRUE(prof.tangent_polygon());
  EXPECT_THROW(ramos_profile(8), std::invalid_argument);
}

TEST(RamosCompare, ChainHoldsAndConverges) {
  const QuadratureRule rule = hopf_rule(2, 32, 4);
  const RamosComparison c = ramos_compare(rule, 1024);
  EXPECT_TRUE(c.chain_holds);
  EXPECT_NEAR(c.mw_x1, 2.63062, 1e-4);
  EXPECT_DOUBLE_EQ(c.mw_pl, 8.0 / 3.0);
  const double finer = mean_width(Body::toric(ramos_profile(2048)), rule);
  EXPECT_LT(std::abs(finer - c.mw_x0), 1e-5);
  EXPECT_LE(finer, c.mw_x0 + 1e-12);
}

TEST(Staircase, PointExamples) {
  const auto rows = staircase_table({1.0, 1.5, 4.0}, hopf_rule(2, 4, 4), false);
  EXPECT_DOUBLE_EQ(rows[0].vol, 1.0);
  EXPECT_DOUBLE_EQ(rows[0].cb, 1.0);
  EXPECT_NEAR(rows[0].mw_sq_quarter, 1.0, 1e-15);
  EXPECT_NEAR(rows[1].vol, 1.2247, 1e-4);
  EXPECT_NEAR(rows[1].mw_sq_quarter, 1.2459, 1e-4);
  EXPECT_DOUBLE_EQ(rows[1].cb, 1.5);
  EXPECT_TRUE(rows[1].strict_chain);
  EXPECT_DOUBLE_EQ(rows[2].vol, 2.0);
  EXPECT_DOUBLE_EQ(rows[2].cb, 2.0);
  EXPECT_GE(rows[2].mw_sq_quarter, 2.0);
}

TEST(RamosProfile, MidpointIsTheCornerOfTheUnion) {
  const ToricProfile prof = ramos_profile(513);
  const auto& s = prof.curve_samples();
  EXPECT_NEAR(s[256].x(), 2.0, 1e-12);
  EXPECT_NEAR(s[256].y(), 2.0, 1e-12);
}
