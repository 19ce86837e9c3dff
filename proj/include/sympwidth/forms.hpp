#pragma once

#include "sympwidth/linalg.hpp"
#include "sympwidth/quad.hpp"

namespace sympwidth {

/// Closed-form mean width of the symplectic ellipsoid E(a1, a2) in R^4.
double mw_symplectic_ellipsoid2(double a1, double a2);

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

/// Mean width of the polydisk P(r): pi Vol(B^{2n-1}) / Vol(B^{2n}) * mean(r).
double mw_polydisk(const Vec& r);

/// Mean width of E(a, b) u E(b, a) in R^4 (semi-axes (a, b) and (b, a)).
double mw_union_conjugate_ellipsoids(double a, double b);

/// Infimum of the mean width over the symplectic orbit of {x^T A x <= 1},
/// attained at its Williamson normal form. Uses the closed form for n = 2
/// and `rule` otherwise.
double msp_ellipsoid(const Mat& form, const QuadratureRule& rule);

}  // namespace sympwidth
