#include "sympwidth/forms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sympwidth/bodies.hpp"
#include "sympwidth/symp.hpp"

namespace sympwidth {

double mw_symplectic_ellipsoid2(double a1, double a2) {
  if (!(a1 > 0.0) || !(a2 > 0.0))
    throw std::invalid_argument("mw_symplectic_ellipsoid2: radii must be positive");
  return 4.0 / 3.0 * (a1 * a1 + a1 * a2 + a2 * a2) / (a1 + a2);
}

double unit_ball_volume(int d) {
  if (d < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  // V_d = 2 pi / d * V_{d-2}, the gamma-function formula at half-integers.
  double v = (d % 2 == 0) ? 1.0 : 2.0;
  for (int k = (d % 2 == 0) ? 2 : 3; k <= d; k += 2) v *= 2.0 * std::numbers::pi / k;
  return v;
}

double mw_polydisk(const Vec& r) {
  const int n = static_cast<int>(r.size());
  if (n < 1) throw std::invalid_argument("mw_polydisk: empty radius vector");
  if (!(r.array() > 0.0).all())
    throw std::invalid_argument("mw_polydisk: radii must be positive");
  return std::numbers::pi * unit_ball_volume(2 * n - 1) / unit_ball_volume(2 * n) * r.mean();
}

double mw_union_conjugate_ellipsoids(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("mw_union_conjugate_ellipsoids: a and b must be positive");
  if (a < b) std::swap(a, b);
  if (a - b < 1e-6 * a) return 2.0 * a;
  const double q = 0.5 * (a * a + b * b);
  return 8.0 / 3.0 / (a * a - b * b) * (a * a * a - q * std::sqrt(q));
}

double msp_ellipsoid(const Mat& form, const QuadratureRule& rule) {
  const WilliamsonForm w = williamson(form);
  const int n = static_cast<int>(w.lambda.size());
  if (n == 2) return mw_symplectic_ellipsoid2(w.lambda[0], w.lambda[1]);
  if (rule.dim_n() != n)
    throw std::invalid_argument("msp_ellipsoid: rule dimension differs from the form");
  return mean_width(Body::symplectic_ellipsoid(w.lambda), rule);
}

}  // namespace sympwidth
