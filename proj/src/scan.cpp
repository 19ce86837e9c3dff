#include "sympwidth/scan.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sympwidth/errors.hpp"
#include "sympwidth/forms.hpp"

namespace sympwidth {

double cb_ellipsoid(double a) {
  if (!(a >= 1.0 && a <= 6.5)) {
    std::ostringstream msg;
    msg << "cb_ellipsoid: a = " << a << " is outside the plotted range [1, 13/2]";
    throw std::invalid_argument(msg.str());
  }
  if (a <= 2.0) return a;
  if (a <= 4.0) return 2.0;
  if (a <= 5.0) return a / 2.0;
  if (a <= 6.25) return 2.5;
  return 2.0 * a / 5.0;
}

std::vector<StaircaseRow> staircase_table(const std::vector<double>& a_values,
                                          const QuadratureRule& rule, bool optimize,
                                          const DescentOptions& options) {
  std::vector<StaircaseRow> rows;
  rows.reserve(a_values.size());
  for (double a : a_values) {
    StaircaseRow row;
    row.a = a;
    row.cb = cb_ellipsoid(a);
    row.vol = std::sqrt(a);
    const double mw = mw_symplectic_ellipsoid2(1.0, std::sqrt(a));
    row.mw_sq_quarter = mw * mw / 4.0;
    row.msp_upper_sq_quarter = row.mw_sq_quarter;
    if (optimize) {
      Vec radii(2);
      radii << 1.0, std::sqrt(a);
      const DescentReport report =
          minimize_position(Body::symplectic_ellipsoid(radii), rule, options);
      row.msp_upper_sq_quarter = report.best_value * report.best_value / 4.0;
    }
    row.urysohn = row.vol <= row.mw_sq_quarter + 1e-9;
    const bool interior = a > 1.0 && a < 2.0;
    row.strict_chain =
        row.urysohn && (!interior || (row.vol < row.mw_sq_quarter && row.mw_sq_quarter < row.cb));
    rows.push_back(row);
  }
  return rows;
}

ToricProfile ramos_profile(int samples) {
  if (samples < 16) throw std::invalid_argument("ramos_profile: need >= 16 samples");
  constexpr double pi = std::numbers::pi;
  const auto omega = [](double t) {
    const double s = std::sin(0.5 * t), c = std::cos(0.5 * t);
    return Eigen::Vector2d(2.0 * s - t * c, 2.0 * s + (2.0 * pi - t) * c);
  };
  const auto derivative = [](double t) {
    const double s = std::sin(0.5 * t);
    return Eigen::Vector2d(0.5 * t * s, -0.5 * (2.0 * pi - t) * s);
  };
  return ToricProfile::from_curve(omega, derivative, 0.0, 2.0 * pi, samples);
}

RamosComparison ramos_compare(const QuadratureRule& rule, int samples) {
  if (rule.dim_n() != 2) throw std::invalid_argument("ramos_compare: needs a rule with n = 2");
  RamosComparison out;
  out.mw_x0 = mean_width(Body::toric(ramos_profile(samples)), rule);
  out.mw_x1 = mw_union_conjugate_ellipsoids(std::sqrt(2.0),
                                            std::sqrt(2.0 / (std::numbers::pi - 1.0)));
  out.mw_pl = 8.0 / 3.0;
  out.mw_pl_quadrature = mean_width(Body::lagrangian_bidisk(), rule);
  constexpr double margin = 1e-3;
  out.chain_holds = out.mw_x0 < out.mw_x1 - margin && out.mw_x1 < out.mw_pl - margin;
  if (!out.chain_holds) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "ramos_compare: strict chain violated: M(X0) = " << out.mw_x0
        << ", M(X1) = " << out.mw_x1 << ", M(PL) = " << out.mw_pl;
    throw CheckFailure(msg.str());
  }
  return out;
}

}  // namespace sympwidth
