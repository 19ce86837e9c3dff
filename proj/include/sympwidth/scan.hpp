#pragma once

#include <vector>

#include "sympwidth/bodies.hpp"
#include "sympwidth/posopt.hpp"
#include "sympwidth/quad.hpp"

namespace sympwidth {

/// Ball-embedding capacity of E(1, sqrt(a)) on the plotted range [1, 13/2].
double cb_ellipsoid(double a);

struct StaircaseRow {
  double a = 0.0;
  double vol = 0.0;                   // normalised volume sqrt(a)
  double mw_sq_quarter = 0.0;         // M(E(1, sqrt a))^2 / 4
  double cb = 0.0;
  double msp_upper_sq_quarter = 0.0;  // best position found, squared over 4
  bool urysohn = false;               // vol <= mw_sq_quarter + 1e-9
  bool strict_chain = false;          // urysohn, and vol < mw^2/4 < cb on (1, 2)
};

/// Rows for every a. With `optimize`, each row also runs a position search
/// on E(1, sqrt a) with `rule`; otherwise the upper bound is the closed form.
std::vector<StaircaseRow> staircase_table(const std::vector<double>& a_values,
                                          const QuadratureRule& rule, bool optimize,
                                          const DescentOptions& options = {});

/// Moment image bounded by the axes and the curve
/// (2 sin(t/2) - t cos(t/2), 2 sin(t/2) + (2 pi - t) cos(t/2)), t in [0, 2 pi].
ToricProfile ramos_profile(int samples);

struct RamosComparison {
  double mw_x0 = 0.0;             // outer-cover upper bound
  double mw_x1 = 0.0;
  double mw_pl = 0.0;             // 8/3
  double mw_pl_quadrature = 0.0;  // cross-check with the supplied rule
  bool chain_holds = false;
};

/// Throws CheckFailure unless mw_x0 < mw_x1 < mw_pl, each gap exceeding 1e-3.
RamosComparison ramos_compare(const QuadratureRule& rule, int samples);

}  // namespace sympwidth
