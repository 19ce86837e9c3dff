#include "sympwidth/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sympwidth/errors.hpp"

namespace sympwidth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTol = 1e-12;
constexpr double kZeroComponent = 1e-12;

void check_half_dim(int n, const char* who) {
  if (n < 1 || n > kMaxHalfDim)
    throw std::invalid_argument(std::string(who) + ": half-dimension must lie in [1, 4]");
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

bool is_tie(double a, double b) {
  return std::abs(a - b) <= kTieTol * std::max(1.0, std::abs(a));
}

// Keeps only corners not dominated componentwise by another corner.
Eigen::MatrixXd pareto_front(const std::vector<Vec>& corners) {
  std::vector<Vec> kept;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < corners.size() && !dominated; ++j) {
      if (i == j) continue;
      const bool ge = (corners[j].array() >= corners[i].array()).all();
      const bool strict = (corners[j].array() > corners[i].array()).any();
      // Equal corners: keep the first copy only.
      dominated = ge && (strict || j < i);
    }
    if (!dominated) kept.push_back(corners[i]);
  }
  const auto rows = kept.front().size();
  Eigen::MatrixXd out(rows, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = kept[k];
  return out;
}

Vec component_norms(const Vec& u, int n) {
  Vec rho(n);
  for (int i = 0; i < n; ++i) rho[i] = component_norm(u, n, i);
  return rho;
}

// Point sum_i c_i u_i / |u_i| attaining sum_i c_i |u_i|.
SupportPoint radial_point(const Vec& u, const Vec& c, int n) {
  SupportPoint sp{Vec::Zero(2 * n), false};
  for (int i = 0; i < n; ++i) {
    const double r = component_norm(u, n, i);
    if (r <= kZeroComponent) {
      if (c[i] > 0.0) sp.ambiguous = true;
      continue;
    }
    sp.point[i] = c[i] * u[i] / r;
    sp.point[n + i] = c[i] * u[n + i] / r;
  }
  return sp;
}

// Index of the largest entry and whether the runner-up ties with it.
std::pair<Eigen::Index, bool> argmax_with_tie(const Eigen::VectorXd& values,
                                              const Eigen::MatrixXd* points) {
  Eigen::Index best = 0;
  values.maxCoeff(&best);
  bool tie = false;
  for (Eigen::Index k = 0; k < values.size() && !tie; ++k) {
    if (k == best || !is_tie(values[best], values[k])) continue;
    tie = points == nullptr ||
          (points->col(k) - points->col(best)).norm() > 1e-9;
  }
  return {best, tie};
}

}  // namespace

// ---------------------------------------------------------------- profile

ToricProfile ToricProfile::from_boxes(std::vector<MomentBox> boxes) {
  if (boxes.empty()) throw std::invalid_argument("toric profile: no boxes");
  ToricProfile p;
  p.dim_n_ = static_cast<int>(boxes.front().lo.size());
  check_half_dim(p.dim_n_, "toric profile");
  bool bounded_nonempty = false;
  for (const auto& box : boxes) {
    if (box.lo.size() != p.dim_n_ || box.hi.size() != p.dim_n_)
      throw std::invalid_argument("toric profile: boxes of mixed dimension");
    if (!box.lo.allFinite() || !box.hi.allFinite())
      throw std::invalid_argument("toric profile: unbounded box");
    if ((box.lo.array() < 0.0).any())
      throw std::invalid_argument("toric profile: box leaves the nonnegative orthant");
    if ((box.lo.array() > box.hi.array()).any())
      throw std::invalid_argument("toric profile: box with lo > hi");
    if ((box.hi.array() > 0.0).any()) bounded_nonempty = true;
  }
  if (!bounded_nonempty)
    throw std::invalid_argument("toric profile: all boxes are degenerate at the origin");
  p.representation_ = Representation::kBoxUnion;
  p.boxes_ = std::move(boxes);
  p.build_box_corners();
  return p;
}

void ToricProfile::build_box_corners() {
  std::vector<Vec> corners;
  corners.reserve(boxes_.size());
  for (const auto& box : boxes_) corners.push_back((box.hi / kPi).cwiseSqrt());
  corners_ = pareto_front(corners);
}

ToricProfile ToricProfile::from_curve(const CurvePoint& omega,
                                      const CurvePoint& omega_derivative,
                                      double alpha_begin, double alpha_end,
                                      int samples) {
  if (samples < 2) throw std::invalid_argument("toric curve: need >= 2 samples");
  if (!(alpha_end > alpha_begin))
    throw std::invalid_argument("toric curve: empty parameter interval");

  std::vector<Eigen::Vector2d> w(static_cast<std::size_t>(samples));
  std::vector<Eigen::Vector2d> dw(w.size());
  for (int k = 0; k < samples; ++k) {
    const double alpha =
        alpha_begin + (alpha_end - alpha_begin) * k / (samples - 1.0);
    w[static_cast<std::size_t>(k)] = omega(alpha);
    dw[static_cast<std::size_t>(k)] = omega_derivative(alpha);
  }
  if (w.back().x() < w.front().x()) {
    std::reverse(w.begin(), w.end());
    std::reverse(dw.begin(), dw.end());
  }
  double scale = 0.0;
  for (const auto& p : w) {
    if (!p.allFinite()) throw std::invalid_argument("toric curve: non-finite sample");
    scale = std::max(scale, p.cwiseAbs().maxCoeff());
  }
  if (scale <= 0.0) throw std::invalid_argument("toric curve: degenerate curve");
  const double tol = 1e-9 * scale;
  for (auto& p : w) {
    if (p.x() < -tol || p.y() < -tol)
      throw std::invalid_argument("toric curve: leaves the nonnegative quadrant");
    p = p.cwiseMax(0.0);
  }
  if (w.front().x() > tol || w.back().y() > tol)
    throw std::invalid_argument("toric curve: endpoints must lie on the coordinate axes");
  w.front().x() = 0.0;
  w.back().y() = 0.0;
  for (std::size_t k = 1; k < w.size(); ++k)
    if (w[k].x() < w[k - 1].x() - tol || w[k].y() > w[k - 1].y() + tol)
      throw std::invalid_argument("toric curve: curve is not monotone");

  ToricProfile p;
  p.dim_n_ = 2;
  p.representation_ = Representation::kBoundaryCurve;
  p.samples_ = w;

  std::vector<Eigen::Vector2d> z(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) z[k] = (w[k] / kPi).cwiseSqrt();
  const double zscale = std::max(z.front().y(), z.back().x());

  // The tangent-line polygon is an outer region only if the z-image is convex.
  bool convex = true;
  for (std::size_t k = 1; k + 1 < z.size() && convex; ++k)
    convex = cross2(z[k] - z[k - 1], z[k + 1] - z[k]) <= 1e-12 * zscale * zscale;

  // Tangent directions in z, scaled by 2 pi z_1 z_2 to stay finite.
  std::vector<Eigen::Vector2d> tangent(z.size());
  for (std::size_t k = 0; k < z.size(); ++k)
    tangent[k] = Eigen::Vector2d(dw[k].x() * z[k].y(), dw[k].y() * z[k].x());

  std::vector<Eigen::Vector2d> chain;
  chain.reserve(z.size() + 1);
  chain.push_back(z.front());
  const double eps = 1e-12 * zscale;
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    const Eigen::Vector2d& z0 = z[k];
    const Eigen::Vector2d& z1 = z[k + 1];
    Eigen::Vector2d corner(z1.x(), z0.y());  // staircase fallback
    if (convex) {
      const Eigen::Vector2d t0 = tangent[k], t1 = tangent[k + 1];
      const Eigen::Vector2d d = z1 - z0;
      const double n0 = t0.norm(), n1 = t1.norm();
      if (n0 > 0.0 && n1 > 0.0 && t0.allFinite() && t1.allFinite() &&
          d.norm() > 0.0) {
        const double det = t1.x() * t0.y() - t0.x() * t1.y();
        Eigen::Vector2d candidate;
        if (std::abs(det) <= 1e-14 * n0 * n1) {
          // Parallel tangents: straight piece when the chord follows them.
          if (std::abs(cross2(d / d.norm(), t0 / n0)) < 1e-10)
            candidate = 0.5 * (z0 + z1);
          else
            candidate = corner;
        } else {
          const double s = (d.x() * (-t1.y()) + t1.x() * d.y()) / det;
          candidate = z0 + s * t0;
        }
        const bool in_box = candidate.x() >= z0.x() - eps &&
                            candidate.x() <= z1.x() + eps &&
                            candidate.y() >= z1.y() - eps &&
                            candidate.y() <= z0.y() + eps;
        const bool outward = cross2(d, candidate - z0) >= -eps * d.norm();
        if (candidate.allFinite() && in_box && outward) {
          corner = candidate.cwiseMax(Eigen::Vector2d(z0.x(), z1.y()))
                       .cwiseMin(Eigen::Vector2d(z1.x(), z0.y()));
        }
      }
    }
    chain.push_back(corner);
  }
  chain.push_back(z.back());
  p.tangent_polygon_ = convex;
  p.outer_chain_ = chain;

  std::vector<Vec> corners;
  corners.reserve(chain.size());
  for (const auto& c : chain) corners.push_back(Vec(c));
  p.corners_ = pareto_front(corners);
  return p;
}

Vec ToricProfile::extent() const {
  if (representation_ == Representation::kBoxUnion) {
    Vec e = Vec::Zero(dim_n_);
    for (const auto& box : boxes_) e = e.cwiseMax(box.hi);
    return e;
  }
  Vec e(2);
  e[0] = kPi * outer_chain_.back().x() * outer_chain_.back().x();
  e[1] = kPi * outer_chain_.front().y() * outer_chain_.front().y();
  return e;
}

double ToricProfile::upper_omega2(double omega1) const {
  if (representation_ != Representation::kBoundaryCurve)
    throw std::logic_error("upper_omega2: only defined for curve profiles");
  if (omega1 < 0.0) return -1.0;
  const double z1 = std::sqrt(omega1 / kPi);
  if (z1 > outer_chain_.back().x()) return -1.0;
  // First chain vertex at or right of z1.
  const auto it = std::lower_bound(
      outer_chain_.begin(), outer_chain_.end(), z1,
      [](const Eigen::Vector2d& c, double x) { return c.x() < x; });
  double z2;
  if (it == outer_chain_.begin()) {
    z2 = it->y();
  } else if (!tangent_polygon_) {
    z2 = it->y();  // union of boxes [0, corner]
  } else {
    const auto prev = it - 1;
    const double span = it->x() - prev->x();
    const double f = span > 0.0 ? (z1 - prev->x()) / span : 1.0;
    z2 = prev->y() + f * (it->y() - prev->y());
  }
  return kPi * z2 * z2;
}

bool ToricProfile::contains(const Vec& omega) const {
  if (omega.size() != dim_n_) throw std::invalid_argument("contains: dimension mismatch");
  if ((omega.array() < 0.0).any()) return false;
  if (representation_ == Representation::kBoxUnion) {
    for (const auto& box : boxes_)
      if ((omega.array() >= box.lo.array()).all() &&
          (omega.array() <= box.hi.array()).all())
        return true;
    return false;
  }
  const double top = upper_omega2(omega[0]);
  return top >= 0.0 && omega[1] <= top * (1.0 + 1e-14);
}

// ------------------------------------------------------------------ bodies

Body Body::ellipsoid(const Vec& a, const Vec& b) {
  return ellipsoid(a, b, Vec::Zero(2 * a.size()));
}

Body Body::ellipsoid(const Vec& a, const Vec& b, const Vec& center) {
  const int n = static_cast<int>(a.size());
  check_half_dim(n, "ellipsoid");
  if (b.size() != n) throw std::invalid_argument("ellipsoid: a and b differ in length");
  if (center.size() != 2 * n)
    throw std::invalid_argument("ellipsoid: center must have length 2n");
  if (!(a.array() > 0.0).all() || !(b.array() > 0.0).all() || !a.allFinite() ||
      !b.allFinite())
    throw std::invalid_argument("ellipsoid: axes must be finite and positive");
  return Body(n, Ellipsoid{a, b, center});
}

Body Body::symplectic_ellipsoid(const Vec& a) { return ellipsoid(a, a); }

Body Body::ball(int n, double radius) {
  return ellipsoid(Vec::Constant(n, radius), Vec::Constant(n, radius));
}

Body Body::polydisk(const Vec& r) {
  const int n = static_cast<int>(r.size());
  check_half_dim(n, "polydisk");
  if (!(r.array() > 0.0).all() || !r.allFinite())
    throw std::invalid_argument("polydisk: radii must be finite and positive");
  return Body(n, Polydisk{r});
}

Body Body::polyannulus(const Vec& a, const Vec& b) {
  const int n = static_cast<int>(a.size());
  check_half_dim(n, "polyannulus");
  if (b.size() != n) throw std::invalid_argument("polyannulus: a and b differ in length");
  if ((a.array() < 0.0).any() || (a.array() > b.array()).any() || !b.allFinite())
    throw std::invalid_argument("polyannulus: need 0 <= a_i <= b_i < inf");
  if (!(b.array() > 0.0).any())
    throw std::invalid_argument("polyannulus: some b_i must be positive");
  return Body(n, Polyannulus{a, b});
}

Body Body::union_of(std::vector<Body> members) {
  if (members.empty()) throw std::invalid_argument("union: no members");
  const int n = members.front().dim_n();
  for (const auto& m : members)
    if (m.dim_n() != n) throw std::invalid_argument("union: members differ in dimension");
  return Body(n, UnionBody{std::move(members)});
}

Body Body::lagrangian_bidisk() { return Body(2, LagrangianBidisk{}); }

Body Body::point_cloud(Eigen::MatrixXd points) {
  if (points.cols() < 1) throw std::invalid_argument("point cloud: no points");
  if (points.rows() % 2 != 0)
    throw std::invalid_argument("point cloud: points must have even dimension");
  const int n = static_cast<int>(points.rows() / 2);
  check_half_dim(n, "point cloud");
  if (!points.allFinite()) throw std::invalid_argument("point cloud: non-finite point");
  return Body(n, PointCloud{std::move(points)});
}

Body Body::linear_image(const Mat& matrix, Body inner) {
  const int n = inner.dim_n();
  if (matrix.rows() != 2 * n || matrix.cols() != 2 * n)
    throw std::invalid_argument("linear image: matrix must be 2n x 2n for the inner body");
  if (!matrix.allFinite()) throw std::invalid_argument("linear image: non-finite matrix");
  return Body(n, LinearImage{matrix, std::make_shared<const Body>(std::move(inner))});
}

Body Body::toric(ToricProfile profile) {
  const int n = profile.dim_n();
  return Body(n, ToricBody{std::move(profile)});
}

// ----------------------------------------------------------------- support

double support_unchecked(const Body& body, const Vec& u) {
  const int n = body.dim_n();
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          Vec scaled(2 * n);
          scaled.head(n) = v.a.cwiseProduct(u.head(n));
          scaled.tail(n) = v.b.cwiseProduct(u.tail(n));
          return v.center.dot(u) + scaled.norm();
        } else if constexpr (std::is_same_v<T, Polydisk>) {
          return v.r.dot(component_norms(u, n));
        } else if constexpr (std::is_same_v<T, Polyannulus>) {
          return v.b.dot(component_norms(u, n));
        } else if constexpr (std::is_same_v<T, UnionBody>) {
          double best = -std::numeric_limits<double>::infinity();
          for (const auto& m : v.members) best = std::max(best, support_unchecked(m, u));
          return best;
        } else if constexpr (std::is_same_v<T, LagrangianBidisk>) {
          return std::hypot(u[0], u[1]) + std::hypot(u[2], u[3]);
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          return (u.transpose() * v.points).maxCoeff();
        } else if constexpr (std::is_same_v<T, LinearImage>) {
          return support_unchecked(*v.inner, Vec(v.matrix.transpose() * u));
        } else {
          return (component_norms(u, n).transpose() * v.profile.corners()).maxCoeff();
        }
      },
      body.variant());
}

double support(const Body& body, const Vec& u) {
  if (u.size() != 2 * body.dim_n())
    throw std::invalid_argument("support: direction has the wrong dimension");
  if (std::abs(u.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("support: direction must be a unit vector");
  return support_unchecked(body, u);
}

SupportPoint support_point(const Body& body, const Vec& u) {
  const int n = body.dim_n();
  if (u.size() != 2 * n)
    throw std::invalid_argument("support_point: direction has the wrong dimension");
  return std::visit(
      [&](const auto& v) -> SupportPoint {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          Vec d2u(2 * n), du(2 * n);
          du.head(n) = v.a.cwiseProduct(u.head(n));
          du.tail(n) = v.b.cwiseProduct(u.tail(n));
          d2u.head(n) = v.a.cwiseProduct(du.head(n));
          d2u.tail(n) = v.b.cwiseProduct(du.tail(n));
          return {Vec(v.center + d2u / du.norm()), false};
        } else if constexpr (std::is_same_v<T, Polydisk>) {
          return radial_point(u, v.r, n);
        } else if constexpr (std::is_same_v<T, Polyannulus>) {
          return radial_point(u, v.b, n);
        } else if constexpr (std::is_same_v<T, UnionBody>) {
          Eigen::VectorXd values(static_cast<Eigen::Index>(v.members.size()));
          for (std::size_t k = 0; k < v.members.size(); ++k)
            values[static_cast<Eigen::Index>(k)] = support_unchecked(v.members[k], u);
          Eigen::Index best = 0;
          values.maxCoeff(&best);
          SupportPoint sp = support_point(v.members[static_cast<std::size_t>(best)], u);
          for (Eigen::Index k = 0; k < values.size() && !sp.ambiguous; ++k) {
            if (k == best || !is_tie(values[best], values[k])) continue;
            const SupportPoint other = support_point(v.members[static_cast<std::size_t>(k)], u);
            if (other.ambiguous || (other.point - sp.point).norm() > 1e-9)
              sp.ambiguous = true;
          }
          return sp;
        } else if constexpr (std::is_same_v<T, LagrangianBidisk>) {
          SupportPoint sp{Vec::Zero(4), false};
          const double rx = std::hypot(u[0], u[1]);
          const double ry = std::hypot(u[2], u[3]);
          if (rx <= kZeroComponent || ry <= kZeroComponent) sp.ambiguous = true;
          if (rx > kZeroComponent) sp.point.head(2) = u.head(2) / rx;
          if (ry > kZeroComponent) sp.point.tail(2) = u.tail(2) / ry;
          return sp;
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          const Eigen::VectorXd values = v.points.transpose() * u;
          const auto [best, tie] = argmax_with_tie(values, &v.points);
          return {Vec(v.points.col(best)), tie};
        } else if constexpr (std::is_same_v<T, LinearImage>) {
          SupportPoint inner = support_point(*v.inner, Vec(v.matrix.transpose() * u));
          return {Vec(v.matrix * inner.point), inner.ambiguous};
        } else {
          const Eigen::MatrixXd& corners = v.profile.corners();
          const Eigen::VectorXd values =
              corners.transpose() * Eigen::VectorXd(component_norms(u, n));
          const auto [best, tie] = argmax_with_tie(values, &corners);
          SupportPoint sp = radial_point(u, Vec(corners.col(best)), n);
          sp.ambiguous = sp.ambiguous || tie;
          return sp;
        }
      },
      body.variant());
}

double mean_width(const Body& body, const QuadratureRule& rule) {
  if (body.dim_n() != rule.dim_n())
    throw std::invalid_argument("mean_width: body and rule differ in dimension");
  return integrate(rule, [&](const Vec& u) {
    return support_unchecked(body, u) + support_unchecked(body, Vec(-u));
  });
}

double hausdorff_estimate(const Body& b1, const Body& b2, const QuadratureRule& rule) {
  if (b1.dim_n() != b2.dim_n() || b1.dim_n() != rule.dim_n())
    throw std::invalid_argument("hausdorff_estimate: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Vec u = rule.node(i);
    const Vec v = -u;
    worst = std::max(worst, std::abs(support_unchecked(b1, u) - support_unchecked(b2, u)));
    worst = std::max(worst, std::abs(support_unchecked(b1, v) - support_unchecked(b2, v)));
  }
  return worst;
}

Body toric_box_approx(const ToricProfile& profile, int depth) {
  if (depth < 1) throw std::invalid_argument("toric_box_approx: depth must be >= 1");
  if (depth > 20) throw std::invalid_argument("toric_box_approx: depth must be <= 20");
  const int n = profile.dim_n();
  const Vec extent = profile.extent();
  if (!extent.allFinite()) throw std::invalid_argument("toric_box_approx: unbounded profile");
  const double cells = std::ldexp(1.0, depth);
  Vec cell(n);
  for (int i = 0; i < n; ++i) cell[i] = extent[i] > 0.0 ? extent[i] / cells : 1.0;

  std::vector<MomentBox> boxes;
  if (profile.representation() == ToricProfile::Representation::kBoxUnion) {
    // Each box grows to the union of grid cells it meets.
    for (const auto& box : profile.boxes()) {
      MomentBox grown{Vec(n), Vec(n)};
      for (int i = 0; i < n; ++i) {
        grown.lo[i] = std::floor(box.lo[i] / cell[i]) * cell[i];
        grown.hi[i] = std::ceil(box.hi[i] / cell[i]) * cell[i];
        if (grown.hi[i] == grown.lo[i]) grown.hi[i] += cell[i];
      }
      boxes.push_back(std::move(grown));
    }
  } else {
    // Columns of cells whose lower-left corner lies in the region.
    const int columns = static_cast<int>(cells);
    for (int c = 0; c < columns; ++c) {
      const double top = profile.upper_omega2(c * cell[0]);
      if (top < 0.0) break;
      const double rows = std::min(cells - 1.0, std::floor(top / cell[1]));
      MomentBox column{Vec(2), Vec(2)};
      column.lo << c * cell[0], 0.0;
      column.hi << (c + 1) * cell[0], (rows + 1.0) * cell[1];
      boxes.push_back(std::move(column));
    }
  }

  std::vector<Body> members;
  members.reserve(boxes.size());
  for (const auto& box : boxes)
    members.push_back(
        Body::polyannulus((box.lo / kPi).cwiseSqrt(), (box.hi / kPi).cwiseSqrt()));
  return Body::union_of(std::move(members));
}

std::optional<double> normalized_volume(const Body& body) {
  const int n = body.dim_n();
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  return std::visit(
      [&](const auto& v) -> std::optional<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          return std::pow(v.a.prod() * v.b.prod(), 1.0 / n);
        } else if constexpr (std::is_same_v<T, Polydisk>) {
          return std::pow(factorial * v.r.array().square().prod(), 1.0 / n);
        } else if constexpr (std::is_same_v<T, Polyannulus>) {
          return std::pow(
              factorial * (v.b.array().square() - v.a.array().square()).prod(), 1.0 / n);
        } else if constexpr (std::is_same_v<T, LagrangianBidisk>) {
          return std::sqrt(2.0);  // pi^2 / (pi^2 / 2)
        } else if constexpr (std::is_same_v<T, LinearImage>) {
          const auto inner = normalized_volume(*v.inner);
          if (!inner) return std::nullopt;
          return *inner * std::pow(std::abs(v.matrix.determinant()), 1.0 / n);
        } else {
          return std::nullopt;
        }
      },
      body.variant());
}

}  // namespace sympwidth
