#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "sympwidth/linalg.hpp"
#include "sympwidth/quad.hpp"

namespace sympwidth {

/// Axis-aligned box in moment-map coordinates omega_i = pi |z_i|^2.
struct MomentBox {
  Vec lo;
  Vec hi;
};

/// Moment-map image Omega of a toric set, either a finite union of boxes or
/// (for n = 2) the region cut out by the axes and a monotone curve.
///
/// Support evaluation only needs the "corners" of Omega in radius
/// coordinates z_i = sqrt(omega_i / pi): h(u) = max_k sum_i c_ki |u_i|. For a
/// curve whose z-image is convex the corners are the vertices of the polygon
/// formed by tangent lines at consecutive samples; otherwise they are the
/// staircase corners of consecutive samples. Both choices give an outer
/// region, so the induced support never underestimates the true one.
class ToricProfile {
 public:
  enum class Representation { kBoxUnion, kBoundaryCurve };

  using CurvePoint = std::function<Eigen::Vector2d(double)>;

  static ToricProfile from_boxes(std::vector<MomentBox> boxes);
  static ToricProfile from_curve(const CurvePoint& omega,
                                 const CurvePoint& omega_derivative,
                                 double alpha_begin, double alpha_end,
                                 int samples);

  int dim_n() const { return dim_n_; }
  Representation representation() const { return representation_; }
  const std::vector<MomentBox>& boxes() const { return boxes_; }
  /// Curve samples in moment coordinates, ordered with omega_1 increasing.
  const std::vector<Eigen::Vector2d>& curve_samples() const { return samples_; }
  /// Whether the tangent-polygon construction was used (convex z-image).
  bool tangent_polygon() const { return tangent_polygon_; }

  /// n x K matrix of support corners in radius coordinates.
  const Eigen::MatrixXd& corners() const { return corners_; }

  /// Largest omega_i over the (outer) region.
  Vec extent() const;

  /// Membership in the outer region used for support evaluation.
  bool contains(const Vec& omega) const;

  /// For curve profiles: the largest omega_2 of the outer region above
  /// omega_1 (negative when omega_1 is beyond the region).
  double upper_omega2(double omega1) const;

 private:
  ToricProfile() = default;
  void build_box_corners();

  int dim_n_ = 0;
  Representation representation_ = Representation::kBoxUnion;
  std::vector<MomentBox> boxes_;
  std::vector<Eigen::Vector2d> samples_;
  std::vector<Eigen::Vector2d> outer_chain_;  // z-space, z1 increasing
  bool tangent_polygon_ = false;
  Eigen::MatrixXd corners_;
};

class Body;

struct Ellipsoid {
  Vec a;  // semi-axes along x_i
  Vec b;  // semi-axes along y_i
  Vec center;
};
struct Polydisk {
  Vec r;
};
/// Preimage of the moment box [pi a_i^2, pi b_i^2]; its convex hull is P(b).
struct Polyannulus {
  Vec a;
  Vec b;
};
struct UnionBody {
  std::vector<Body> members;
};
/// {x_1^2 + x_2^2 <= 1, y_1^2 + y_2^2 <= 1} in R^4.
struct LagrangianBidisk {};
struct PointCloud {
  Eigen::MatrixXd points;  // column per point
};
struct LinearImage {
  Mat matrix;
  std::shared_ptr<const Body> inner;
};
struct ToricBody {
  ToricProfile profile;
};

/// Immutable bounded set in R^{2n} known through its support function.
class Body {
 public:
  using Variant = std::variant<Ellipsoid, Polydisk, Polyannulus, UnionBody,
                               LagrangianBidisk, PointCloud, LinearImage,
                               ToricBody>;

  static Body ellipsoid(const Vec& a, const Vec& b);
  static Body ellipsoid(const Vec& a, const Vec& b, const Vec& center);
  /// Symplectic ellipsoid E(a) = E(a, a).
  static Body symplectic_ellipsoid(const Vec& a);
  static Body ball(int n, double radius = 1.0);
  static Body polydisk(const Vec& r);
  static Body polyannulus(const Vec& a, const Vec& b);
  static Body union_of(std::vector<Body> members);
  static Body lagrangian_bidisk();
  static Body point_cloud(Eigen::MatrixXd points);
  static Body linear_image(const Mat& matrix, Body inner);
  static Body toric(ToricProfile profile);

  int dim_n() const { return dim_n_; }
  const Variant& variant() const { return variant_; }

 private:
  Body(int dim_n, Variant v) : dim_n_(dim_n), variant_(std::move(v)) {}
  int dim_n_;
  Variant variant_;
};

/// h(u) = sup_{k in K} <k, u>. `u` must be a unit vector (1e-9).
double support(const Body& body, const Vec& u);

/// Homogeneous evaluation without the unit-norm check.
double support_unchecked(const Body& body, const Vec& u);

/// A maximiser of <k, u>, i.e. the gradient of h at u where it exists.
/// `ambiguous` flags ties in a max (within 1e-12 relative) or a vanishing
/// complex component, where the gradient is not defined.
struct SupportPoint {
  Vec point;
  bool ambiguous = false;
};
SupportPoint support_point(const Body& body, const Vec& u);

/// Sum_i w_i (h(u_i) + h(-u_i)).
double mean_width(const Body& body, const QuadratureRule& rule);

/// max_i |h_1(u_i) - h_2(u_i)| over the rule nodes and their antipodes.
double hausdorff_estimate(const Body& b1, const Body& b2,
                          const QuadratureRule& rule);

/// Outer cover of Omega by a dyadic grid of resolution 2^-depth relative to
/// the profile's extent, returned as a union of polyannuli. Covers are nested
/// in depth.
Body toric_box_approx(const ToricProfile& profile, int depth);

/// (Vol(K) / Vol(B^{2n}))^{1/n} for variants with a closed form.
std::optional<double> normalized_volume(const Body& body);

}  // namespace sympwidth
