#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sympwidth/bodies.hpp"
#include "sympwidth/quad.hpp"

namespace sympwidth {

/// c * prod_k z_k^{e_k} in Cartesian coordinates (x_1..x_n, y_1..y_n).
struct Monomial {
  std::vector<int> exponents;
  double coeff = 0.0;
};

/// c * prod_{j<n} r_j^{p_j} * trig(k . theta) in Hopf coordinates, where
/// r_j = |z_j| / |z| and theta_i = arg z_i.
struct TrigTerm {
  std::vector<int> k;
  std::vector<int> p;
  double coeff = 0.0;
  bool sine = false;
};

/// A smooth function on R^{2n} with an exact gradient.
///
/// Hopf trigonometric Hamiltonians are extended off the unit sphere as
/// homogeneous functions of |z| of the given degree (default 2, which makes
/// r^2 cos(theta) the n = 1 instance).
class HamiltonianSystem {
 public:
  static HamiltonianSystem cartesian(int n, std::vector<Monomial> monomials);
  static HamiltonianSystem hopf_trig(int n, std::vector<TrigTerm> terms, int degree = 2);
  /// "x1y1", "oscillator" (1/2 |z|^2) and "r2cos" (n = 1 only).
  static HamiltonianSystem preset(const std::string& name, int n);
  /// Seeded random Hopf trigonometric polynomial with `terms` terms.
  static HamiltonianSystem random_hopf_trig(int n, int terms, std::uint64_t seed,
                                            int max_frequency = 3);

  int dim_n() const { return n_; }
  double value(const Vec& z) const;
  Vec gradient(const Vec& z) const;

  bool is_hopf() const { return hopf_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }
  int degree() const { return degree_; }

 private:
  HamiltonianSystem() = default;
  int n_ = 0;
  bool hopf_ = false;
  int degree_ = 2;
  std::vector<Monomial> monomials_;
  std::vector<TrigTerm> terms_;
};

/// X_H = J grad H, so H = x1 y1 generates diag(e^t, e^-t) on (x1, y1).
Vec hamiltonian_vector_field(const HamiltonianSystem& sys, const Vec& z);

struct FlowedBoundary {
  Eigen::MatrixXd points;  // column per point
  double t = 0.0;
  int step_count = 0;
};

/// Classical RK4 with `steps` equal steps, applied to every column.
FlowedBoundary flow(const HamiltonianSystem& sys, const Eigen::MatrixXd& points,
                    double t, int steps);

/// Default step count max(200, ceil(200 |t|)).
int default_flow_steps(double t);

/// Boundary points of `body` as support points at the nodes of a boundary
/// rule with `boundary_samples` angles per factor (the integration rule's
/// radial count is reused). For Monte-Carlo rules the nodes and their
/// antipodes are used instead.
Eigen::MatrixXd boundary_cloud(const Body& body, const QuadratureRule& rule,
                               int boundary_samples);

/// Mean width of the convex hull of the flowed boundary cloud.
double flowed_mean_width(const Body& body, const HamiltonianSystem& sys, double t,
                         const QuadratureRule& rule, int boundary_samples, int steps);

/// (M(h) - M(-h)) / 2h with boundary samples matching the rule's angles.
double first_variation(const Body& body, const HamiltonianSystem& sys, double h_step,
                       const QuadratureRule& rule);

/// (M(h) - 2 M(0) + M(-h)) / h^2.
double second_variation_fd(const Body& body, const HamiltonianSystem& sys,
                           double h_step, const QuadratureRule& rule);

/// (1/pi) * integral of (H'')^2 - (H')^2 over the circle, with derivatives
/// taken spectrally from `angular_points` samples.
double disk_second_variation(const std::function<double(double)>& h_theta,
                             int angular_points);

}  // namespace sympwidth
