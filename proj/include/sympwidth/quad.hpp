#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sympwidth/linalg.hpp"

namespace sympwidth {

enum class RuleKind { kHopfProduct, kMonteCarlo };

/// Nodes and weights on S^{2n-1} for the rotation-invariant probability
/// measure. Immutable once built.
class QuadratureRule {
 public:
  QuadratureRule(int dim_n, Eigen::MatrixXd nodes, std::vector<double> weights,
                 RuleKind kind, int radial_points = 0, int angular_points = 0);

  int dim_n() const { return dim_n_; }
  int ambient_dim() const { return 2 * dim_n_; }
  std::size_t size() const { return weights_.size(); }
  RuleKind kind() const { return kind_; }
  int radial_points() const { return radial_points_; }
  int angular_points() const { return angular_points_; }

  Vec node(std::size_t i) const { return nodes_.col(static_cast<Eigen::Index>(i)); }
  double weight(std::size_t i) const { return weights_[i]; }
  const Eigen::MatrixXd& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Rule with every node mapped through `m` (weights unchanged).
  QuadratureRule transformed(const Mat& m) const;

 private:
  int dim_n_;
  Eigen::MatrixXd nodes_;  // column i = node i
  std::vector<double> weights_;
  RuleKind kind_;
  int radial_points_;
  int angular_points_;
};

/// Product rule in Hopf coordinates x_i = r_i cos(t_i), y_i = r_i sin(t_i).
///
/// The radial simplex {s_j = r_j^2} is mapped to the cube by a Duffy map; each
/// cube axis is further reparametrised by v = sin^2(pi*t/2) before tensor
/// Gauss-Legendre, which turns the r_j = sqrt(s_j) factors into analytic
/// functions of t. Angles use an equispaced grid offset by half a cell, so no
/// node has a vanishing complex component. `angular_points` must be even (the
/// node set is then closed under u -> -u); `radial_points` is unused for n=1.
QuadratureRule hopf_rule(int n, int radial_points, int angular_points);

/// Normalised standard Gaussian draws from a seeded mt19937_64, equal weights.
QuadratureRule monte_carlo_rule(int n, std::size_t samples, std::uint64_t seed);

using SphereFunction = std::function<double(const Vec&)>;

/// Sum_i w_i f(node_i). Summation runs over fixed blocks combined pairwise, so
/// the result does not depend on the worker count. Throws NumericalError if f
/// is non-finite at some node.
double integrate(const QuadratureRule& rule, const SphereFunction& f);

/// Matrix-valued variant: Sum_i w_i f(node_i), same reduction order.
Mat integrate_matrix(const QuadratureRule& rule,
                     const std::function<Mat(const Vec&)>& f, int rows,
                     int cols);

/// Sums `partial(begin, end)` over fixed-size blocks of [0, count), combining
/// block results in a fixed pairwise tree. Blocks may run on worker threads.
double reduce_blocks(std::size_t count,
                     const std::function<double(std::size_t, std::size_t)>& partial);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int points, std::vector<double>& nodes,
                         std::vector<double>& weights);

/// Caps the worker threads used by integrate() and friends. Values <= 0
/// select the hardware concurrency, which is also the default. Results do
/// not depend on the cap because blocks are summed in a fixed order.
void set_max_threads(int threads);
int max_threads();

}  // namespace sympwidth
