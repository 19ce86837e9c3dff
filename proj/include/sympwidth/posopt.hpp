#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sympwidth/bodies.hpp"
#include "sympwidth/quad.hpp"
#include "sympwidth/symp.hpp"

namespace sympwidth {

// All objective values here are FULL mean widths M(PK), i.e. twice the
// half-normalised position functional.

/// M(exp(X) K).
double position_objective(const Body& body, const SymHamiltonianParam& x,
                          const QuadratureRule& rule);

/// M(P K) for an arbitrary linear map P.
double image_mean_width(const Body& body, const Mat& p, const QuadratureRule& rule);

struct DirectionalDerivative {
  double value = 0.0;
  std::size_t excluded_nodes = 0;  // nodes with an undefined support gradient
};

/// d/ds M(exp(sX) K) at s = 0, from support gradients at the rule nodes.
DirectionalDerivative directional_derivative(const Body& body,
                                             const SymHamiltonianParam& x,
                                             const QuadratureRule& rule);

/// (s, M(S(s) K)) along S(s) = Q diag(lambda^s, lambda^-s) Q^T.
std::vector<std::pair<double, double>> geodesic_profile(
    const Body& body, const SymplecticMatrix& q, const Vec& lambda,
    const std::vector<double>& s_grid, const QuadratureRule& rule);

struct DescentOptions {
  int starts = 5;
  std::uint64_t seed = 1;
  double tol = 1e-6;  // stop once the gradient norm falls below this
  int max_iterations = 500;
  double fd_step = 1e-5;
  double start_scale = 0.5;
  double armijo = 1e-4;
};

struct DescentReport {
  SymHamiltonianParam best_param;
  double best_value = 0.0;    // full mean width of exp(X) K
  double initial_value = 0.0; // objective at the best run's start
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::pair<int, double>> trace;  // best run, non-increasing
  std::vector<double> start_values;           // final value of every start
  std::vector<double> start_param_norms;      // final |X| of every start
};

/// Multi-start descent over the symmetric chart X -> exp(X) with central
/// finite-difference gradients and Armijo backtracking. The result is an
/// upper bound on the infimum over the symplectic orbit.
DescentReport minimize_position(const Body& body, const QuadratureRule& rule,
                                const DescentOptions& options);
DescentReport minimize_position(const Body& body, const QuadratureRule& rule,
                                int starts, std::uint64_t seed, double tol);

/// Trapezoid rule for the integral over [0, 2 pi) of
/// A (cos^2 - (1+c) sin^2) / sqrt(A (cos^2 + (1+c) sin^2) + B).
double i_integral(double c, double a1, double b1, int angular_points);

struct GreenMoments {
  double c2 = 0.0;  // integral of h(t) cos 2t
  double s2 = 0.0;  // integral of h(t) sin 2t
};
/// Trapezoid rule on the half-cell offset grid.
GreenMoments green_moments(const std::function<double(double)>& h, int angular_points);

struct GmMoment {
  Mat matrix;           // integral of h(u) u u^T
  double mean_width = 0.0;
  double target = 0.0;  // M / (4n)
  double deviation = 0.0;  // max |matrix - target I|
  bool holds = false;   // deviation <= tol
};
GmMoment gm_moment_matrix(const Body& body, const QuadratureRule& rule, double tol = 1e-7);

}  // namespace sympwidth
