#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>

namespace sympwidth {

/// Largest supported half-dimension n (the ambient space is R^{2n}).
inline constexpr int kMaxHalfDim = 4;
inline constexpr int kMaxDim = 2 * kMaxHalfDim;

// Bounded-size dynamic types: no heap traffic in the per-node hot loops.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim,
                          kMaxDim>;

/// Coordinates on R^{2n} are ordered (x_1, ..., x_n, y_1, ..., y_n); the i-th
/// complex component is u_i = (x_i, y_i).
inline double component_norm(const Vec& u, int n, int i) {
  return std::hypot(u[i], u[n + i]);
}

/// Standard symplectic form matrix J = [[0, I], [-I, 0]].
inline Mat standard_j(int n) {
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return j;
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace sympwidth
