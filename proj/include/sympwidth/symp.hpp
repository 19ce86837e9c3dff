#pragma once

#include <vector>

#include "sympwidth/linalg.hpp"

namespace sympwidth {

/// true iff max |M^T J M - J| <= tol. Throws for non-square or odd sizes.
bool is_symplectic(const Mat& m, double tol);

/// A matrix validated against the symplectic identity at construction.
class SymplecticMatrix {
 public:
  /// Throws std::invalid_argument unless the residual of M^T J M = J is
  /// within tol * max(1, |M|_max^2) and det M = 1 within 1e-8.
  explicit SymplecticMatrix(Mat m, double tol = 1e-10);
  static SymplecticMatrix identity(int n);

  int dim_n() const { return static_cast<int>(m_.rows() / 2); }
  const Mat& matrix() const { return m_; }
  double tol() const { return tol_; }

 private:
  Mat m_;
  double tol_;
};

/// Parameter (C, D) of the symmetric Hamiltonian matrix X = [[C, D], [D, -C]].
struct SymHamiltonianParam {
  Mat c;
  Mat d;

  static SymHamiltonianParam zero(int n);
  /// Throws unless C and D are square, equal-sized and symmetric.
  static SymHamiltonianParam from_blocks(const Mat& c, const Mat& d);
  /// Packs the upper triangles of C then D, row by row: n(n+1) numbers.
  static SymHamiltonianParam from_vector(int n, const Eigen::VectorXd& p);
  /// Unit vector k of the packed coordinates.
  static SymHamiltonianParam basis(int n, int k);

  int dim_n() const { return static_cast<int>(c.rows()); }
  Eigen::VectorXd to_vector() const;
  Mat matrix() const;
  SymHamiltonianParam scaled(double s) const { return {c * s, d * s}; }
};

int param_dimension(int n);

/// exp([[C, D], [D, -C]]): symmetric positive-definite symplectic.
SymplecticMatrix exp_param(const SymHamiltonianParam& x);

struct PolarDecomposition {
  SymplecticMatrix q;  // orthogonal and symplectic
  SymplecticMatrix s;  // symmetric positive-definite symplectic
};
/// P = Q S with S = (P^T P)^{1/2}.
PolarDecomposition polar_decompose(const SymplecticMatrix& p);

struct EulerDecomposition {
  SymplecticMatrix q;  // orthogonal and symplectic
  Vec lambda;          // n values >= 1, descending
};
/// S = Q diag(lambda, 1/lambda) Q^T for symmetric positive-definite
/// symplectic S.
EulerDecomposition euler_decompose(const SymplecticMatrix& s);

/// Q diag(lambda^s, lambda^-s) Q^T.
Mat euler_geodesic(const Mat& q, const Vec& lambda, double s);

struct WilliamsonForm {
  Vec lambda;           // symplectic radii, ascending
  SymplecticMatrix p0;  // P0 {x^T A x <= 1} = E(lambda)
};
/// Symplectic normal form of the ellipsoid {x^T A x <= 1}: the form
/// P0^{-T} A P0^{-1} is diag(1/lambda^2, 1/lambda^2).
WilliamsonForm williamson(const Mat& form);

}  // namespace sympwidth
