#include "sympwidth/symp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "sympwidth/errors.hpp"

namespace sympwidth {

namespace {

void require_even_square(const Mat& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
    throw std::invalid_argument(std::string(who) + ": need a square matrix of even size");
  if (m.rows() > kMaxDim)
    throw std::invalid_argument(std::string(who) + ": dimension cap is 2n <= 8");
}

bool is_symmetric(const Mat& m, double tol) {
  return max_abs(m - m.transpose()) <= tol * std::max(1.0, max_abs(m));
}

// Symmetric positive-definite square root and inverse square root.
void spd_roots(const Mat& a, Mat& sqrt_a, Mat& inv_sqrt_a, const char* who) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(a);
  if (eig.info() != Eigen::Success)
    throw NumericalError(std::string(who) + ": eigen-decomposition failed");
  const Vec mu = eig.eigenvalues();
  if (!(mu.minCoeff() > 1e-14 * std::max(1.0, mu.cwiseAbs().maxCoeff())))
    throw std::invalid_argument(std::string(who) + ": matrix is not positive definite");
  const Mat& v = eig.eigenvectors();
  sqrt_a = v * mu.cwiseSqrt().asDiagonal() * v.transpose();
  inv_sqrt_a = v * mu.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
}

Mat symmetrized(const Mat& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

bool is_symplectic(const Mat& m, double tol) {
  require_even_square(m, "is_symplectic");
  const Mat j = standard_j(static_cast<int>(m.rows() / 2));
  return max_abs(m.transpose() * j * m - j) <= tol;
}

SymplecticMatrix::SymplecticMatrix(Mat m, double tol) : m_(std::move(m)), tol_(tol) {
  require_even_square(m_, "SymplecticMatrix");
  const double scale = std::max(1.0, max_abs(m_) * max_abs(m_));
  if (!m_.allFinite() || !is_symplectic(m_, tol_ * scale))
    throw std::invalid_argument("SymplecticMatrix: M^T J M != J within tolerance");
  if (std::abs(m_.determinant() - 1.0) > 1e-8 * scale)
    throw std::invalid_argument("SymplecticMatrix: determinant differs from 1");
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
  return SymplecticMatrix(Mat::Identity(2 * n, 2 * n));
}

// ------------------------------------------------------------------ param

int param_dimension(int n) { return n * (n + 1); }

SymHamiltonianParam SymHamiltonianParam::zero(int n) {
  return {Mat::Zero(n, n), Mat::Zero(n, n)};
}

SymHamiltonianParam SymHamiltonianParam::from_blocks(const Mat& c, const Mat& d) {
  if (c.rows() != c.cols() || d.rows() != d.cols() || c.rows() != d.rows() ||
      c.rows() < 1 || c.rows() > kMaxHalfDim)
    throw std::invalid_argument("SymHamiltonianParam: C and D must be n x n, 1 <= n <= 4");
  if (!is_symmetric(c, 1e-12) || !is_symmetric(d, 1e-12))
    throw std::invalid_argument("SymHamiltonianParam: C and D must be symmetric");
  return {symmetrized(c), symmetrized(d)};
}

SymHamiltonianParam SymHamiltonianParam::from_vector(int n, const Eigen::VectorXd& p) {
  if (p.size() != param_dimension(n))
    throw std::invalid_argument("SymHamiltonianParam: packed vector must have n(n+1) entries");
  SymHamiltonianParam x = zero(n);
  Eigen::Index k = 0;
  for (Mat* block : {&x.c, &x.d})
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j, ++k) {
        (*block)(i, j) = p[k];
        (*block)(j, i) = p[k];
      }
  return x;
}

SymHamiltonianParam SymHamiltonianParam::basis(int n, int k) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(param_dimension(n));
  p[k] = 1.0;
  return from_vector(n, p);
}

Eigen::VectorXd SymHamiltonianParam::to_vector() const {
  const int n = dim_n();
  Eigen::VectorXd p(param_dimension(n));
  Eigen::Index k = 0;
  for (const Mat* block : {&c, &d})
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) p[k++] = (*block)(i, j);
  return p;
}

Mat SymHamiltonianParam::matrix() const {
  const int n = dim_n();
  Mat x(2 * n, 2 * n);
  x << c, d, d, -c;
  return x;
}

// ------------------------------------------------------------------ maps

SymplecticMatrix exp_param(const SymHamiltonianParam& x) {
  const Eigen::MatrixXd generator = x.matrix();
  const Eigen::MatrixXd e = generator.exp();
  return SymplecticMatrix(symmetrized(Mat(e)));
}

PolarDecomposition polar_decompose(const SymplecticMatrix& p) {
  const Mat& m = p.matrix();
  Mat s, inv_s;
  spd_roots(m.transpose() * m, s, inv_s, "polar_decompose");
  const double tol = std::max(p.tol(), 1e-10);
  return {SymplecticMatrix(Mat(m * inv_s), tol), SymplecticMatrix(symmetrized(s), tol)};
}

EulerDecomposition euler_decompose(const SymplecticMatrix& s) {
  const Mat& m = s.matrix();
  const int n = s.dim_n();
  if (!is_symmetric(m, 1e-10))
    throw std::invalid_argument("euler_decompose: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrized(m));
  const Vec mu = eig.eigenvalues();  // ascending
  if (!(mu.minCoeff() > 0.0))
    throw std::invalid_argument("euler_decompose: matrix is not positive definite");
  const Mat& vecs = eig.eigenvectors();
  const Mat j = standard_j(n);

  // Descending eigenvalues >= 1; inside the unit cluster pick an isotropic
  // set greedily (v_k orthogonal to the chosen v's and J v's).
  Mat v(2 * n, n);
  Vec lambda(n);
  int chosen = 0;
  for (int k = 2 * n - 1; k >= 0 && chosen < n; --k) {
    Vec e = vecs.col(k);
    for (int c = 0; c < chosen; ++c) {
      e -= v.col(c).dot(e) * v.col(c);
      const Vec jv = j * v.col(c);
      e -= jv.dot(e) * jv;
    }
    const double norm = e.norm();
    if (norm < 0.5) continue;
    v.col(chosen) = e / norm;
    lambda[chosen] = std::max(1.0, mu[k]);
    ++chosen;
  }
  if (chosen < n) throw NumericalError("euler_decompose: could not build a Lagrangian frame");
  Mat q(2 * n, 2 * n);
  q << v, -(j * v);
  return {SymplecticMatrix(q, 1e-9), lambda};
}

Mat euler_geodesic(const Mat& q, const Vec& lambda, double s) {
  const int n = static_cast<int>(lambda.size());
  Vec diag(2 * n);
  for (int i = 0; i < n; ++i) {
    diag[i] = std::pow(lambda[i], s);
    diag[n + i] = std::pow(lambda[i], -s);
  }
  return q * diag.asDiagonal() * q.transpose();
}

WilliamsonForm williamson(const Mat& form) {
  require_even_square(form, "williamson");
  if (!is_symmetric(form, 1e-12))
    throw std::invalid_argument("williamson: form must be symmetric");
  const int n = static_cast<int>(form.rows() / 2);
  const Mat a = symmetrized(form);
  Mat half, inv_half;
  spd_roots(a, half, inv_half, "williamson");

  // W = A^{1/2} J A^{1/2} = O [[0, D], [-D, 0]] O^T, O orthogonal and D diagonal.
  const Mat w = half * standard_j(n) * half;
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrized(Mat(-w * w)));
  const Mat& vecs = eig.eigenvectors();

  Mat o(2 * n, 2 * n);
  Vec omega(n);
  int chosen = 0;
  // Largest omega first gives ascending radii lambda = omega^{-1/2}.
  for (int k = 2 * n - 1; k >= 0 && chosen < n; --k) {
    Vec e = vecs.col(k);
    for (int c = 0; c < chosen; ++c) {
      e -= o.col(c).dot(e) * o.col(c);
      e -= o.col(n + c).dot(e) * o.col(n + c);
    }
    const double norm = e.norm();
    if (norm < 0.5) continue;
    e /= norm;
    const double om = std::sqrt(std::max(0.0, e.dot(-w * w * e)));
    o.col(n + chosen) = e;
    o.col(chosen) = w * e / om;
    omega[chosen] = om;
    ++chosen;
  }
  if (chosen < n) throw NumericalError("williamson: could not pair the spectrum");

  Vec root(2 * n);
  root << omega.cwiseSqrt(), omega.cwiseSqrt();
  const Mat p0 = root.cwiseInverse().asDiagonal() * o.transpose() * half;

  WilliamsonForm out{Vec(n), SymplecticMatrix(p0, 1e-9)};
  for (int i = 0; i < n; ++i) out.lambda[i] = 1.0 / std::sqrt(omega[i]);

  const Mat p0_inv = inv_half * o * root.asDiagonal();
  const Mat normal = p0_inv.transpose() * a * p0_inv;
  Vec target(2 * n);
  target << out.lambda.cwiseAbs2().cwiseInverse(), out.lambda.cwiseAbs2().cwiseInverse();
  if (max_abs(normal - Mat(target.asDiagonal())) > 1e-8 * std::max(1.0, max_abs(a)))
    throw NumericalError("williamson: normal form verification failed");
  return out;
}

}  // namespace sympwidth
