#include "sympwidth/flows.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

#include "sympwidth/errors.hpp"

namespace sympwidth {

namespace {

void check_n(int n, const char* who) {
  if (n < 1 || n > kMaxHalfDim)
    throw std::invalid_argument(std::string(who) + ": half-dimension must lie in [1, 4]");
}

}  // namespace

HamiltonianSystem HamiltonianSystem::cartesian(int n, std::vector<Monomial> monomials) {
  check_n(n, "cartesian Hamiltonian");
  for (const auto& m : monomials) {
    if (static_cast<int>(m.exponents.size()) != 2 * n)
      throw std::invalid_argument("cartesian Hamiltonian: exponents need 2n entries");
    for (int e : m.exponents)
      if (e < 0) throw std::invalid_argument("cartesian Hamiltonian: negative exponent");
  }
  HamiltonianSystem h;
  h.n_ = n;
  h.monomials_ = std::move(monomials);
  return h;
}

HamiltonianSystem HamiltonianSystem::hopf_trig(int n, std::vector<TrigTerm> terms,
                                               int degree) {
  check_n(n, "hopf-trig Hamiltonian");
  if (degree < 1) throw std::invalid_argument("hopf-trig Hamiltonian: degree must be >= 1");
  for (const auto& t : terms) {
    if (static_cast<int>(t.k.size()) != n)
      throw std::invalid_argument("hopf-trig Hamiltonian: ctheta needs n entries");
    if (static_cast<int>(t.p.size()) != n - 1)
      throw std::invalid_argument("hopf-trig Hamiltonian: cr needs n-1 entries");
    for (int p : t.p)
      if (p < 0) throw std::invalid_argument("hopf-trig Hamiltonian: negative radial power");
  }
  HamiltonianSystem h;
  h.n_ = n;
  h.hopf_ = true;
  h.degree_ = degree;
  h.terms_ = std::move(terms);
  return h;
}

HamiltonianSystem HamiltonianSystem::preset(const std::string& name, int n) {
  check_n(n, "Hamiltonian preset");
  if (name == "x1y1") {
    std::vector<int> e(static_cast<std::size_t>(2 * n), 0);
    e[0] = 1;
    e[static_cast<std::size_t>(n)] = 1;
    return cartesian(n, {Monomial{e, 1.0}});
  }
  if (name == "oscillator") {
    std::vector<Monomial> ms;
    for (int k = 0; k < 2 * n; ++k) {
      std::vector<int> e(static_cast<std::size_t>(2 * n), 0);
      e[static_cast<std::size_t>(k)] = 2;
      ms.push_back({e, 0.5});
    }
    return cartesian(n, std::move(ms));
  }
  if (name == "r2cos") {
    if (n != 1) throw std::invalid_argument("preset r2cos is defined for n = 1 only");
    return hopf_trig(1, {TrigTerm{{1}, {}, 1.0, false}});
  }
  throw std::invalid_argument("unknown Hamiltonian preset '" + name + "'");
}

HamiltonianSystem HamiltonianSystem::random_hopf_trig(int n, int terms, std::uint64_t seed,
                                                      int max_frequency) {
  check_n(n, "random Hamiltonian");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> freq(-max_frequency, max_frequency);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> last(-1, 1);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<TrigTerm> out;
  for (int t = 0; t < terms; ++t) {
    TrigTerm term;
    for (int i = 0; i + 1 < n; ++i) term.k.push_back(freq(gen));
    // r_j^{|k_j|} keeps the term smooth across z_j = 0.
    for (int j = 0; j + 1 < n; ++j)
      term.p.push_back(std::abs(term.k[static_cast<std::size_t>(j)]) + 2 * coin(gen));
    // The last factor has no radial power of its own; a frequency +-2 there
    // is made smooth by the factor r_n^2 = 1 - sum_{j<n} r_j^2.
    const int kn = n == 1 ? freq(gen) : 2 * last(gen);
    term.k.push_back(kn);
    term.coeff = coeff(gen);
    term.sine = coin(gen) == 1;
    out.push_back(term);
    if (n > 1 && kn != 0) {
      for (int j = 0; j + 1 < n; ++j) {
        TrigTerm minus = term;
        minus.p[static_cast<std::size_t>(j)] += 2;
        minus.coeff = -term.coeff;
        out.push_back(std::move(minus));
      }
    }
  }
  return hopf_trig(n, std::move(out));
}

namespace {

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

std::complex<double> cpow(std::complex<double> w, int k) {
  std::complex<double> r(1.0, 0.0);
  const std::complex<double> base = k < 0 ? std::conj(w) : w;
  for (int i = 0; i < std::abs(k); ++i) r *= base;
  return r;
}

// Per-point quantities shared by every Hopf term.
struct HopfPoint {
  double rho2 = 0.0;
  Vec r2;
  std::array<std::complex<double>, kMaxHalfDim> phase;  // z_i / |z_i|
};

HopfPoint hopf_point(const Vec& z, int n) {
  HopfPoint h;
  h.rho2 = z.squaredNorm();
  h.r2.resize(n);
  for (int i = 0; i < n; ++i) {
    h.r2[i] = z[i] * z[i] + z[n + i] * z[n + i];
    const double r = std::sqrt(h.r2[i]);
    h.phase[static_cast<std::size_t>(i)] =
        r > 0.0 ? std::complex<double>(z[i] / r, z[n + i] / r) : std::complex<double>(1.0, 0.0);
  }
  return h;
}

// rho^{deg - P} prod_j R_j^{p_j}, and e^{i k . theta}.
void term_factors(const TrigTerm& t, const HopfPoint& h, int n, int degree, double& base,
                  std::complex<double>& phase, int& m) {
  int total_p = 0;
  base = t.coeff;
  for (int j = 0; j + 1 < n; ++j) {
    const int p = t.p[static_cast<std::size_t>(j)];
    total_p += p;
    base *= ipow(std::sqrt(h.r2[j]), p);
  }
  m = degree - total_p;
  const double rho = std::sqrt(h.rho2);
  base *= m >= 0 ? ipow(rho, m) : 1.0 / ipow(rho, -m);
  phase = std::complex<double>(1.0, 0.0);
  for (int i = 0; i < n; ++i)
    phase *= cpow(h.phase[static_cast<std::size_t>(i)], t.k[static_cast<std::size_t>(i)]);
}

}  // namespace

double HamiltonianSystem::value(const Vec& z) const {
  const int n = n_;
  if (z.size() != 2 * n) throw std::invalid_argument("Hamiltonian: point has the wrong dimension");
  double acc = 0.0;
  if (!hopf_) {
    for (const auto& m : monomials_) {
      double v = m.coeff;
      for (int k = 0; k < 2 * n; ++k) v *= ipow(z[k], m.exponents[static_cast<std::size_t>(k)]);
      acc += v;
    }
    return acc;
  }
  const HopfPoint h = hopf_point(z, n);
  for (const auto& t : terms_) {
    double base;
    std::complex<double> phase;
    int m;
    term_factors(t, h, n, degree_, base, phase, m);
    acc += base * (t.sine ? phase.imag() : phase.real());
  }
  return acc;
}

Vec HamiltonianSystem::gradient(const Vec& z) const {
  const int n = n_;
  if (z.size() != 2 * n) throw std::invalid_argument("Hamiltonian: point has the wrong dimension");
  Vec g = Vec::Zero(2 * n);
  if (!hopf_) {
    for (const auto& m : monomials_) {
      for (int k = 0; k < 2 * n; ++k) {
        const int ek = m.exponents[static_cast<std::size_t>(k)];
        if (ek == 0) continue;
        double v = m.coeff * ek * ipow(z[k], ek - 1);
        for (int l = 0; l < 2 * n; ++l)
          if (l != k) v *= ipow(z[l], m.exponents[static_cast<std::size_t>(l)]);
        g[k] += v;
      }
    }
    return g;
  }
  // grad of base * trig(k . theta): the radial factors contribute
  // m z / rho^2 + p_j z_j / R_j^2, the phase k_i (-y_i, x_i) / R_i^2.
  const HopfPoint h = hopf_point(z, n);
  for (const auto& t : terms_) {
    double base;
    std::complex<double> phase;
    int m;
    term_factors(t, h, n, degree_, base, phase, m);
    const double trig = t.sine ? phase.imag() : phase.real();
    const double dtrig = t.sine ? phase.real() : -phase.imag();
    const double value = base * trig;
    if (m != 0)
      for (int k = 0; k < 2 * n; ++k) g[k] += value * m * z[k] / h.rho2;
    for (int j = 0; j + 1 < n; ++j) {
      const int p = t.p[static_cast<std::size_t>(j)];
      if (p == 0) continue;
      g[j] += value * p * z[j] / h.r2[j];
      g[n + j] += value * p * z[n + j] / h.r2[j];
    }
    for (int i = 0; i < n; ++i) {
      const int k = t.k[static_cast<std::size_t>(i)];
      if (k == 0) continue;
      g[i] += base * dtrig * k * (-z[n + i]) / h.r2[i];
      g[n + i] += base * dtrig * k * z[i] / h.r2[i];
    }
  }
  return g;
}

Vec hamiltonian_vector_field(const HamiltonianSystem& sys, const Vec& z) {
  const int n = sys.dim_n();
  const Vec g = sys.gradient(z);
  Vec v(2 * n);
  v.head(n) = g.tail(n);   // dx/dt = dH/dy
  v.tail(n) = -g.head(n);  // dy/dt = -dH/dx
  return v;
}

int default_flow_steps(double t) {
  return std::max(200, static_cast<int>(std::ceil(200.0 * std::abs(t))));
}

FlowedBoundary flow(const HamiltonianSystem& sys, const Eigen::MatrixXd& points, double t,
                    int steps) {
  if (steps < 1) throw std::invalid_argument("flow: steps must be >= 1");
  if (points.rows() != 2 * sys.dim_n())
    throw std::invalid_argument("flow: points have the wrong dimension");
  FlowedBoundary out{points, t, steps};
  if (t == 0.0) return out;
  const double dt = t / steps;
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    Vec z = points.col(c);
    for (int s = 0; s < steps; ++s) {
      const Vec k1 = hamiltonian_vector_field(sys, z);
      const Vec k2 = hamiltonian_vector_field(sys, Vec(z + 0.5 * dt * k1));
      const Vec k3 = hamiltonian_vector_field(sys, Vec(z + 0.5 * dt * k2));
      const Vec k4 = hamiltonian_vector_field(sys, Vec(z + dt * k3));
      z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!z.allFinite()) {
      std::ostringstream msg;
      msg << "flow: trajectory of point " << c << " became non-finite";
      throw NumericalError(msg.str());
    }
    out.points.col(c) = z;
  }
  return out;
}

Eigen::MatrixXd boundary_cloud(const Body& body, const QuadratureRule& rule,
                               int boundary_samples) {
  const int n = body.dim_n();
  Eigen::MatrixXd directions;
  if (rule.kind() == RuleKind::kMonteCarlo) {
    directions.resize(2 * n, 2 * rule.nodes().cols());
    directions << rule.nodes(), -rule.nodes();
  } else {
    directions = hopf_rule(n, std::max(2, rule.radial_points()), boundary_samples).nodes();
  }
  Eigen::MatrixXd cloud(2 * n, directions.cols());
  for (Eigen::Index c = 0; c < directions.cols(); ++c)
    cloud.col(c) = support_point(body, Vec(directions.col(c))).point;
  return cloud;
}

double flowed_mean_width(const Body& body, const HamiltonianSystem& sys, double t,
                         const QuadratureRule& rule, int boundary_samples, int steps) {
  if (sys.dim_n() != body.dim_n() || rule.dim_n() != body.dim_n())
    throw std::invalid_argument("flowed_mean_width: dimension mismatch");
  const Eigen::MatrixXd cloud = boundary_cloud(body, rule, boundary_samples);
  const FlowedBoundary moved = flow(sys, cloud, t, steps);
  return mean_width(Body::point_cloud(moved.points), rule);
}

namespace {

int matching_samples(const QuadratureRule& rule) {
  return rule.kind() == RuleKind::kHopfProduct ? rule.angular_points() : 0;
}

}  // namespace

double first_variation(const Body& body, const HamiltonianSystem& sys, double h_step,
                       const QuadratureRule& rule) {
  if (!(h_step > 0.0)) throw std::invalid_argument("first_variation: h must be positive");
  const int samples = matching_samples(rule);
  const int steps = default_flow_steps(h_step);
  const double plus = flowed_mean_width(body, sys, h_step, rule, samples, steps);
  const double minus = flowed_mean_width(body, sys, -h_step, rule, samples, steps);
  return (plus - minus) / (2.0 * h_step);
}

double second_variation_fd(const Body& body, const HamiltonianSystem& sys, double h_step,
                           const QuadratureRule& rule) {
  if (!(h_step > 0.0)) throw std::invalid_argument("second_variation_fd: h must be positive");
  const int samples = matching_samples(rule);
  const int steps = default_flow_steps(h_step);
  const double plus = flowed_mean_width(body, sys, h_step, rule, samples, steps);
  const double zero = flowed_mean_width(body, sys, 0.0, rule, samples, steps);
  const double minus = flowed_mean_width(body, sys, -h_step, rule, samples, steps);
  return (plus - 2.0 * zero + minus) / (h_step * h_step);
}

double disk_second_variation(const std::function<double(double)>& h_theta,
                             int angular_points) {
  if (angular_points < 4 || angular_points % 2 != 0)
    throw std::invalid_argument("disk_second_variation: need an even count >= 4");
  const int m = angular_points;
  std::vector<double> samples(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    samples[static_cast<std::size_t>(k)] = h_theta(2.0 * std::numbers::pi * k / m);
    if (!std::isfinite(samples[static_cast<std::size_t>(k)]))
      throw NumericalError("disk_second_variation: non-finite sample");
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, samples);
  // Spectral derivatives multiply mode j by (i j)^order; the Nyquist mode has
  // no odd derivative and is dropped. The trapezoid integral of the squared
  // derivatives is then exact by discrete Parseval.
  std::vector<std::complex<double>> d1(static_cast<std::size_t>(m)), d2(d1.size());
  for (int k = 0; k < m; ++k) {
    const int j = k <= m / 2 ? k : k - m;
    const std::complex<double> ij(0.0, k == m / 2 ? 0.0 : static_cast<double>(j));
    d1[static_cast<std::size_t>(k)] = ij * spectrum[static_cast<std::size_t>(k)];
    d2[static_cast<std::size_t>(k)] = ij * ij * spectrum[static_cast<std::size_t>(k)];
  }
  std::vector<double> h1, h2;
  fft.inv(h1, d1);
  fft.inv(h2, d2);
  double acc = 0.0;
  for (int k = 0; k < m; ++k)
    acc += h2[static_cast<std::size_t>(k)] * h2[static_cast<std::size_t>(k)] -
           h1[static_cast<std::size_t>(k)] * h1[static_cast<std::size_t>(k)];
  return acc * (2.0 * std::numbers::pi / m) / std::numbers::pi;
}

}  // namespace sympwidth
