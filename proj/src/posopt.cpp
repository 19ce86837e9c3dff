#include "sympwidth/posopt.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sympwidth/errors.hpp"

namespace sympwidth {

double image_mean_width(const Body& body, const Mat& p, const QuadratureRule& rule) {
  // h_{PK}(u) = h_K(P^T u).
  return mean_width(body, rule.transformed(p.transpose()));
}

double position_objective(const Body& body, const SymHamiltonianParam& x,
                          const QuadratureRule& rule) {
  if (x.dim_n() != body.dim_n())
    throw std::invalid_argument("position_objective: parameter and body differ in dimension");
  return image_mean_width(body, exp_param(x).matrix(), rule);
}

DirectionalDerivative directional_derivative(const Body& body,
                                             const SymHamiltonianParam& x,
                                             const QuadratureRule& rule) {
  if (x.dim_n() != body.dim_n() || rule.dim_n() != body.dim_n())
    throw std::invalid_argument("directional_derivative: dimension mismatch");
  const Mat m = x.matrix();
  std::vector<unsigned char> excluded(rule.size(), 0);
  const double value =
      reduce_blocks(rule.size(), [&](std::size_t begin, std::size_t end) {
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
          const Vec u = rule.node(i);
          const Vec xu = m * u;
          const SupportPoint plus = support_point(body, u);
          const SupportPoint minus = support_point(body, Vec(-u));
          if (plus.ambiguous || minus.ambiguous) {
            excluded[i] = 1;
            continue;
          }
          acc += rule.weight(i) * (plus.point.dot(xu) - minus.point.dot(xu));
        }
        return acc;
      });
  if (!std::isfinite(value)) throw NumericalError("directional_derivative: non-finite value");
  std::size_t count = 0;
  for (unsigned char e : excluded) count += e;
  return {value, count};
}

std::vector<std::pair<double, double>> geodesic_profile(
    const Body& body, const SymplecticMatrix& q, const Vec& lambda,
    const std::vector<double>& s_grid, const QuadratureRule& rule) {
  if (q.dim_n() != body.dim_n() || lambda.size() != body.dim_n())
    throw std::invalid_argument("geodesic_profile: dimension mismatch");
  if (!(lambda.array() > 0.0).all())
    throw std::invalid_argument("geodesic_profile: lambda must be positive");
  std::vector<std::pair<double, double>> out;
  out.reserve(s_grid.size());
  for (double s : s_grid)
    out.emplace_back(s, image_mean_width(body, euler_geodesic(q.matrix(), lambda, s), rule));
  return out;
}

namespace {

struct RunResult {
  Eigen::VectorXd p;
  double value = 0.0;
  double initial = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::pair<int, double>> trace;
};

RunResult descend(const std::function<double(const Eigen::VectorXd&)>& f,
                  Eigen::VectorXd p, const DescentOptions& opt) {
  RunResult run;
  double value = f(p);
  run.initial = value;
  run.trace.emplace_back(0, value);
  Eigen::VectorXd grad(p.size());
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      Eigen::VectorXd hi = p, lo = p;
      hi[k] += opt.fd_step;
      lo[k] -= opt.fd_step;
      grad[k] = (f(hi) - f(lo)) / (2.0 * opt.fd_step);
    }
    run.gradient_norm = grad.norm();
    if (run.gradient_norm < opt.tol) {
      run.converged = true;
      break;
    }
    double step = 1.0;
    bool accepted = false;
    while (step > 1e-14) {
      const Eigen::VectorXd trial = p - step * grad;
      const double tv = f(trial);
      if (tv <= value - opt.armijo * step * run.gradient_norm * run.gradient_norm) {
        p = trial;
        value = tv;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no descent possible at this resolution
    run.trace.emplace_back(it + 1, value);
  }
  run.p = std::move(p);
  run.value = value;
  run.iterations = it;
  return run;
}

}  // namespace

DescentReport minimize_position(const Body& body, const QuadratureRule& rule,
                                const DescentOptions& options) {
  if (options.starts < 1) throw std::invalid_argument("minimize_position: starts must be >= 1");
  if (rule.dim_n() != body.dim_n())
    throw std::invalid_argument("minimize_position: body and rule differ in dimension");
  const int n = body.dim_n();
  const int dim = param_dimension(n);
  const auto objective = [&](const Eigen::VectorXd& p) {
    return position_objective(body, SymHamiltonianParam::from_vector(n, p), rule);
  };

  std::mt19937_64 gen(options.seed);
  std::normal_distribution<double> normal(0.0, options.start_scale);
  std::vector<Eigen::VectorXd> starts;
  for (int s = 0; s < options.starts; ++s) {
    Eigen::VectorXd p(dim);
    for (int k = 0; k < dim; ++k) p[k] = normal(gen);
    starts.push_back(std::move(p));
  }

  DescentReport report;
  bool have_best = false;
  RunResult best;
  for (const auto& start : starts) {
    RunResult run = descend(objective, start, options);
    report.start_values.push_back(run.value);
    report.start_param_norms.push_back(run.p.norm());
    if (!have_best || run.value < best.value) {
      best = std::move(run);
      have_best = true;
    }
  }
  report.best_param = SymHamiltonianParam::from_vector(n, best.p);
  report.best_value = best.value;
  report.initial_value = best.initial;
  report.gradient_norm = best.gradient_norm;
  report.iterations = best.iterations;
  report.converged = best.converged;
  report.trace = std::move(best.trace);
  return report;
}

DescentReport minimize_position(const Body& body, const QuadratureRule& rule, int starts,
                                std::uint64_t seed, double tol) {
  DescentOptions options;
  options.starts = starts;
  options.seed = seed;
  options.tol = tol;
  return minimize_position(body, rule, options);
}

double i_integral(double c, double a1, double b1, int angular_points) {
  if (!(c > -1.0)) throw std::invalid_argument("i_integral: need c > -1");
  if (!(a1 > 0.0) || b1 < 0.0)
    throw std::invalid_argument("i_integral: need A1 > 0 and B1 >= 0");
  if (angular_points < 4) throw std::invalid_argument("i_integral: need >= 4 points");
  const double h = 2.0 * std::numbers::pi / angular_points;
  double acc = 0.0;
  for (int k = 0; k < angular_points; ++k) {
    const double t = k * h;
    const double c2 = std::cos(t) * std::cos(t);
    const double s2 = std::sin(t) * std::sin(t);
    acc += a1 * (c2 - (1.0 + c) * s2) / std::sqrt(a1 * (c2 + (1.0 + c) * s2) + b1);
  }
  return acc * h;
}

GreenMoments green_moments(const std::function<double(double)>& h, int angular_points) {
  if (angular_points < 4) throw std::invalid_argument("green_moments: need >= 4 points");
  const double step = 2.0 * std::numbers::pi / angular_points;
  GreenMoments out;
  for (int k = 0; k < angular_points; ++k) {
    const double t = (k + 0.5) * step;
    const double v = h(t);
    if (!std::isfinite(v)) throw NumericalError("green_moments: non-finite support value");
    out.c2 += v * std::cos(2.0 * t);
    out.s2 += v * std::sin(2.0 * t);
  }
  out.c2 *= step;
  out.s2 *= step;
  return out;
}

GmMoment gm_moment_matrix(const Body& body, const QuadratureRule& rule, double tol) {
  if (rule.dim_n() != body.dim_n())
    throw std::invalid_argument("gm_moment_matrix: body and rule differ in dimension");
  const int d = rule.ambient_dim();
  GmMoment out;
  // Symmetrised in u -> -u, which leaves the integral unchanged.
  out.matrix = integrate_matrix(
      rule,
      [&](const Vec& u) -> Mat {
        const double h = 0.5 * (support_unchecked(body, u) + support_unchecked(body, Vec(-u)));
        return h * u * u.transpose();
      },
      d, d);
  out.mean_width = 2.0 * out.matrix.trace();
  out.target = out.mean_width / (2.0 * d);
  out.deviation = max_abs(out.matrix - out.target * Mat::Identity(d, d));
  out.holds = out.deviation <= tol;
  return out;
}

}  // namespace sympwidth
