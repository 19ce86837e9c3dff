#include "sympwidth/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "sympwidth/bodies.hpp"
#include "sympwidth/cli.hpp"
#include "sympwidth/flows.hpp"
#include "sympwidth/forms.hpp"
#include "sympwidth/posopt.hpp"
#include "sympwidth/quad.hpp"
#include "sympwidth/scan.hpp"
#include "sympwidth/symp.hpp"

namespace sympwidth {

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  Verdict() { detail.precision(10); }

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "FAILED " << what << "; ";
    }
  }
};

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// Smooth toric body {z1^3 + z2^3 <= 1} in |z| coordinates.
ToricProfile cubic_profile(int samples) {
  const auto omega = [](double t) {
    return Eigen::Vector2d(kPi * std::pow(std::cos(t), 4.0 / 3.0),
                           kPi * std::pow(std::sin(t), 4.0 / 3.0));
  };
  const auto derivative = [](double t) {
    return Eigen::Vector2d(-kPi * 4.0 / 3.0 * std::cbrt(std::cos(t)) * std::sin(t),
                           kPi * 4.0 / 3.0 * std::cbrt(std::sin(t)) * std::cos(t));
  };
  return ToricProfile::from_curve(omega, derivative, 0.0, 0.5 * kPi, samples);
}

Body random_polyannulus_union(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> uni(0.2, 1.5);
  std::vector<Body> members;
  for (int k = 0; k < 3; ++k) {
    Vec a(2), b(2);
    for (int i = 0; i < 2; ++i) {
      const double x = uni(gen), y = uni(gen);
      a[i] = 0.5 * std::min(x, y);
      b[i] = std::max(x, y);
    }
    members.push_back(Body::polyannulus(a, b));
  }
  return Body::union_of(members);
}

// Unitary exp([[A, -B], [B, A]]) with A skew and B symmetric.
Mat random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 0.5);
  Eigen::MatrixXd a(n, n), b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a(i, j) = normal(gen);
      b(i, j) = normal(gen);
    }
  const Eigen::MatrixXd skew = a - a.transpose();
  const Eigen::MatrixXd sym = b + b.transpose();
  Eigen::MatrixXd g(2 * n, 2 * n);
  g << skew, -sym, sym, skew;
  return Mat(g.exp());
}

void quadrature_sanity(Verdict& v) {
  const int sizes[3][2] = {{2, 32}, {16, 32}, {12, 16}};
  for (int n = 1; n <= 3; ++n) {
    const QuadratureRule rule = hopf_rule(n, sizes[n - 1][0], sizes[n - 1][1]);
    const double one = integrate(rule, [](const Vec&) { return 1.0; });
    const double x1 = integrate(rule, [](const Vec& u) { return u[0] * u[0]; });
    v.detail << "n=" << n << " int1-1=" << one - 1.0 << " intx1^2-1/2n=" << x1 - 0.5 / n << "; ";
    v.require(std::abs(one - 1.0) <= 1e-12, "total mass n=" + std::to_string(n));
    v.require(std::abs(x1 - 0.5 / n) <= 1e-8, "second moment n=" + std::to_string(n));
  }
}

void closed_form_ellipsoids(Verdict& v) {
  const double grid[10][2] = {{1, 1},   {1, 2},   {2, 1},   {1, 3},   {0.5, 1},
                              {1, 1.5}, {2, 3},   {1, 4},   {3, 0.7}, {1.2, 2.5}};
  const QuadratureRule rule = hopf_rule(2, 64, 64);
  double worst = 0.0;
  for (const auto& p : grid) {
    const double q = mean_width(Body::symplectic_ellipsoid(vec2(p[0], p[1])), rule);
    worst = std::max(worst, std::abs(q - mw_symplectic_ellipsoid2(p[0], p[1])));
  }
  v.detail << "max |quadrature - formula| = " << worst;
  v.require(worst <= 1e-6, "closed-form agreement");
}

void lagrangian_bidisk(Verdict& v) {
  const QuadratureRule rule = hopf_rule(2, 24, 1280);
  const double bidisk = mean_width(Body::lagrangian_bidisk(), rule);
  const double poly = mean_width(Body::polydisk(vec2(1.0, 1.0)), rule);
  // Swapping x2 and y1 carries P(1,1) onto the bidisk.
  Mat swap = Mat::Identity(4, 4);
  swap(1, 1) = swap(2, 2) = 0.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  const double image = mean_width(Body::linear_image(swap, Body::polydisk(vec2(1.0, 1.0))), rule);
  v.detail << "M(PL)=" << bidisk << " M(P(1,1))=" << poly << " M(O P(1,1))=" << image;
  v.require(std::abs(bidisk - 8.0 / 3.0) <= 1e-6, "M(PL) = 8/3");
  v.require(std::abs(poly - bidisk) <= 1e-8, "M(P(1,1)) = M(PL)");
  v.require(std::abs(image - bidisk) <= 1e-12, "orthogonal image equals bidisk");
}

void williamson_oracle(Verdict& v) {
  double worst_lambda = 0.0, worst_normal = 0.0;
  bool symplectic = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> uni(0.3, 3.0);
    const int n = 1 + static_cast<int>(seed % 4);
    Vec a(n), b(n), diag(2 * n);
    std::vector<double> oracle(n);
    for (int j = 0; j < n; ++j) {
      a[j] = uni(gen);
      b[j] = uni(gen);
      diag[j] = 1.0 / (a[j] * a[j]);
      diag[n + j] = 1.0 / (b[j] * b[j]);
      oracle[j] = std::sqrt(a[j] * b[j]);
    }
    std::sort(oracle.begin(), oracle.end());
    const Mat form = diag.asDiagonal();
    const WilliamsonForm w = williamson(form);
    for (int j = 0; j < n; ++j)
      worst_lambda = std::max(worst_lambda, std::abs(w.lambda[j] - oracle[j]));
    const Mat p0 = w.p0.matrix();
    symplectic = symplectic && is_symplectic(p0, 1e-9);
    const Mat inv = p0.inverse();
    Vec normal(2 * n);
    for (int j = 0; j < n; ++j) normal[j] = normal[n + j] = 1.0 / (w.lambda[j] * w.lambda[j]);
    const double scale = std::max(1.0, max_abs(form));
    worst_normal = std::max(worst_normal,
                            max_abs(inv.transpose() * form * inv - Mat(normal.asDiagonal())) / scale);
  }
  v.detail << "max lambda error=" << worst_lambda << " max normal-form residual=" << worst_normal;
  v.require(worst_lambda <= 1e-10, "lambda oracle");
  v.require(worst_normal <= 1e-8, "normal form");
  v.require(symplectic, "P0 symplectic");
}

void ellipsoid_minimality(Verdict& v) {
  const QuadratureRule rule = hopf_rule(2, 16, 32);
  const DescentReport toric = minimize_position(Body::symplectic_ellipsoid(vec2(1, 2)), rule, 5, 1, 1e-6);
  const double norm = toric.best_param.to_vector().norm();
  const DescentReport skew = minimize_position(Body::ellipsoid(vec2(1, 1), vec2(4, 4)), rule, 5, 1, 1e-6);
  v.detail << "E(1,2): best=" << toric.best_value << " |X|=" << norm
           << "; E((1,1),(4,4)): best=" << skew.best_value;
  v.require(std::abs(toric.best_value - 28.0 / 9.0) <= 1e-3, "E(1,2) value 28/9");
  v.require(norm < 1e-2, "E(1,2) best_param norm");
  v.require(std::abs(skew.best_value - 4.0) <= 1e-3, "E((1,1),(4,4)) value 4");
}

void toric_criticality(Verdict& v) {
  const QuadratureRule rule = hopf_rule(2, 16, 32);
  const std::vector<std::pair<std::string, Body>> bodies = {
      {"P(1,2)", Body::polydisk(vec2(1, 2))},
      {"polyannulus union", random_polyannulus_union(7)},
      {"E(1,3)", Body::symplectic_ellipsoid(vec2(1, 3))}};
  const Vec lambda = vec2(2.0, 1.5);
  std::vector<double> s_grid;
  for (int k = -4; k <= 4; ++k) s_grid.push_back(0.25 * k);
  const Mat unitary = random_unitary(2, 11);
  for (const auto& [name, body] : bodies) {
    const double scale = mean_width(body, rule);
    double worst = 0.0;
    for (int k = 0; k < param_dimension(2); ++k)
      worst = std::max(worst,
                       std::abs(directional_derivative(body, SymHamiltonianParam::basis(2, k), rule).value));
    double min_second = INFINITY;
    for (const Mat& q : {Mat(Mat::Identity(4, 4)), unitary}) {
      const auto profile = geodesic_profile(body, SymplecticMatrix(q, 1e-9), lambda, s_grid, rule);
      for (std::size_t i = 1; i + 1 < profile.size(); ++i)
        min_second = std::min(min_second, (profile[i + 1].second - 2.0 * profile[i].second +
                                           profile[i - 1].second) / (0.25 * 0.25));
    }
    v.detail << name << ": max|dM|=" << worst << " min second difference=" << min_second << "; ";
    v.require(worst <= 1e-6 * scale, name + " directional derivatives");
    v.require(min_second >= -1e-6, name + " geodesic convexity");
  }
}

void non_minimality(Verdict& v) {
  const QuadratureRule rule = hopf_rule(2, 12, 24);
  const Body body = Body::ellipsoid(vec2(1, 2), vec2(2, 1));
  const double derivative = directional_derivative(body, SymHamiltonianParam::basis(2, 0), rule).value;
  v.detail << "dM=" << derivative;
  v.require(derivative < -1e-3, "negative coordinate derivative");
  const double i0 = i_integral(0.0, 1.0, 1.0, 4096);
  v.detail << " I(0)=" << i0;
  v.require(std::abs(i0) <= 1e-10, "I(0) = 0");
  for (double c : {0.1, 1.0, 10.0}) {
    const double ic = i_integral(c, 1.0, 1.0, 4096);
    v.detail << " I(" << c << ")=" << ic;
    v.require(ic < 0.0, "I(c) < 0");
  }
}

void bidisk_minimality(Verdict& v) {
  const QuadratureRule rule = hopf_rule(2, 16, 64);
  const DescentReport report = minimize_position(Body::lagrangian_bidisk(), rule, 5, 1, 1e-6);
  const double lowest = *std::min_element(report.start_values.begin(), report.start_values.end());
  const double norm = report.best_param.to_vector().norm();
  v.detail << "lowest start value=" << lowest << " best |X|=" << norm;
  v.require(lowest >= 8.0 / 3.0 - 1e-3, "no start below 8/3");
  v.require(norm < 1e-2, "best_param norm");
}

void toric_variation(Verdict& v) {
  const QuadratureRule rule = hopf_rule(2, 8, 16);
  const std::vector<std::pair<std::string, Body>> bodies = {
      {"E(1,2)", Body::symplectic_ellipsoid(vec2(1, 2))},
      {"B4", Body::ball(2)},
      {"cubic toric", Body::toric(cubic_profile(4096))}};
  for (const auto& [name, body] : bodies) {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      worst = std::max(worst, std::abs(first_variation(
                                  body, HamiltonianSystem::random_hopf_trig(2, 4, seed), 1e-3, rule)));
    v.detail << name << ": max|dM|=" << worst << "; ";
    v.require(worst <= 5e-4, name + " first variation");
  }
  const QuadratureRule control_rule = hopf_rule(2, 12, 24);
  const Body control = Body::ellipsoid(vec2(1, 2), vec2(2, 1));
  const double flowed = first_variation(control, HamiltonianSystem::preset("x1y1", 2), 1e-3, control_rule);
  const double linear =
      directional_derivative(control, SymHamiltonianParam::basis(2, 0), control_rule).value;
  v.detail << "control flow=" << flowed << " posopt=" << linear;
  v.require(flowed < 0.0, "control negative");
  v.require(std::abs(flowed - linear) <= 1e-3, "control matches posopt");
}

void disk_variation(Verdict& v) {
  const double c1 = disk_second_variation([](double t) { return std::cos(t); }, 64);
  const double c2 = disk_second_variation([](double t) { return std::cos(2.0 * t); }, 64);
  v.detail << "Q(cos)=" << c1 << " Q(cos2)=" << c2;
  v.require(std::abs(c1) <= 1e-9, "Q(cos) = 0");
  v.require(std::abs(c2 - 12.0) <= 1e-9, "Q(cos 2t) = 12");

  const QuadratureRule rule = hopf_rule(1, 2, 8192);
  const Body disk = Body::ball(1);
  const double fd1 = second_variation_fd(disk, HamiltonianSystem::preset("r2cos", 1), 1e-2, rule);
  const HamiltonianSystem cos2 = HamiltonianSystem::hopf_trig(1, {TrigTerm{{2}, {}, 1.0, false}});
  const double fd2 = second_variation_fd(disk, cos2, 1e-2, rule);
  v.detail << " fd(cos)=" << fd1 << " fd(cos2)=" << fd2;
  v.require(std::abs(fd1 - c1) <= 5e-2, "finite difference for cos");
  v.require(std::abs(fd2 - c2) <= 5e-2, "finite difference for cos 2t");

  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double lowest = INFINITY;
  for (int trial = 0; trial < 50; ++trial) {
    const int degree = 1 + trial % 6;
    std::vector<double> ca(degree + 1), sa(degree + 1);
    for (int k = 0; k <= degree; ++k) {
      ca[k] = uni(gen);
      sa[k] = uni(gen);
    }
    const auto h = [&](double t) {
      double s = 0.0;
      for (int k = 0; k <= degree; ++k) s += ca[k] * std::cos(k * t) + sa[k] * std::sin(k * t);
      return s;
    };
    lowest = std::min(lowest, disk_second_variation(h, 64));
  }
  v.detail << " min Q over random polynomials=" << lowest;
  v.require(lowest >= -1e-9, "Wirtinger nonnegativity");
}

void ramos_chain(Verdict& v) {
  const QuadratureRule rule = hopf_rule(2, 64, 4);
  RamosComparison cmp;
  try {
    cmp = ramos_compare(rule, 4096);
  } catch (const std::exception& e) {
    v.require(false, e.what());
    return;
  }
  const double coarse = mean_width(Body::toric(ramos_profile(2048)), rule);
  v.detail << "M(X0)=" << cmp.mw_x0 << " (N/2 diff " << std::abs(cmp.mw_x0 - coarse)
           << ") M(X1)=" << cmp.mw_x1 << " M(PL)=" << cmp.mw_pl;
  v.require(std::abs(cmp.mw_x1 - 2.63062) <= 1e-4, "M(X1) = 2.63062");
  v.require(cmp.mw_x0 < cmp.mw_x1 - 1e-3, "M(X0) < M(X1)");
  v.require(cmp.mw_pl == 8.0 / 3.0, "M(PL) = 8/3");
}

void staircase(Verdict& v) {
  std::vector<double> a_values;
  for (int k = 0; k <= 100; ++k) a_values.push_back(1.0 + 5.5 * k / 100.0);
  const auto rows = staircase_table(a_values, hopf_rule(2, 16, 32), false);
  int urysohn = 0, strict = 0, interior = 0;
  for (const auto& row : rows) {
    urysohn += row.urysohn;
    if (row.a > 1.0 && row.a < 2.0) {
      ++interior;
      strict += row.vol < row.mw_sq_quarter && row.mw_sq_quarter < row.cb;
    }
  }
  const std::vector<std::string> args = {"staircase", "--from", "1", "--to", "6.5", "--steps", "101"};
  std::ostringstream out1, out2, err;
  const int code1 = run(args, out1, err);
  const int code2 = run(args, out2, err);
  std::size_t lines = 0;
  for (char c : out1.str()) lines += c == '\n';
  v.detail << "rows=" << rows.size() << " urysohn=" << urysohn << " strict=" << strict << "/"
           << interior << " csv lines=" << lines << " exit=" << code1 << "," << code2;
  v.require(rows.size() == 101, "101 rows");
  v.require(urysohn == 101, "Urysohn on every row");
  v.require(strict == interior, "strict chain on (1,2)");
  v.require(code1 == 0 && code2 == 0, "CLI exit codes");
  // Config comment, header, 101 data rows.
  v.require(lines == 103, "CSV row count");
  v.require(out1.str() == out2.str(), "byte-identical CSV");
}

struct Criterion {
  const char* name;
  void (*body)(Verdict&);
  double seconds_limit;  // 0 = no runtime bound
};

const Criterion kCriteria[kCriterionCount] = {
    {"quadrature sanity", quadrature_sanity, 5.0},
    {"closed-form ellipsoid mean width", closed_form_ellipsoids, 30.0},
    {"Lagrangian bidisk mean width", lagrangian_bidisk, 0.0},
    {"Williamson normal form", williamson_oracle, 0.0},
    {"ellipsoid minimality", ellipsoid_minimality, 300.0},
    {"toric criticality and convexity", toric_criticality, 0.0},
    {"non-minimality of skew ellipsoids", non_minimality, 0.0},
    {"bidisk minimality", bidisk_minimality, 0.0},
    {"first variation of toric bodies", toric_variation, 0.0},
    {"disk second variation", disk_variation, 0.0},
    {"outer cover chain", ramos_chain, 120.0},
    {"staircase table", staircase, 0.0},
};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount)
    throw std::invalid_argument("criterion id must be in 1.." + std::to_string(kCriterionCount));
  const Criterion& c = kCriteria[id - 1];
  const auto start = std::chrono::steady_clock::now();
  Verdict verdict;
  try {
    c.body(verdict);
  } catch (const std::exception& e) {
    verdict.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.seconds_limit > 0.0 && seconds >= c.seconds_limit) {
    verdict.detail << " runtime " << seconds << " s";
    verdict.require(false, "runtime bound");
  }
  CriterionResult result;
  result.id = id;
  result.name = c.name;
  result.pass = verdict.pass;
  result.detail = verdict.detail.str();
  result.seconds = seconds;
  return result;
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id));
  return out;
}

}  // namespace sympwidth
