#include "sympwidth/quad.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sympwidth/errors.hpp"

namespace sympwidth {

namespace {

constexpr std::size_t kBlockSize = 4096;
int hardware_threads() { return std::max(1, static_cast<int>(std::thread::hardware_concurrency())); }

std::atomic<int> g_max_threads{hardware_threads()};

template <typename T>
T pairwise_combine(std::vector<T> parts) {
  if (parts.empty()) return T{};
  while (parts.size() > 1) {
    std::vector<T> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
      next.push_back(parts[i] + parts[i + 1]);
    if (parts.size() % 2 == 1) next.push_back(parts.back());
    parts = std::move(next);
  }
  return parts.front();
}

// Runs body(block) for every block index, possibly on several threads, and
// rethrows the first exception raised by any block.
void for_each_block(std::size_t blocks,
                    const std::function<void(std::size_t)>& body) {
  const int workers =
      static_cast<int>(std::min<std::size_t>(blocks, std::max(1, g_max_threads.load())));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t b = next++; b < blocks; b = next++) {
        try {
          body(b);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

void set_max_threads(int threads) {
  g_max_threads = threads <= 0 ? hardware_threads() : threads;
}
int max_threads() { return g_max_threads.load(); }

QuadratureRule::QuadratureRule(int dim_n, Eigen::MatrixXd nodes,
                               std::vector<double> weights, RuleKind kind,
                               int radial_points, int angular_points)
    : dim_n_(dim_n),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      kind_(kind),
      radial_points_(radial_points),
      angular_points_(angular_points) {
  if (dim_n_ < 1 || dim_n_ > kMaxHalfDim)
    throw std::invalid_argument("quadrature: half-dimension must lie in [1, 4]");
  if (nodes_.rows() != 2 * dim_n_ ||
      static_cast<std::size_t>(nodes_.cols()) != weights_.size())
    throw std::invalid_argument("quadrature: node/weight shape mismatch");
}

QuadratureRule QuadratureRule::transformed(const Mat& m) const {
  Eigen::MatrixXd mapped = Eigen::MatrixXd(m) * nodes_;
  return QuadratureRule(dim_n_, std::move(mapped), weights_, kind_,
                        radial_points_, angular_points_);
}

void gauss_legendre_unit(int points, std::vector<double>& nodes,
                         std::vector<double>& weights) {
  if (points < 1) throw std::invalid_argument("gauss-legendre: need >= 1 point");
  nodes.assign(static_cast<std::size_t>(points), 0.0);
  weights.assign(static_cast<std::size_t>(points), 0.0);
  const int n = points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // Now p1 = P_n(x) and p0 = P_{n-1}(x).
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] -> [0, 1]; x is descending in i.
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
    weights[static_cast<std::size_t>(i)] = 0.5 * w;
    weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
  }
}

QuadratureRule hopf_rule(int n, int radial_points, int angular_points) {
  if (n < 1) throw std::invalid_argument("hopf_rule: n must be >= 1");
  if (n > kMaxHalfDim)
    throw std::invalid_argument("hopf_rule: dimension cap is 2n <= 8");
  if (angular_points < 4)
    throw std::invalid_argument("hopf_rule: angular_points must be >= 4");
  if (angular_points % 2 != 0)
    throw std::invalid_argument(
        "hopf_rule: angular_points must be even (antipodal closure)");
  if (n >= 2 && radial_points < 2)
    throw std::invalid_argument("hopf_rule: radial_points must be >= 2");

  const double pi = std::numbers::pi;
  const int m = n - 1;

  // Radial part: list of (r_1..r_n, weight) with sum r_j^2 = 1.
  std::vector<std::vector<double>> radii;
  std::vector<double> radial_weights;
  if (m == 0) {
    radii.push_back({1.0});
    radial_weights.push_back(1.0);
  } else {
    std::vector<double> t, w;
    gauss_legendre_unit(radial_points, t, w);
    std::vector<double> sn(t.size()), cs(t.size()), jw(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      sn[k] = std::sin(0.5 * pi * t[k]);
      cs[k] = std::cos(0.5 * pi * t[k]);
      jw[k] = w[k] * 0.5 * pi * std::sin(pi * t[k]);
    }
    double factorial = 1.0;
    for (int j = 2; j <= m; ++j) factorial *= j;
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    const std::size_t total = static_cast<std::size_t>(std::pow(radial_points, m));
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rest = flat;
      for (int j = m - 1; j >= 0; --j) {
        idx[static_cast<std::size_t>(j)] = static_cast<int>(rest % radial_points);
        rest /= static_cast<std::size_t>(radial_points);
      }
      std::vector<double> r(static_cast<std::size_t>(n));
      double tail = 1.0;  // product of cosines so far = sqrt of Duffy remainder
      double weight = factorial;
      for (int j = 0; j < m; ++j) {
        const auto k = static_cast<std::size_t>(idx[static_cast<std::size_t>(j)]);
        r[static_cast<std::size_t>(j)] = tail * sn[k];
        // Duffy Jacobian (1 - v_j)^{m-1-j} with 1 - v_j = cos^2.
        weight *= jw[k] * std::pow(cs[k], 2 * (m - 1 - j));
        tail *= cs[k];
      }
      r[static_cast<std::size_t>(m)] = tail;
      radii.push_back(std::move(r));
      radial_weights.push_back(weight);
    }
    double total_weight = 0.0;
    for (double x : radial_weights) total_weight += x;
    for (double& x : radial_weights) x /= total_weight;
  }

  // Angular tensor grid.
  std::vector<double> cos_t(static_cast<std::size_t>(angular_points)),
      sin_t(static_cast<std::size_t>(angular_points));
  for (int k = 0; k < angular_points; ++k) {
    const double theta = (k + 0.5) * 2.0 * pi / angular_points;
    cos_t[static_cast<std::size_t>(k)] = std::cos(theta);
    sin_t[static_cast<std::size_t>(k)] = std::sin(theta);
  }
  const std::size_t angular_total =
      static_cast<std::size_t>(std::pow(angular_points, n));
  const double angular_weight = 1.0 / static_cast<double>(angular_total);
  const std::size_t count = radii.size() * angular_total;

  Eigen::MatrixXd nodes(2 * n, static_cast<Eigen::Index>(count));
  std::vector<double> weights;
  weights.reserve(count);
  std::vector<int> aidx(static_cast<std::size_t>(n), 0);
  Eigen::Index col = 0;
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    const auto& r = radii[ri];
    for (std::size_t flat = 0; flat < angular_total; ++flat) {
      std::size_t rest = flat;
      for (int i = n - 1; i >= 0; --i) {
        aidx[static_cast<std::size_t>(i)] =
            static_cast<int>(rest % static_cast<std::size_t>(angular_points));
        rest /= static_cast<std::size_t>(angular_points);
      }
      for (int i = 0; i < n; ++i) {
        const auto a = static_cast<std::size_t>(aidx[static_cast<std::size_t>(i)]);
        nodes(i, col) = r[static_cast<std::size_t>(i)] * cos_t[a];
        nodes(n + i, col) = r[static_cast<std::size_t>(i)] * sin_t[a];
      }
      weights.push_back(radial_weights[ri] * angular_weight);
      ++col;
    }
  }
  return QuadratureRule(n, std::move(nodes), std::move(weights),
                        RuleKind::kHopfProduct, n >= 2 ? radial_points : 0,
                        angular_points);
}

QuadratureRule monte_carlo_rule(int n, std::size_t samples, std::uint64_t seed) {
  if (n < 1 || n > kMaxHalfDim)
    throw std::invalid_argument("monte_carlo_rule: n must lie in [1, 4]");
  if (samples < 1) throw std::invalid_argument("monte_carlo_rule: samples must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd nodes(2 * n, static_cast<Eigen::Index>(samples));
  for (Eigen::Index c = 0; c < nodes.cols(); ++c) {
    double norm = 0.0;
    do {
      for (int r = 0; r < 2 * n; ++r) nodes(r, c) = normal(gen);
      norm = nodes.col(c).norm();
    } while (norm == 0.0);
    nodes.col(c) /= norm;
  }
  std::vector<double> weights(samples, 1.0 / static_cast<double>(samples));
  return QuadratureRule(n, std::move(nodes), std::move(weights),
                        RuleKind::kMonteCarlo);
}

double reduce_blocks(std::size_t count,
                     const std::function<double(std::size_t, std::size_t)>& partial) {
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<double> parts(blocks, 0.0);
  for_each_block(blocks, [&](std::size_t b) {
    const std::size_t begin = b * kBlockSize;
    parts[b] = partial(begin, std::min(count, begin + kBlockSize));
  });
  return pairwise_combine(std::move(parts));
}

double integrate(const QuadratureRule& rule, const SphereFunction& f) {
  return reduce_blocks(rule.size(), [&](std::size_t begin, std::size_t end) {
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const Vec u = rule.node(i);
      const double v = f(u);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "integrand is non-finite (" << v << ") at node " << i << " = ["
            << u.transpose() << "]";
        throw NumericalError(msg.str());
      }
      acc += rule.weight(i) * v;
    }
    return acc;
  });
}

Mat integrate_matrix(const QuadratureRule& rule,
                     const std::function<Mat(const Vec&)>& f, int rows, int cols) {
  const std::size_t count = rule.size();
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<Mat> parts(blocks, Mat::Zero(rows, cols));
  for_each_block(blocks, [&](std::size_t b) {
    Mat acc = Mat::Zero(rows, cols);
    const std::size_t end = std::min(count, (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < end; ++i) {
      const Mat v = f(rule.node(i));
      if (!v.allFinite()) {
        std::ostringstream msg;
        msg << "matrix integrand is non-finite at node " << i;
        throw NumericalError(msg.str());
      }
      acc += rule.weight(i) * v;
    }
    parts[b] = acc;
  });
  if (parts.empty()) return Mat::Zero(rows, cols);
  return pairwise_combine(std::move(parts));
}

}  // namespace sympwidth
