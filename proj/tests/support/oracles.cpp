#include "oracles.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.18) {
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
    double s = 0.0;
    for (int k = 1; k <= 20; ++k) s += std::exp(-static_cast<double>((2 * k - 1) * (2 * k - 1)) * c);
    return 1.0 - std::sqrt(2.0 * std::numbers::pi) / x * s;
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

namespace {

double ks_p(double d, double effective_n) {
  const double sn = std::sqrt(effective_n);
  return kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d);
}

}  // namespace

KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return {d, ks_p(d, n)};
}

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("empty sample");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return {d, ks_p(d, n * m / (n + m))};
}

GridDensity::GridDensity(const std::function<double(double)>& log_density, double lower, double upper,
                         std::size_t points) {
  x_.resize(points);
  std::vector<double> logd(points);
  double top = -INFINITY;
  for (std::size_t i = 0; i < points; ++i) {
    x_[i] = lower + (upper - lower) * static_cast<double>(i) / static_cast<double>(points - 1);
    logd[i] = log_density(x_[i]);
    top = std::max(top, logd[i]);
  }
  std::vector<double> dens(points);
  for (std::size_t i = 0; i < points; ++i) dens[i] = std::isfinite(logd[i]) ? std::exp(logd[i] - top) : 0.0;
  cdf_.assign(points, 0.0);
  double first_moment = 0.0;
  for (std::size_t i = 1; i < points; ++i) {
    const double h = x_[i] - x_[i - 1];
    cdf_[i] = cdf_[i - 1] + 0.5 * h * (dens[i] + dens[i - 1]);
    first_moment += 0.5 * h * (dens[i] * x_[i] + dens[i - 1] * x_[i - 1]);
  }
  const double total = cdf_.back();
  for (double& c : cdf_) c /= total;
  mean_ = first_moment / total;
}

double GridDensity::cdf(double x) const {
  if (x <= x_.front()) return 0.0;
  if (x >= x_.back()) return 1.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin());
  const double w = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
  return cdf_[i - 1] + w * (cdf_[i] - cdf_[i - 1]);
}

double GridDensity::mean() const { return mean_; }

double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-12);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double laplace_cdf(double x, double lambda) {
  return x < 0.0 ? 0.5 * std::exp(lambda * x) : 1.0 - 0.5 * std::exp(-lambda * x);
}

double inverse_gaussian_cdf(double x, double mean, double shape) {
  if (x <= 0.0) return 0.0;
  const double r = std::sqrt(shape / x);
  // exp(2 shape / mean) Phi(-r (x/mean + 1)) evaluated in log space.
  const double tail = normal_cdf(-r * (x / mean + 1.0));
  const double second = tail > 0.0 ? std::exp(2.0 * shape / mean + std::log(tail)) : 0.0;
  return normal_cdf(r * (x / mean - 1.0)) + second;
}

double reverse_exp_cdf(double rho, double k) {
  if (rho <= 0.0) return 0.0;
  if (rho >= 1.0) return 1.0;
  return std::expm1(k * rho) / std::expm1(k);
}

Eigen::MatrixXd ar1_correlation(double rho, std::size_t T) {
  Eigen::MatrixXd s(T, T);
  for (std::size_t i = 0; i < T; ++i)
    for (std::size_t j = 0; j < T; ++j)
      s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::pow(rho, static_cast<double>(i > j ? i - j : j - i));
  return s;
}

double log_joint(const Problem& problem, const Params& params, double lambda, double k) {
  const std::size_t T = problem.num_times();
  const std::size_t m = problem.num_predictors();
  double lp = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const Eigen::VectorXd b = params.B.row(static_cast<Eigen::Index>(t)).transpose();
    const Eigen::VectorXd r = problem.y[t] - problem.x[t] * b - Eigen::VectorXd::Constant(problem.y[t].size(), params.a);
    lp += 0.5 * static_cast<double>(r.size()) * std::log(params.tau) - 0.5 * params.tau * r.squaredNorm();
  }
  lp += -params.tau - 0.5 * params.a * params.a;
  for (std::size_t j = 0; j < m; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const double rho = params.rho(jj);
    const double nu = params.nu(jj);
    const Eigen::MatrixXd sigma = ar1_correlation(rho, T);
    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    const Eigen::VectorXd b = params.B.col(jj);
    const double quad = b.dot(llt.solve(b));
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < llt.matrixL().rows(); ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
    lp += k * rho - lambda * lambda / (2.0 * nu) - 1.5 * std::log(nu) - 0.5 * log_det - 0.5 * nu * quad;
  }
  return lp;
}

namespace {

double std_normal(std::mt19937_64& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }
double std_uniform(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Inverse-Gaussian draw by inverting its CDF numerically.
double inverse_gaussian_draw(double mean, double shape, std::mt19937_64& rng) {
  const double z = std_normal(rng);
  if (!std::isfinite(mean)) return shape / (z * z);  // Levy limit
  // Smaller root of shape (x - mean)^2 / (mean^2 x) = z^2, written without
  // cancellation, then the root choice. Boost's quantile gives NaN at both
  // extremes of shape / mean, which these chains reach.
  const double w = mean * z * z / shape;
  const double x1 = mean / (1.0 + 0.5 * w + std::sqrt(w + 0.25 * w * w));
  return std_uniform(rng) * (mean + x1) <= mean ? x1 : mean * mean / x1;
}

Eigen::VectorXd mvn_from_precision(const Eigen::MatrixXd& precision, const Eigen::VectorXd& shift,
                                   std::mt19937_64& rng) {
  const Eigen::LLT<Eigen::MatrixXd> llt(precision);
  Eigen::VectorXd z(shift.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = std_normal(rng);
  const Eigen::VectorXd mean = llt.solve(shift);
  return mean + llt.matrixU().solve(z);
}

double draw_intercept(const Problem& p, const Eigen::MatrixXd& B, double tau, std::mt19937_64& rng) {
  double sum = 0.0;
  double n = 0.0;
  for (std::size_t t = 0; t < p.num_times(); ++t) {
    const Eigen::VectorXd b = B.row(static_cast<Eigen::Index>(t)).transpose();
    sum += (p.y[t] - p.x[t] * b).sum();
    n += static_cast<double>(p.y[t].size());
  }
  const double var = 1.0 / (1.0 + n * tau);
  return var * tau * sum + std::sqrt(var) * std_normal(rng);
}

double draw_precision(const Problem& p, const Eigen::MatrixXd& B, double a, std::mt19937_64& rng) {
  double rss = 0.0;
  double n = 0.0;
  for (std::size_t t = 0; t < p.num_times(); ++t) {
    const Eigen::VectorXd b = B.row(static_cast<Eigen::Index>(t)).transpose();
    rss += (p.y[t] - p.x[t] * b - Eigen::VectorXd::Constant(p.y[t].size(), a)).squaredNorm();
    n += static_cast<double>(p.y[t].size());
  }
  return std::gamma_distribution<double>(1.0 + n / 2.0, 1.0 / (1.0 + rss / 2.0))(rng);
}

// Shared machinery: `weights(t, j)` holds the prior precision of b_{t,j}.
template <class UpdateWeights>
Eigen::MatrixXd blocked_lasso(const Problem& p, double lambda, std::size_t iterations, std::size_t burn_in,
                              std::uint64_t seed, UpdateWeights update_weights) {
  std::mt19937_64 rng(seed);
  const auto T = static_cast<Eigen::Index>(p.num_times());
  const auto m = static_cast<Eigen::Index>(p.num_predictors());
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(T, m);
  Eigen::MatrixXd weights = Eigen::MatrixXd::Constant(T, m, lambda * lambda);
  double a = 0.0;
  double tau = 1.0;
  Eigen::MatrixXd out(static_cast<Eigen::Index>(iterations - burn_in), T * m);
  for (std::size_t it = 0; it < iterations; ++it) {
    a = draw_intercept(p, B, tau, rng);
    tau = draw_precision(p, B, a, rng);
    update_weights(B, weights, rng);
    for (Eigen::Index t = 0; t < T; ++t) {
      const auto& X = p.x[static_cast<std::size_t>(t)];
      const auto& y = p.y[static_cast<std::size_t>(t)];
      Eigen::MatrixXd precision = tau * X.transpose() * X;
      precision.diagonal() += weights.row(t).transpose();
      const Eigen::VectorXd shift = tau * X.transpose() * (y - Eigen::VectorXd::Constant(y.size(), a));
      B.row(t) = mvn_from_precision(precision, shift, rng).transpose();
    }
    if (it >= burn_in) {
      for (Eigen::Index t = 0; t < T; ++t)
        for (Eigen::Index j = 0; j < m; ++j) out(static_cast<Eigen::Index>(it - burn_in), t * m + j) = B(t, j);
    }
  }
  return out;
}

}  // namespace

Params draw_joint_prior(std::size_t T, std::size_t m, double lambda, double k, std::mt19937_64& rng) {
  Params out;
  out.a = std_normal(rng);
  out.tau = std::gamma_distribution<double>(1.0, 1.0)(rng);
  out.B.resize(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(m));
  out.rho.resize(static_cast<Eigen::Index>(m));
  out.nu.resize(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const double u = std_uniform(rng);
    out.rho(jj) = std::log1p(u * std::expm1(k)) / k;
    const double s =
        std::gamma_distribution<double>(0.5 * static_cast<double>(T + 1), 2.0 / (lambda * lambda))(rng);
    out.nu(jj) = 1.0 / s;
    const Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(ar1_correlation(out.rho(jj), T)).matrixL();
    Eigen::VectorXd z(static_cast<Eigen::Index>(T));
    for (Eigen::Index t = 0; t < z.size(); ++t) z(t) = std_normal(rng);
    out.B.col(jj) = std::sqrt(s) * (L * z);
  }
  return out;
}

void simulate_responses(Problem& problem, const Params& params, std::mt19937_64& rng) {
  const double sd = 1.0 / std::sqrt(params.tau);
  for (std::size_t t = 0; t < problem.num_times(); ++t) {
    const Eigen::VectorXd b = params.B.row(static_cast<Eigen::Index>(t)).transpose();
    Eigen::VectorXd y = problem.x[t] * b;
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += params.a + sd * std_normal(rng);
    problem.y[t] = y;
  }
}

Eigen::MatrixXd per_time_bayesian_lasso(const Problem& problem, double lambda, std::size_t iterations,
                                        std::size_t burn_in, std::uint64_t seed) {
  return blocked_lasso(problem, lambda, iterations, burn_in, seed,
                       [lambda](const Eigen::MatrixXd& B, Eigen::MatrixXd& w, std::mt19937_64& rng) {
                         for (Eigen::Index t = 0; t < B.rows(); ++t)
                           for (Eigen::Index j = 0; j < B.cols(); ++j) {
                             const double ab = std::abs(B(t, j));
                             const double mean = ab > 1e-300 ? lambda / ab : INFINITY;
                             w(t, j) = inverse_gaussian_draw(mean, lambda * lambda, rng);
                           }
                       });
}

Eigen::MatrixXd shared_scale_lasso(const Problem& problem, double lambda, std::size_t iterations,
                                   std::size_t burn_in, std::uint64_t seed) {
  return blocked_lasso(problem, lambda, iterations, burn_in, seed,
                       [lambda](const Eigen::MatrixXd& B, Eigen::MatrixXd& w, std::mt19937_64& rng) {
                         for (Eigen::Index j = 0; j < B.cols(); ++j) {
                           const double norm = B.col(j).norm();
                           const double mean = norm > 1e-300 ? lambda / norm : INFINITY;
                           w.col(j).setConstant(inverse_gaussian_draw(mean, lambda * lambda, rng));
                         }
                       });
}

}  // namespace oracle
