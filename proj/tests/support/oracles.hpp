#pragma once

// Independent reference implementations used as test oracles. Nothing here
// calls into the library's samplers or linear algebra helpers.

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

struct KsResult {
  double statistic = 0.0;
  double p = 1.0;
};

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_survival(double x);

KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

/// Normalized density on [lower, upper] from an unnormalized log density
/// tabulated on a uniform grid, with a piecewise-linear CDF.
class GridDensity {
 public:
  GridDensity(const std::function<double(double)>& log_density, double lower, double upper,
              std::size_t points = 20001);
  double cdf(double x) const;
  double mean() const;

 private:
  std::vector<double> x_;
  std::vector<double> cdf_;
  double mean_ = 0.0;
};

/// Adaptive Gauss-Kronrod integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b);

double normal_cdf(double z);
double laplace_cdf(double x, double lambda);
double inverse_gaussian_cdf(double x, double mean, double shape);
double reverse_exp_cdf(double rho, double k);

/// Dense AR(1) correlation rho^|t - t'|.
Eigen::MatrixXd ar1_correlation(double rho, std::size_t T);

/// A small regression problem: per time, response y_t and predictors X_t.
struct Problem {
  std::vector<Eigen::VectorXd> y;
  std::vector<Eigen::MatrixXd> x;
  std::size_t num_times() const { return y.size(); }
  std::size_t num_predictors() const { return static_cast<std::size_t>(x.front().cols()); }
};

struct Params {
  double a = 0.0;
  double tau = 1.0;
  Eigen::MatrixXd B;    // T x m
  Eigen::VectorXd rho;  // m
  Eigen::VectorXd nu;   // m
};

/// Log of the full joint density of data and parameters (up to a constant),
/// written out term by term with dense matrices.
double log_joint(const Problem& problem, const Params& params, double lambda, double k);

/// A draw of every parameter from the prior implied by the joint above:
/// a ~ N(0,1), tau ~ Gamma(1,1), rho ~ reverse-exp(k), 1/nu ~ Gamma((T+1)/2,
/// rate lambda^2/2), b_j ~ N(0, Sigma(rho)/nu).
Params draw_joint_prior(std::size_t T, std::size_t m, double lambda, double k, std::mt19937_64& rng);

/// Fresh responses y_t = a + X_t b_t + noise given parameters.
void simulate_responses(Problem& problem, const Params& params, std::mt19937_64& rng);

/// Bayesian lasso run separately at each time with its own mixing scale per
/// coefficient (intercept and noise precision shared), blocked over each
/// time's coefficient vector. Returns draws x (T * m) in t-major order.
Eigen::MatrixXd per_time_bayesian_lasso(const Problem& problem, double lambda, std::size_t iterations,
                                        std::size_t burn_in, std::uint64_t seed);

/// Blocked sampler for the joint above with every rho fixed at 0: one
/// mixing scale per predictor shared over time. Same layout as above.
Eigen::MatrixXd shared_scale_lasso(const Problem& problem, double lambda, std::size_t iterations,
                                   std::size_t burn_in, std::uint64_t seed);

}  // namespace oracle
