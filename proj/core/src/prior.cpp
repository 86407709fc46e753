#include "tvnet/prior.hpp"

#include <cmath>

#include "tvnet/distributions.hpp"
#include "tvnet/error.hpp"

namespace tvnet {

namespace {

void check_rho(double rho) {
  require(rho >= 0.0 && rho < 1.0, ErrorKind::kInvalidParameter, "rho must lie in [0, 1)", "rho");
}

void check_k(double k) {
  require(k > 0.0 && std::isfinite(k), ErrorKind::kInvalidParameter,
          "k must be positive and finite", "k");
}

// ln(e^k - 1) without overflow for large k.
double log_expm1(double k) { return k > 1.0 ? k + std::log1p(-std::exp(-k)) : std::log(std::expm1(k)); }

}  // namespace

CopulaCorrelation::CopulaCorrelation(double rho_value, std::size_t num_times)
    : rho(rho_value), T(num_times) {
  check_rho(rho);
  require(T >= 1, ErrorKind::kInvalidParameter, "T must be positive", "T");
}

Eigen::MatrixXd CopulaCorrelation::dense() const {
  const auto n = static_cast<Eigen::Index>(T);
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
  return s;
}

TridiagonalMatrix build_precision(const CopulaCorrelation& c) {
  check_rho(c.rho);
  const auto n = static_cast<Eigen::Index>(c.T);
  if (n == 1) return TridiagonalMatrix(Eigen::VectorXd::Ones(1), Eigen::VectorXd(0));
  const double r2 = c.rho * c.rho;
  const double denom = 1.0 - r2;
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, (1.0 + r2) / denom);
  diag[0] = 1.0 / denom;
  diag[n - 1] = 1.0 / denom;
  Eigen::VectorXd off = Eigen::VectorXd::Constant(n - 1, -c.rho / denom);
  return TridiagonalMatrix(std::move(diag), std::move(off));
}

double covariance_log_det(const CopulaCorrelation& c) {
  check_rho(c.rho);
  return static_cast<double>(c.T - 1) * std::log1p(-c.rho * c.rho);
}

double reverse_exp_log_density(double rho, double k) {
  check_k(k);
  check_rho(rho);
  return std::log(k) + k * rho - log_expm1(k);
}

double sample_reverse_exp(double k, RngStream& rng) {
  check_k(k);
  const double u = rng.uniform();
  double rho = k > 1.0 ? 1.0 + std::log(u + (1.0 - u) * std::exp(-k)) / k
                       : std::log1p(u * std::expm1(k)) / k;
  if (rho >= 1.0) rho = std::nextafter(1.0, 0.0);
  return rho < 0.0 ? 0.0 : rho;
}

Eigen::VectorXd sample_prior_trajectory_given_rho(double lambda, double rho, std::size_t T,
                                                  RngStream& rng) {
  check_rho(rho);
  require(T >= 1, ErrorKind::kInvalidParameter, "T must be positive", "T");
  // Stationary AR(1) recursion; exact for z ~ N(0, Sigma(rho)) and stable as rho -> 1.
  const double innovation_sd = std::sqrt(1.0 - rho * rho);
  Eigen::VectorXd b(static_cast<Eigen::Index>(T));
  double z = rng.normal();
  b[0] = laplace_from_normal(z, lambda);
  for (Eigen::Index t = 1; t < b.size(); ++t) {
    z = rho * z + innovation_sd * rng.normal();
    b[t] = laplace_from_normal(z, lambda);
  }
  return b;
}

Eigen::VectorXd sample_prior_trajectory(double lambda, double k, std::size_t T, RngStream& rng) {
  const double rho = sample_reverse_exp(k, rng);
  return sample_prior_trajectory_given_rho(lambda, rho, T, rng);
}

}  // namespace tvnet
