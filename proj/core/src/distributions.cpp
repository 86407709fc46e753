#include "tvnet/distributions.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <limits>

#include "tvnet/error.hpp"

namespace tvnet {

namespace {

constexpr double kMinProbability = 1e-300;

void check_rate(double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), ErrorKind::kInvalidParameter,
          "Laplace rate must be positive and finite", "lambda");
}

}  // namespace

double laplace_cdf(double x, double lambda) {
  check_rate(lambda);
  if (x < 0.0) return 0.5 * std::exp(lambda * x);
  return 1.0 - 0.5 * std::exp(-lambda * x);
}

double laplace_quantile(double p, double lambda) {
  check_rate(lambda);
  require(p > 0.0 && p < 1.0, ErrorKind::kInvalidParameter,
          "probability must lie strictly inside (0, 1)", "p");
  if (p < 0.5) return std::log(2.0 * p) / lambda;
  return -std::log(2.0 * (1.0 - p)) / lambda;
}

double laplace_log_density(double x, double lambda) {
  check_rate(lambda);
  return std::log(0.5 * lambda) - lambda * std::abs(x);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, ErrorKind::kInvalidParameter,
          "probability must lie strictly inside (0, 1)", "p");
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

double laplace_from_normal(double z, double lambda) {
  check_rate(lambda);
  // Upper-tail mass Phi(-|z|) stays representable where Phi(|z|) rounds to 1.
  const double tail = std::max(0.5 * std::erfc(std::abs(z) / std::sqrt(2.0)), kMinProbability);
  const double magnitude = -std::log(2.0 * tail) / lambda;
  return z < 0.0 ? -magnitude : magnitude;
}

double normal_from_laplace(double b, double lambda) {
  check_rate(lambda);
  const double tail = std::max(0.5 * std::exp(-lambda * std::abs(b)), kMinProbability);
  const double magnitude = std::sqrt(2.0) * boost::math::erfc_inv(2.0 * tail);
  return b < 0.0 ? -magnitude : magnitude;
}

double sample_inverse_gaussian(double mean, double shape, RngStream& rng) {
  require(mean > 0.0 && std::isfinite(mean), ErrorKind::kInvalidParameter,
          "inverse-Gaussian mean must be positive and finite", "mu");
  require(shape > 0.0 && std::isfinite(shape), ErrorKind::kInvalidParameter,
          "inverse-Gaussian shape must be positive and finite", "lambda");
  const double z = rng.normal();
  const double w = mean * z * z / (2.0 * shape);
  // mean * (1 + w - sqrt(w^2 + 2w)) rewritten without cancellation.
  const double x = mean / (1.0 + w + std::sqrt(w * w + 2.0 * w));
  if (rng.uniform() * (mean + x) <= mean) return x;
  return mean * mean / x;
}

double sample_levy(double scale, RngStream& rng) {
  require(scale > 0.0 && std::isfinite(scale), ErrorKind::kInvalidParameter,
          "Levy scale must be positive and finite", "scale");
  double z;
  do {
    z = rng.normal();
  } while (z == 0.0);
  return scale / (z * z);
}

}  // namespace tvnet
