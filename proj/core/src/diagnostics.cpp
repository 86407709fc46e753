#include "tvnet/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "tvnet/error.hpp"

namespace tvnet {

namespace {

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

void check_chain(std::span<const double> chain) {
  require(chain.size() >= 100, ErrorKind::kInvalidInput, "diagnostics need at least 100 values");
  for (double v : chain) require(std::isfinite(v), ErrorKind::kInvalidInput, "chain has non-finite values");
}

}  // namespace

double spectral_variance_zero(std::span<const double> x) {
  const std::size_t n = x.size();
  require(n >= 2, ErrorKind::kUndefinedVariance, "series too short for a variance estimate");
  const double mean = mean_of(x);
  auto autocov = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t i = lag; i < n; ++i) s += (x[i] - mean) * (x[i - lag] - mean);
    return s / static_cast<double>(n);
  };
  const auto window = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.04 * static_cast<double>(n))));
  double s0 = autocov(0);
  for (std::size_t h = 1; h <= window && h < n; ++h) {
    s0 += 2.0 * (1.0 - static_cast<double>(h) / static_cast<double>(window + 1)) * autocov(h);
  }
  if (!(s0 > 0.0) || !std::isfinite(s0)) {
    fail(ErrorKind::kUndefinedVariance, "spectral variance estimate is not positive (constant chain?)");
  }
  return s0;
}

GewekeResult geweke_test(std::span<const double> chain) {
  check_chain(chain);
  const std::size_t n = chain.size();
  const auto first = chain.subspan(0, static_cast<std::size_t>(0.1 * static_cast<double>(n)));
  const auto last_len = static_cast<std::size_t>(0.5 * static_cast<double>(n));
  const auto last = chain.subspan(n - last_len);
  const double var = spectral_variance_zero(first) / static_cast<double>(first.size()) +
                     spectral_variance_zero(last) / static_cast<double>(last.size());
  GewekeResult r;
  r.z = (mean_of(first) - mean_of(last)) / std::sqrt(var);
  r.p = std::erfc(std::abs(r.z) / std::numbers::sqrt2);
  return r;
}

double cramer_von_mises_cdf(double q) {
  if (!(q > 0.0)) return 0.0;
  constexpr double kLogEps = -11.512925464970229;  // ln(1e-5)
  // All terms are positive and u grows with k, so stop at the first one past
  // the cutoff. Large q needs many terms; a fixed short series undershoots.
  double sum = 0.0;
  for (int k = 0;; ++k) {
    const double kk = static_cast<double>(k);
    const double u = (4.0 * kk + 1.0) * (4.0 * kk + 1.0) / (16.0 * q);
    if (u > -kLogEps) break;
    const double log_z = std::lgamma(kk + 0.5) - std::lgamma(kk + 1.0) + 0.5 * std::log(4.0 * kk + 1.0) -
                         1.5 * std::log(std::numbers::pi) - 0.5 * std::log(q);
    sum += std::exp(log_z - u) * std::cyl_bessel_k(0.25, u);
  }
  return std::min(sum, 1.0);
}

HeidelbergerResult heidelberger_test(std::span<const double> chain, double eps, double level) {
  check_chain(chain);
  const std::size_t n_total = chain.size();
  // Spectral variance of the second half scales every candidate bridge.
  const double s0 = spectral_variance_zero(chain.subspan(n_total / 2));

  HeidelbergerResult r;
  double statistic = 0.0;
  std::size_t start = 0;
  for (int step = 0; step <= 5; ++step) {
    start = static_cast<std::size_t>(step) * n_total / 10;
    const auto y = chain.subspan(start);
    const std::size_t n = y.size();
    const double ybar = mean_of(y);
    double cumsum = 0.0;
    double integral = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cumsum += y[i];
      const double bridge = cumsum - ybar * static_cast<double>(i + 1);
      integral += bridge * bridge / (static_cast<double>(n) * s0);
    }
    statistic = integral / static_cast<double>(n);
    r.stationarity_p = 1.0 - cramer_von_mises_cdf(statistic);
    if (r.stationarity_p > level) {
      r.stationary = true;
      break;
    }
  }
  r.start = start;
  const auto kept = chain.subspan(start);
  r.mean = mean_of(kept);
  r.halfwidth = 1.96 * std::sqrt(spectral_variance_zero(kept) / static_cast<double>(kept.size()));
  r.halfwidth_pass = r.stationary && std::abs(r.halfwidth / r.mean) <= eps;
  return r;
}

}  // namespace tvnet
