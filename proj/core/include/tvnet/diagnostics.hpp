#pragma once

#include <cstddef>
#include <span>

namespace tvnet {

/// Long-run variance of a series (2 pi times its spectral density at
/// frequency zero), from triangular-weighted autocovariances with a lag window
/// of 4% of the series length. Throws undefined-variance when it is not
/// positive.
double spectral_variance_zero(std::span<const double> x);

struct GewekeResult {
  double z = 0.0;
  double p = 1.0;  // two-sided normal p-value
};

/// Compares the mean of the first 10% of the chain with that of the last 50%.
/// Needs at least 100 values.
GewekeResult geweke_test(std::span<const double> chain);

struct HeidelbergerResult {
  double stationarity_p = 1.0;
  bool stationary = false;
  std::size_t start = 0;  // index of the first retained value
  double mean = 0.0;
  double halfwidth = 0.0;
  bool halfwidth_pass = false;
};

/// Heidelberger-Welch diagnostic. Discards 0%, 10%, ..., 50% of the chain in
/// turn until the Cramer-von Mises test on the scaled cumulative-sum bridge
/// accepts stationarity at level 0.05, then runs the halfwidth test with
/// relative precision `eps`.
HeidelbergerResult heidelberger_test(std::span<const double> chain, double eps = 0.1,
                                     double level = 0.05);

/// CDF of the Cramer-von Mises statistic of a Brownian bridge.
double cramer_von_mises_cdf(double q);

}  // namespace tvnet
