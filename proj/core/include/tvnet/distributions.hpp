#pragma once

#include "tvnet/rng.hpp"

namespace tvnet {

// Laplace distribution with rate lambda: density (lambda/2) exp(-lambda |x|).
double laplace_cdf(double x, double lambda);
double laplace_quantile(double p, double lambda);
double laplace_log_density(double x, double lambda);

double normal_cdf(double z);
double normal_quantile(double p);

/// F_L^{-1}(Phi(z)) evaluated through the tail nearest to zero, so that
/// |z| up to ~38 keeps full relative accuracy.
double laplace_from_normal(double z, double lambda);
/// Phi^{-1}(F_L(b)), the inverse of laplace_from_normal.
double normal_from_laplace(double b, double lambda);

/// Inverse Gaussian IG(mean, shape) by the Michael-Schucany-Haas
/// transformation method.
double sample_inverse_gaussian(double mean, double shape, RngStream& rng);

/// Levy draw with density proportional to v^{-3/2} exp(-scale / (2 v)); the
/// limit of IG(mean, scale) as mean -> infinity.
double sample_levy(double scale, RngStream& rng);

}  // namespace tvnet
