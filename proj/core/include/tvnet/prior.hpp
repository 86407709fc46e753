#pragma once

#include <Eigen/Core>
#include <cstddef>

#include "tvnet/rng.hpp"
#include "tvnet/tridiagonal.hpp"

namespace tvnet {

/// Stationary AR(1) correlation over T time points: Sigma(t, t') = rho^|t - t'|.
struct CopulaCorrelation {
  double rho = 0.0;
  std::size_t T = 1;

  CopulaCorrelation(double rho_value, std::size_t num_times);

  Eigen::MatrixXd dense() const;
};

/// Sigma^{-1} in closed form. For T == 1 this is the scalar 1.
TridiagonalMatrix build_precision(const CopulaCorrelation& c);

/// ln |Sigma| = (T - 1) ln(1 - rho^2).
double covariance_log_det(const CopulaCorrelation& c);

/// Log density of the reverse-exponential prior k e^{k rho} / (e^k - 1) on [0, 1).
double reverse_exp_log_density(double rho, double k);

/// Inverse-CDF draw from the reverse-exponential prior.
double sample_reverse_exp(double k, RngStream& rng);

/// One prior coefficient trajectory: rho from the reverse-exponential prior,
/// z ~ N(0, Sigma(rho)), b_t = F_L^{-1}(Phi(z_t)).
Eigen::VectorXd sample_prior_trajectory(double lambda, double k, std::size_t T, RngStream& rng);

/// As sample_prior_trajectory with the correlation fixed.
Eigen::VectorXd sample_prior_trajectory_given_rho(double lambda, double rho, std::size_t T,
                                                  RngStream& rng);

}  // namespace tvnet
