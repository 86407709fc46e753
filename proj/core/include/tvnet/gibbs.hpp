#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tvnet/dataset.hpp"
#include "tvnet/rng.hpp"

namespace tvnet {

/// Sparsity rate of the Laplace marginals and rate of the reverse-exponential
/// prior on the lag-one copula correlation.
struct ModelHyperparams {
  double lambda = 20.0;
  double k = 1.0;

  void validate() const;
};

struct SamplerConfig {
  std::size_t iterations = 10000;  // total sweeps, burn-in included
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  /// When set, every rho_j is held at this value and never updated.
  std::optional<double> fixed_rho;

  void validate() const;
  std::size_t retained() const { return (iterations - burn_in) / thin; }
};

/// One Gibbs state for a single target node with m predictors over T times.
struct ChainState {
  double a = 0.0;
  double tau = 1.0;
  Eigen::MatrixXd B;    // T x m, B(t, j) = b_{t,j}
  Eigen::VectorXd rho;  // m
  Eigen::VectorXd nu;   // m, inverse mixture scales

  /// a = 0, tau = 1, B = 0, rho = 0.5, nu = lambda^2.
  static ChainState initial(std::size_t T, std::size_t m, const ModelHyperparams& hp);
  bool is_finite() const;
};

/// The target response and predictor block of every time group.
class TargetData {
 public:
  TargetData(std::vector<Eigen::VectorXd> response, std::vector<Eigen::MatrixXd> predictors);

  static TargetData from_dataset(const PseudoTimeDataset& ds, std::size_t target,
                                 const std::vector<std::size_t>& predictors);

  std::size_t num_times() const noexcept { return y_.size(); }
  std::size_t num_predictors() const noexcept { return m_; }
  std::size_t num_samples() const noexcept { return n_; }

  const Eigen::VectorXd& response(std::size_t t) const { return y_[t]; }
  const Eigen::MatrixXd& predictors(std::size_t t) const { return x_[t]; }
  /// sum_k x_{t,j,k}^2
  double column_sq(std::size_t t, std::size_t j) const { return col_sq_(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)); }

  void set_response(std::vector<Eigen::VectorXd> response);

 private:
  std::vector<Eigen::VectorXd> y_;
  std::vector<Eigen::MatrixXd> x_;
  Eigen::MatrixXd col_sq_;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
};

/// Upper end of the numerical support of rho_j.
inline constexpr double kRhoUpper = 1.0 - 1e-6;
/// Below this value of b' Sigma^{-1} b the nu update uses the Levy limit.
inline constexpr double kLevyThreshold = 1e-12;

/// Log of the rho_j conditional up to a constant:
/// k rho - ln|Sigma(rho)| / 2 - nu b' Sigma(rho)^{-1} b / 2.
double rho_log_target(double rho, const Eigen::VectorXd& b, double nu, double k);

/// A single chain for one target node. Keeps the residuals
/// e = y - a - X b current so that every update is linear in the data size.
class GibbsChain {
 public:
  GibbsChain(TargetData data, ModelHyperparams hp, ChainState init);

  const ChainState& state() const noexcept { return state_; }
  const TargetData& data() const noexcept { return data_; }
  const ModelHyperparams& hyperparams() const noexcept { return hp_; }

  void set_state(ChainState state);
  void set_response(std::vector<Eigen::VectorXd> response);

  // Individual conditional updates; each returns the new value.
  double step_intercept(RngStream& rng);
  double step_noise_precision(RngStream& rng);
  double step_nu(std::size_t j, RngStream& rng);
  double step_rho(std::size_t j, RngStream& rng);
  Eigen::VectorXd step_beta_column(std::size_t j, RngStream& rng);

  /// a, tau, then for each predictor j in order: nu_j, rho_j, b_{:,j}.
  void sweep(RngStream& rng, bool update_rho = true);

  /// Sum of squared residuals at the current state.
  double residual_sum_of_squares() const;
  /// Log likelihood of the target given its predictors at the current state.
  double log_likelihood() const;

 private:
  void recompute_residuals();

  TargetData data_;
  std::size_t sweeps_since_refresh_ = 0;
  ModelHyperparams hp_;
  ChainState state_;
  std::vector<Eigen::VectorXd> resid_;
};

struct DrawsMetadata {
  std::size_t target = 0;
  std::string target_name;
  std::vector<std::size_t> predictors;
  std::vector<std::string> predictor_names;
  ModelHyperparams hp;
  std::size_t num_times = 0;
  SamplerConfig config;
};

/// Thinned post-burn-in history of one chain.
struct PosteriorDraws {
  DrawsMetadata meta;
  Eigen::VectorXd a;
  Eigen::VectorXd tau;
  Eigen::MatrixXd rho;  // draws x m
  Eigen::MatrixXd nu;   // draws x m
  Eigen::MatrixXd B;    // draws x (T * m), column t * m + j
  Eigen::VectorXd log_lik;

  std::size_t size() const noexcept { return static_cast<std::size_t>(a.size()); }
  std::size_t num_predictors() const noexcept { return static_cast<std::size_t>(rho.cols()); }
  double b(std::size_t draw, std::size_t t, std::size_t j) const;
  Eigen::VectorXd b_series(std::size_t t, std::size_t j) const;
};

/// Runs the sampler for `target` regressed on `predictors` (which must not
/// contain the target). Uses the stream (cfg.seed, target).
PosteriorDraws gibbs_fit(const PseudoTimeDataset& ds, std::size_t target,
                         const std::vector<std::size_t>& predictors, const ModelHyperparams& hp,
                         const SamplerConfig& cfg);

/// Same sampler on pre-built target data with an explicit stream id.
PosteriorDraws gibbs_fit(const TargetData& data, const ModelHyperparams& hp,
                         const SamplerConfig& cfg, std::uint64_t stream_id);

}  // namespace tvnet
