#include "tvnet/gibbs.hpp"

#include <cmath>
#include <numbers>

#include "tvnet/distributions.hpp"
#include "tvnet/error.hpp"
#include "tvnet/prior.hpp"
#include "tvnet/slice.hpp"
#include "tvnet/tridiagonal.hpp"

namespace tvnet {

void ModelHyperparams::validate() const {
  require(lambda > 0.0 && std::isfinite(lambda), ErrorKind::kInvalidParameter,
          "lambda must be positive", "lambda");
  require(k > 0.0 && std::isfinite(k), ErrorKind::kInvalidParameter, "k must be positive", "k");
}

void SamplerConfig::validate() const {
  require(iterations > 0, ErrorKind::kInvalidParameter, "iterations must be positive", "iterations");
  require(iterations > burn_in, ErrorKind::kInvalidParameter, "iterations must exceed burn-in",
          "burn-in");
  require(thin > 0, ErrorKind::kInvalidParameter, "thin must be positive", "thin");
  if (fixed_rho) {
    require(*fixed_rho >= 0.0 && *fixed_rho <= kRhoUpper, ErrorKind::kInvalidParameter,
            "fixed rho must lie in [0, 1)", "fixed-rho");
  }
}

ChainState ChainState::initial(std::size_t T, std::size_t m, const ModelHyperparams& hp) {
  ChainState s;
  s.a = 0.0;
  s.tau = 1.0;
  s.B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(m));
  s.rho = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), 0.5);
  s.nu = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), hp.lambda * hp.lambda);
  return s;
}

bool ChainState::is_finite() const {
  return std::isfinite(a) && std::isfinite(tau) && tau > 0.0 && B.allFinite() && rho.allFinite() &&
         nu.allFinite() && (nu.array() > 0.0).all();
}

TargetData::TargetData(std::vector<Eigen::VectorXd> response, std::vector<Eigen::MatrixXd> predictors)
    : y_(std::move(response)), x_(std::move(predictors)) {
  require(!y_.empty() && y_.size() == x_.size(), ErrorKind::kInvalidParameter,
          "need one response and one predictor block per time group");
  m_ = static_cast<std::size_t>(x_.front().cols());
  col_sq_.resize(static_cast<Eigen::Index>(y_.size()), static_cast<Eigen::Index>(m_));
  for (std::size_t t = 0; t < y_.size(); ++t) {
    require(x_[t].rows() == y_[t].size(), ErrorKind::kInvalidParameter,
            "predictor block rows must match the response length");
    require(static_cast<std::size_t>(x_[t].cols()) == m_, ErrorKind::kInvalidParameter,
            "every time group needs the same predictors");
    n_ += static_cast<std::size_t>(y_[t].size());
    col_sq_.row(static_cast<Eigen::Index>(t)) = x_[t].colwise().squaredNorm();
  }
}

TargetData TargetData::from_dataset(const PseudoTimeDataset& ds, std::size_t target,
                                    const std::vector<std::size_t>& predictors) {
  require(target < ds.num_nodes(), ErrorKind::kInvalidParameter, "target index out of range", "target");
  for (std::size_t j : predictors) {
    require(j < ds.num_nodes(), ErrorKind::kInvalidParameter, "predictor index out of range", "predictors");
    require(j != target, ErrorKind::kInvalidParameter, "predictors must exclude the target", "predictors");
  }
  std::vector<Eigen::VectorXd> y;
  std::vector<Eigen::MatrixXd> x;
  const auto m = static_cast<Eigen::Index>(predictors.size());
  for (std::size_t t = 1; t <= ds.num_times(); ++t) {
    const auto& rows = ds.rows_at(static_cast<int>(t));
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::VectorXd yt(n);
    Eigen::MatrixXd xt(n, m);
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto row = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)]);
      yt[r] = ds.values()(row, static_cast<Eigen::Index>(target));
      for (Eigen::Index c = 0; c < m; ++c)
        xt(r, c) = ds.values()(row, static_cast<Eigen::Index>(predictors[static_cast<std::size_t>(c)]));
    }
    y.push_back(std::move(yt));
    x.push_back(std::move(xt));
  }
  return TargetData(std::move(y), std::move(x));
}

void TargetData::set_response(std::vector<Eigen::VectorXd> response) {
  require(response.size() == y_.size(), ErrorKind::kInvalidParameter, "response group count mismatch");
  for (std::size_t t = 0; t < y_.size(); ++t) {
    require(response[t].size() == y_[t].size(), ErrorKind::kInvalidParameter,
            "response group size mismatch");
  }
  y_ = std::move(response);
}

namespace {

// Sufficient statistics of b for the AR(1) quadratic form.
struct TrajectoryStats {
  double all = 0.0;       // sum_t b_t^2
  double interior = 0.0;  // sum_{1 < t < T} b_t^2
  double lag = 0.0;       // sum_t b_t b_{t+1}
  std::size_t T = 0;

  explicit TrajectoryStats(const Eigen::VectorXd& b) : T(static_cast<std::size_t>(b.size())) {
    all = b.squaredNorm();
    for (Eigen::Index t = 1; t + 1 < b.size(); ++t) interior += b[t] * b[t];
    for (Eigen::Index t = 0; t + 1 < b.size(); ++t) lag += b[t] * b[t + 1];
  }

  double quadratic_form(double rho) const {
    if (T == 1) return all;
    return (all + rho * rho * interior - 2.0 * rho * lag) / (1.0 - rho * rho);
  }
};

double rho_log_target_from(const TrajectoryStats& s, double rho, double nu, double k) {
  const double log_det = static_cast<double>(s.T - 1) * std::log1p(-rho * rho);
  return k * rho - 0.5 * log_det - 0.5 * nu * s.quadratic_form(rho);
}

}  // namespace

double rho_log_target(double rho, const Eigen::VectorXd& b, double nu, double k) {
  require(rho >= 0.0 && rho < 1.0, ErrorKind::kInvalidParameter, "rho must lie in [0, 1)", "rho");
  return rho_log_target_from(TrajectoryStats(b), rho, nu, k);
}

GibbsChain::GibbsChain(TargetData data, ModelHyperparams hp, ChainState init)
    : data_(std::move(data)), hp_(hp) {
  hp_.validate();
  set_state(std::move(init));
}

void GibbsChain::set_state(ChainState state) {
  const auto T = static_cast<Eigen::Index>(data_.num_times());
  const auto m = static_cast<Eigen::Index>(data_.num_predictors());
  require(state.B.rows() == T && state.B.cols() == m && state.rho.size() == m && state.nu.size() == m,
          ErrorKind::kInvalidState, "chain state dimensions do not match the data");
  require(state.tau > 0.0, ErrorKind::kInvalidState, "tau must be positive", "tau");
  require((state.nu.array() > 0.0).all(), ErrorKind::kInvalidState, "nu must be positive", "nu");
  require((state.rho.array() >= 0.0).all() && (state.rho.array() < 1.0).all(),
          ErrorKind::kInvalidState, "rho must lie in [0, 1)", "rho");
  state_ = std::move(state);
  recompute_residuals();
}

void GibbsChain::set_response(std::vector<Eigen::VectorXd> response) {
  data_.set_response(std::move(response));
  recompute_residuals();
}

void GibbsChain::recompute_residuals() {
  resid_.resize(data_.num_times());
  for (std::size_t t = 0; t < data_.num_times(); ++t) {
    resid_[t] = data_.response(t) - data_.predictors(t) * state_.B.row(static_cast<Eigen::Index>(t)).transpose();
    resid_[t].array() -= state_.a;
  }
}

double GibbsChain::step_intercept(RngStream& rng) {
  double sum = 0.0;
  for (const auto& e : resid_) sum += e.sum();
  const double n = static_cast<double>(data_.num_samples());
  sum += n * state_.a;  // residuals without the intercept
  const double var = 1.0 / (1.0 + n * state_.tau);
  const double mean = var * state_.tau * sum;
  const double a_new = mean + std::sqrt(var) * rng.normal();
  const double delta = a_new - state_.a;
  for (auto& e : resid_) e.array() -= delta;
  state_.a = a_new;
  return a_new;
}

double GibbsChain::step_noise_precision(RngStream& rng) {
  const double shape = 1.0 + 0.5 * static_cast<double>(data_.num_samples());
  const double scale = 1.0 / (1.0 + 0.5 * residual_sum_of_squares());
  state_.tau = rng.gamma(shape, scale);
  return state_.tau;
}

double GibbsChain::step_nu(std::size_t j, RngStream& rng) {
  const auto jj = static_cast<Eigen::Index>(j);
  const Eigen::VectorXd b = state_.B.col(jj);
  const double q = TrajectoryStats(b).quadratic_form(state_.rho[jj]);
  const double lambda_sq = hp_.lambda * hp_.lambda;
  double nu;
  if (q < kLevyThreshold) {
    nu = sample_levy(lambda_sq, rng);
  } else {
    nu = sample_inverse_gaussian(hp_.lambda / std::sqrt(q), lambda_sq, rng);
  }
  state_.nu[jj] = nu;
  return nu;
}

double GibbsChain::step_rho(std::size_t j, RngStream& rng) {
  const auto jj = static_cast<Eigen::Index>(j);
  const TrajectoryStats stats(state_.B.col(jj));
  const double nu = state_.nu[jj];
  const double k = hp_.k;
  const double current = std::min(state_.rho[jj], std::nextafter(kRhoUpper, 0.0));
  const double rho = slice_sample_bounded(
      [&](double r) { return rho_log_target_from(stats, r, nu, k); }, 0.0, kRhoUpper, current, rng);
  state_.rho[jj] = rho;
  return rho;
}

Eigen::VectorXd GibbsChain::step_beta_column(std::size_t j, RngStream& rng) {
  const auto jj = static_cast<Eigen::Index>(j);
  const std::size_t T = data_.num_times();
  const TridiagonalMatrix prior = build_precision(CopulaCorrelation(state_.rho[jj], T));
  const double nu = state_.nu[jj];

  Eigen::VectorXd diag = nu * prior.diag;
  Eigen::VectorXd off = nu * prior.off;
  Eigen::VectorXd shift(static_cast<Eigen::Index>(T));
  for (std::size_t t = 0; t < T; ++t) {
    const auto tt = static_cast<Eigen::Index>(t);
    const double sxx = data_.column_sq(t, j);
    // Partial residual excludes predictor j's own contribution at time t.
    const double sxe = data_.predictors(t).col(jj).dot(resid_[t]) + sxx * state_.B(tt, jj);
    diag[tt] += state_.tau * sxx;
    shift[tt] = state_.tau * sxe;
  }
  const Eigen::VectorXd b_new =
      sample_normal_tridiag_precision(TridiagonalMatrix(std::move(diag), std::move(off)), shift, rng);
  for (std::size_t t = 0; t < T; ++t) {
    const auto tt = static_cast<Eigen::Index>(t);
    const double delta = b_new[tt] - state_.B(tt, jj);
    if (delta != 0.0) resid_[t] -= delta * data_.predictors(t).col(jj);
    state_.B(tt, jj) = b_new[tt];
  }
  return b_new;
}

void GibbsChain::sweep(RngStream& rng, bool update_rho) {
  // Incremental residual updates drift slowly; rebuild them periodically.
  if (++sweeps_since_refresh_ >= 128) {
    recompute_residuals();
    sweeps_since_refresh_ = 0;
  }
  step_intercept(rng);
  step_noise_precision(rng);
  for (std::size_t j = 0; j < data_.num_predictors(); ++j) {
    step_nu(j, rng);
    if (update_rho) step_rho(j, rng);
    step_beta_column(j, rng);
  }
}

double GibbsChain::residual_sum_of_squares() const {
  double rss = 0.0;
  for (const auto& e : resid_) rss += e.squaredNorm();
  return rss;
}

double GibbsChain::log_likelihood() const {
  const double n = static_cast<double>(data_.num_samples());
  return 0.5 * n * std::log(state_.tau / (2.0 * std::numbers::pi)) -
         0.5 * state_.tau * residual_sum_of_squares();
}

double PosteriorDraws::b(std::size_t draw, std::size_t t, std::size_t j) const {
  return B(static_cast<Eigen::Index>(draw), static_cast<Eigen::Index>(t * num_predictors() + j));
}

Eigen::VectorXd PosteriorDraws::b_series(std::size_t t, std::size_t j) const {
  return B.col(static_cast<Eigen::Index>(t * num_predictors() + j));
}

PosteriorDraws gibbs_fit(const TargetData& data, const ModelHyperparams& hp,
                         const SamplerConfig& cfg, std::uint64_t stream_id) {
  hp.validate();
  cfg.validate();
  const std::size_t T = data.num_times();
  const std::size_t m = data.num_predictors();
  ChainState init = ChainState::initial(T, m, hp);
  if (cfg.fixed_rho) init.rho.setConstant(*cfg.fixed_rho);

  GibbsChain chain(data, hp, std::move(init));
  RngStream rng(cfg.seed, stream_id);

  const std::size_t kept = cfg.retained();
  const auto rows = static_cast<Eigen::Index>(kept);
  PosteriorDraws out;
  out.meta.hp = hp;
  out.meta.num_times = T;
  out.meta.config = cfg;
  out.a.resize(rows);
  out.tau.resize(rows);
  out.log_lik.resize(rows);
  out.rho.resize(rows, static_cast<Eigen::Index>(m));
  out.nu.resize(rows, static_cast<Eigen::Index>(m));
  out.B.resize(rows, static_cast<Eigen::Index>(T * m));

  Eigen::Index row = 0;
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    chain.sweep(rng, !cfg.fixed_rho.has_value());
    const ChainState& s = chain.state();
    if (!s.is_finite()) {
      fail(ErrorKind::kDivergedChain, "non-finite chain state at sweep " + std::to_string(it));
    }
    if (it < cfg.burn_in || (it - cfg.burn_in + 1) % cfg.thin != 0 || row >= rows) continue;
    out.a[row] = s.a;
    out.tau[row] = s.tau;
    out.log_lik[row] = chain.log_likelihood();
    out.rho.row(row) = s.rho.transpose();
    out.nu.row(row) = s.nu.transpose();
    for (std::size_t t = 0; t < T; ++t) {
      out.B.block(row, static_cast<Eigen::Index>(t * m), 1, static_cast<Eigen::Index>(m)) =
          s.B.row(static_cast<Eigen::Index>(t));
    }
    ++row;
  }
  return out;
}

PosteriorDraws gibbs_fit(const PseudoTimeDataset& ds, std::size_t target,
                         const std::vector<std::size_t>& predictors, const ModelHyperparams& hp,
                         const SamplerConfig& cfg) {
  TargetData data = TargetData::from_dataset(ds, target, predictors);
  PosteriorDraws out = gibbs_fit(data, hp, cfg, target);
  out.meta.target = target;
  out.meta.target_name = ds.node_names()[target];
  out.meta.predictors = predictors;
  for (std::size_t j : predictors) out.meta.predictor_names.push_back(ds.node_names()[j]);
  return out;
}

}  // namespace tvnet
