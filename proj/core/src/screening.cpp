#include "tvnet/screening.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "tvnet/error.hpp"

namespace tvnet {

std::size_t auto_screen_budget(std::size_t num_samples) {
  require(num_samples >= 2, ErrorKind::kInvalidParameter, "auto budget needs at least 2 samples");
  const double n = static_cast<double>(num_samples);
  return static_cast<std::size_t>(std::llround(n / std::log(n)));
}

std::vector<double> holp_scores(const PseudoTimeDataset& ds, std::size_t target) {
  const std::size_t p = ds.num_nodes();
  require(target < p, ErrorKind::kInvalidParameter, "target index out of range", "target");
  require(p >= 2, ErrorKind::kInvalidParameter, "screening needs at least one predictor");

  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < p; ++j)
    if (j != target) cols.push_back(static_cast<Eigen::Index>(j));
  const auto m = static_cast<Eigen::Index>(cols.size());

  Eigen::VectorXd total = Eigen::VectorXd::Zero(m);
  const std::size_t T = ds.num_times();
  for (std::size_t t = 1; t <= T; ++t) {
    const auto& rows = ds.rows_at(static_cast<int>(t));
    require(rows.size() >= 2, ErrorKind::kInvalidParameter,
            "HOLP screening needs at least two samples per time group");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd X(n, m);
    Eigen::VectorXd y(n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto row = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)]);
      y[r] = ds.values()(row, static_cast<Eigen::Index>(target));
      for (Eigen::Index c = 0; c < m; ++c) X(r, c) = ds.values()(row, cols[static_cast<std::size_t>(c)]);
    }
    const double eps = 1e-8 * X.squaredNorm() / static_cast<double>(n);
    Eigen::VectorXd beta;
    // X'(XX' + eps I)^{-1} y == (X'X + eps I)^{-1} X'y; solve the smaller system.
    if (m <= n) {
      Eigen::MatrixXd G = X.transpose() * X;
      G.diagonal().array() += eps;
      beta = G.ldlt().solve(X.transpose() * y);
    } else {
      Eigen::MatrixXd G = X * X.transpose();
      G.diagonal().array() += eps;
      beta = X.transpose() * G.ldlt().solve(y);
    }
    total += beta.cwiseAbs();
  }
  total /= static_cast<double>(T);

  std::vector<double> scores(p, 0.0);
  for (Eigen::Index c = 0; c < m; ++c) scores[static_cast<std::size_t>(cols[static_cast<std::size_t>(c)])] = total[c];
  return scores;
}

std::vector<std::size_t> holp_screen(const PseudoTimeDataset& ds, std::size_t target,
                                     std::optional<std::size_t> budget) {
  const auto scores = holp_scores(ds, target);
  const std::size_t available = ds.num_nodes() - 1;
  std::size_t keep = budget ? *budget : auto_screen_budget(ds.num_samples());
  require(keep >= 1, ErrorKind::kInvalidParameter, "screening budget must be positive", "screen-budget");
  keep = std::min(keep, available);

  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < ds.num_nodes(); ++j)
    if (j != target) order.push_back(j);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(keep);
  return order;
}

}  // namespace tvnet
