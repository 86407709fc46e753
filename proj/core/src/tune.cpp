#include "tvnet/tune.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "tvnet/error.hpp"

namespace tvnet {

namespace {

std::vector<double> sorted_grid(std::span<const double> grid, const char* field) {
  require(!grid.empty(), ErrorKind::kInvalidParameter, "grid is empty", field);
  for (double v : grid) {
    require(std::isfinite(v) && v > 0.0, ErrorKind::kInvalidParameter, "grid values must be positive", field);
  }
  std::set<double> unique(grid.begin(), grid.end());
  return {unique.begin(), unique.end()};
}

}  // namespace

GridSearchResult grid_search(const PseudoTimeDataset& ds, const std::vector<std::size_t>& targets,
                             std::span<const double> lambda_grid, std::span<const double> k_grid,
                             const SamplerConfig& cfg, const PredictorSets& predictors) {
  cfg.validate();
  require(!targets.empty(), ErrorKind::kInvalidParameter, "no targets to score", "targets");
  require(predictors.empty() || predictors.size() == targets.size(), ErrorKind::kInvalidParameter,
          "one predictor set per target is required", "predictors");
  const auto lambdas = sorted_grid(lambda_grid, "lambda");
  const auto ks = sorted_grid(k_grid, "k");

  std::vector<std::vector<std::size_t>> sets(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    require(targets[i] < ds.num_nodes(), ErrorKind::kInvalidParameter, "target out of range", "targets");
    if (!predictors.empty()) {
      sets[i] = predictors[i];
    } else {
      for (std::size_t j = 0; j < ds.num_nodes(); ++j) {
        if (j != targets[i]) sets[i].push_back(j);
      }
    }
  }

  GridSearchResult result;
  result.best_score = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (double lambda : lambdas) {
    for (double k : ks) {
      const ModelHyperparams hp{lambda, k};
      double total = 0.0;
      bool cell_ok = true;
      for (std::size_t i = 0; i < targets.size(); ++i) {
        GridScore row{lambda, k, targets[i], std::numeric_limits<double>::quiet_NaN(), false, {}};
        try {
          const auto draws = gibbs_fit(ds, targets[i], sets[i], hp, cfg);
          require(draws.size() > 0, ErrorKind::kInvalidState, "no retained draws");
          row.mean_log_lik = draws.log_lik.mean();
          total += row.mean_log_lik;
        } catch (const Error& e) {
          row.failed = true;
          row.error = e.what();
          cell_ok = false;
        }
        result.table.push_back(std::move(row));
      }
      // Strict improvement keeps the earliest, i.e. smallest, lambda and k.
      if (cell_ok && (!found || total > result.best_score)) {
        found = true;
        result.best_score = total;
        result.best_lambda = lambda;
        result.best_k = k;
      }
    }
  }
  require(found, ErrorKind::kInvalidState, "every grid point failed");
  return result;
}

}  // namespace tvnet
