#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tvnet/dataset.hpp"
#include "tvnet/gibbs.hpp"

namespace tvnet {

struct GridScore {
  double lambda = 0.0;
  double k = 0.0;
  std::size_t target = 0;
  double mean_log_lik = 0.0;  // NaN when the fit failed
  bool failed = false;
  std::string error;
};

struct GridSearchResult {
  double best_lambda = 0.0;
  double best_k = 0.0;
  double best_score = 0.0;  // summed over targets
  std::vector<GridScore> table;  // lambda-major, then k, then target
};

/// Optional screened predictor set per target; empty means all other nodes.
using PredictorSets = std::vector<std::vector<std::size_t>>;

/// Scores every (lambda, k) pair by the sum over targets of the posterior-mean
/// log likelihood of a gibbs_fit with `cfg`. A failed fit marks its cell and
/// excludes the grid point from selection. Ties go to the smallest lambda,
/// then the smallest k.
GridSearchResult grid_search(const PseudoTimeDataset& ds, const std::vector<std::size_t>& targets,
                             std::span<const double> lambda_grid, std::span<const double> k_grid,
                             const SamplerConfig& cfg, const PredictorSets& predictors = {});

}  // namespace tvnet
