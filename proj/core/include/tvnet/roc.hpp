#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tvnet/network.hpp"
#include "tvnet/simulate.hpp"

namespace tvnet {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

using RocCurve = std::vector<RocPoint>;

/// ROC curve of scores against 0/1 labels. The threshold walks down the
/// distinct score values; every score >= threshold is called positive.
/// Starts at (0, 0) and ends at (1, 1).
RocCurve roc_curve(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Pools every (target, t, j != target) triple of the summaries' targets,
/// scoring |median| (0 for screened-out predictors) against the truth.
RocCurve roc_curve(const GroundTruth& truth, std::span<const LocalFitSummary> estimates);

/// Trapezoidal area; the false-positive rates must be nondecreasing.
double auc(const RocCurve& curve);

/// Vertical average of the true-positive rates on the 101-point grid
/// 0, 0.01, ..., 1. At a grid point with several curve points the largest
/// true-positive rate is used.
RocCurve average_roc(std::span<const RocCurve> curves);

}  // namespace tvnet
