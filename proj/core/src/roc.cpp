#include "tvnet/roc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tvnet/error.hpp"

namespace tvnet {

RocCurve roc_curve(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  require(scores.size() == labels.size(), ErrorKind::kInvalidInput, "scores and labels differ in length");
  std::size_t positives = 0;
  for (auto l : labels) positives += l ? 1 : 0;
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    fail(ErrorKind::kDegenerateTruth, "ground truth needs both positives and negatives");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve{{0.0, 0.0}};
  std::size_t tp = 0, fp = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double threshold = scores[order[k]];
    while (k < order.size() && scores[order[k]] == threshold) {
      if (labels[order[k]]) ++tp; else ++fp;
      ++k;
    }
    curve.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                     static_cast<double>(tp) / static_cast<double>(positives)});
  }
  return curve;
}

RocCurve roc_curve(const GroundTruth& truth, std::span<const LocalFitSummary> estimates) {
  const std::size_t p = truth.num_nodes();
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
  for (const auto& s : estimates) {
    require(s.target < p, ErrorKind::kInvalidInput, "estimate target outside the ground truth");
    require(s.num_times() == truth.num_times, ErrorKind::kInvalidInput,
            "estimates and truth disagree on the number of times");
    std::vector<double> dense(s.num_times() * p, 0.0);
    for (std::size_t c = 0; c < s.predictors.size(); ++c)
      for (std::size_t t = 0; t < s.num_times(); ++t)
        dense[t * p + s.predictors[c]] =
            std::abs(s.median(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c)));
    for (std::size_t t = 0; t < s.num_times(); ++t)
      for (std::size_t j = 0; j < p; ++j) {
        if (j == s.target) continue;
        scores.push_back(dense[t * p + j]);
        labels.push_back(truth.B_true(static_cast<Eigen::Index>(s.target), static_cast<Eigen::Index>(j)) != 0.0);
      }
  }
  return roc_curve(scores, labels);
}

double auc(const RocCurve& curve) {
  require(curve.size() >= 2, ErrorKind::kInvalidInput, "a curve needs at least two points");
  double area = 0.0;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    const double dx = curve[k].fpr - curve[k - 1].fpr;
    if (dx < 0.0) fail(ErrorKind::kInvalidInput, "curve is not sorted by false-positive rate");
    area += 0.5 * dx * (curve[k].tpr + curve[k - 1].tpr);
  }
  return area;
}

namespace {

double tpr_at(const RocCurve& c, double x) {
  // Upper envelope at exact hits, linear interpolation between neighbours.
  double best = -1.0;
  for (const auto& pt : c)
    if (pt.fpr == x) best = std::max(best, pt.tpr);
  if (best >= 0.0) return best;
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (c[k - 1].fpr < x && x < c[k].fpr) {
      const double w = (x - c[k - 1].fpr) / (c[k].fpr - c[k - 1].fpr);
      return c[k - 1].tpr + w * (c[k].tpr - c[k - 1].tpr);
    }
  }
  return x <= c.front().fpr ? c.front().tpr : c.back().tpr;
}

}  // namespace

RocCurve average_roc(std::span<const RocCurve> curves) {
  require(!curves.empty(), ErrorKind::kInvalidInput, "cannot average an empty set of curves");
  for (const auto& c : curves) {
    require(!c.empty(), ErrorKind::kInvalidInput, "cannot average an empty curve");
    for (std::size_t k = 1; k < c.size(); ++k)
      if (c[k].fpr < c[k - 1].fpr) fail(ErrorKind::kInvalidInput, "curve is not sorted by false-positive rate");
  }
  constexpr int kGrid = 100;
  RocCurve out;
  for (int g = 0; g <= kGrid; ++g) {
    const double x = static_cast<double>(g) / kGrid;
    double sum = 0.0;
    for (const auto& c : curves) sum += tpr_at(c, x);
    const double y = sum / static_cast<double>(curves.size());
    if (g == 0 && y > 0.0) out.push_back({0.0, 0.0});
    out.push_back({x, y});
  }
  return out;
}

}  // namespace tvnet
