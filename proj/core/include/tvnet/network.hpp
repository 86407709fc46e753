#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tvnet/gibbs.hpp"

namespace tvnet {

/// Posterior medians and standard deviations of one target's coefficients.
struct LocalFitSummary {
  std::size_t target = 0;
  std::vector<std::size_t> predictors;
  Eigen::MatrixXd median;  // T x m
  Eigen::MatrixXd sd;      // T x m

  std::size_t num_times() const noexcept { return static_cast<std::size_t>(median.rows()); }
};

struct Edge {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  std::size_t t = 0;  // 1-based
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct TimeVaryingNetwork {
  std::vector<std::string> nodes;
  std::size_t num_times = 0;
  std::vector<Edge> edges;  // sorted by (t, i, j)
};

/// Entrywise median and sample SD over retained draws; needs >= 2 draws.
LocalFitSummary summarize(const PosteriorDraws& draws);

/// Min-symmetrised network at threshold phi: edge (i, j, t) iff both
/// |b^(i)_{t,j}| and |b^(j)_{t,i}| exceed phi, weighted by the smaller one.
/// Predictors absent from a target's fit count as exact zeros.
TimeVaryingNetwork assemble_network(std::span<const LocalFitSummary> summaries,
                                    const std::vector<std::string>& nodes, double phi);

/// Edge counts of assemble_network over a grid of thresholds.
std::vector<std::size_t> sweep_threshold(std::span<const LocalFitSummary> summaries,
                                         const std::vector<std::string>& nodes,
                                         std::span<const double> phi_grid);

/// CSV `t,i,j,weight` with node names, one row per edge in (t, i, j) order.
void export_edges(const TimeVaryingNetwork& net, const std::filesystem::path& path);
TimeVaryingNetwork import_edges(const std::filesystem::path& path, const std::vector<std::string>& nodes,
                                std::size_t num_times);

/// Summary CSV: `# target=<name>` and `# target_index=<i>` lines, then
/// `t,predictor,predictor_index,median,sd` rows.
void save_summary(const LocalFitSummary& summary, const std::vector<std::string>& nodes,
                  const std::filesystem::path& path);
LocalFitSummary load_summary(const std::filesystem::path& path);

}  // namespace tvnet
