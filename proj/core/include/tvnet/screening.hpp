#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tvnet/dataset.hpp"

namespace tvnet {

/// round(N / ln N), the default predictor budget for N samples.
std::size_t auto_screen_budget(std::size_t num_samples);

/// Mean absolute per-time HOLP score of every non-target node, indexed by node
/// (the target's own entry is 0).
std::vector<double> holp_scores(const PseudoTimeDataset& ds, std::size_t target);

/// Ranks the non-target nodes by mean absolute HOLP coefficient over time and
/// returns the top `budget` node indices (auto budget when nullopt), best first.
std::vector<std::size_t> holp_screen(const PseudoTimeDataset& ds, std::size_t target,
                                     std::optional<std::size_t> budget = std::nullopt);

}  // namespace tvnet
