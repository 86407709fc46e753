#pragma once

#include <filesystem>

#include "tvnet/gibbs.hpp"

namespace tvnet {

/// Draw file layout, version 1 (text, UTF-8):
///
///   # tvnet-draws v1
///   key=value lines: target, target_index, predictors (';'-separated names),
///   predictor_indices (','-separated), lambda, k, T, seed, iterations,
///   burn_in, thin, fixed_rho (empty when free), draws
///   a CSV header: a,tau,log_lik,rho:<name>...,nu:<name>...,b:<t>:<name>...
///   one CSV row per retained draw, t-major then predictor order for b
///
/// Numbers use the shortest representation that round-trips exactly, so the
/// file is a deterministic function of the draws.
inline constexpr const char* kDrawsMagic = "# tvnet-draws v1";

void save_draws(const PosteriorDraws& draws, const std::filesystem::path& path);
PosteriorDraws load_draws(const std::filesystem::path& path);

}  // namespace tvnet
