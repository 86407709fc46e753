#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvnet/dataset.hpp"
#include "tvnet/rng.hpp"

namespace tvnet {

/// Mean-profile families of simulated nodes.
enum class Archetype : char {
  kDecreasing = 'a',  // active early, decays to no signal
  kIncreasing = 'b',  // rises from no signal
  kPeak = 'c',        // rises from and returns to no signal
  kNull = 'd',        // no signal
};

inline constexpr std::size_t kNumArchetypes = 4;

struct SimulationSpec {
  std::size_t T = 8;
  std::size_t n_t = 25;
  std::size_t p_prime = 10;  // nodes per archetype
  double noise_sd = 0.1;
  std::size_t R = 10000;     // chain length per time point
  std::size_t thin = 100;
  std::size_t keep = 25;     // retained thinned states, must equal n_t
  std::optional<double> omega;
  std::uint64_t seed = 1;

  void validate() const;
  std::size_t num_nodes() const noexcept { return kNumArchetypes * p_prime; }
};

struct GroundTruth {
  std::vector<std::string> node_names;
  std::vector<Archetype> archetype;
  /// B_true(i, j) = b^{(i)}_{t,j} for every t: 1/p' between distinct nodes of
  /// the same archetype, else 0.
  Eigen::MatrixXd B_true;
  Eigen::MatrixXd mean_profiles;  // p x T
  std::size_t num_times = 0;

  std::size_t num_nodes() const noexcept { return archetype.size(); }
};

/// Time-invariant 0/1 edge indicator over (i, j, t).
class EdgeTensor {
 public:
  EdgeTensor(Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> adjacency, std::size_t T);
  bool operator()(std::size_t i, std::size_t j, std::size_t t) const;
  std::size_t num_nodes() const noexcept { return static_cast<std::size_t>(adj_.rows()); }
  std::size_t num_times() const noexcept { return T_; }
  std::size_t degree(std::size_t i) const;

 private:
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> adj_;
  std::size_t T_;
};

/// Closed-form profile of unit amplitude on t = 1..T before stretching.
Eigen::VectorXd archetype_profile(Archetype archetype, std::size_t T);

/// Compresses `profile` onto `length` points by linear interpolation, then
/// zero-pads the tail back to the original length.
Eigen::VectorXd stretch_profile(const Eigen::VectorXd& profile, std::size_t length);

/// Per-node mean trajectories (p x T): each node's archetype profile stretched
/// to a period T' drawn uniformly from {T-3, ..., T}.
Eigen::MatrixXd make_mean_profiles(const SimulationSpec& spec, const std::vector<Archetype>& archetypes,
                                   RngStream& rng);

/// Archetypes in blocks a, b, c, d of p' nodes, coefficients and mean profiles.
GroundTruth make_ground_truth(const SimulationSpec& spec, RngStream& rng);

/// Runs the per-time node-wise Gibbs chain from zero, keeps the final `keep`
/// thinned states and adds the mean profiles. Time t uses stream (seed, t).
PseudoTimeDataset sample_observations(const SimulationSpec& spec, const GroundTruth& truth);

/// make_ground_truth on stream (seed, 0), then sample_observations, then
/// dropout on stream (seed, T + 1) when spec.omega is set.
std::pair<PseudoTimeDataset, GroundTruth> simulate_dataset(const SimulationSpec& spec);

/// Zeroes each entry independently with probability exp(-omega x^2).
PseudoTimeDataset apply_dropout(const PseudoTimeDataset& ds, double omega, RngStream& rng);

EdgeTensor true_adjacency(const GroundTruth& truth);

/// Sidecar CSV: node,archetype,<node names...> with one B_true row per node.
void save_ground_truth(const GroundTruth& truth, const std::filesystem::path& path);
GroundTruth load_ground_truth(const std::filesystem::path& path);

}  // namespace tvnet
