#include "tvnet/simulate.hpp"

#include <cmath>
#include <sstream>

#include "tvnet/error.hpp"
#include "tvnet/text_io.hpp"

namespace tvnet {

void SimulationSpec::validate() const {
  // The stretched period T - 3 must leave at least two points.
  require(T >= 5, ErrorKind::kInvalidParameter, "simulation needs T >= 5", "T");
  require(n_t >= 1, ErrorKind::kInvalidParameter, "n_t must be positive", "n_t");
  require(p_prime >= 2, ErrorKind::kInvalidParameter, "p' must be at least 2", "p_prime");
  require(noise_sd > 0.0 && std::isfinite(noise_sd), ErrorKind::kInvalidParameter,
          "noise sd must be positive", "noise_sd");
  require(thin >= 1, ErrorKind::kInvalidParameter, "thin must be positive", "thin");
  require(keep == n_t, ErrorKind::kInvalidParameter, "keep must equal n_t", "keep");
  require(keep * thin <= R, ErrorKind::kInvalidParameter, "keep * thin must not exceed R", "R");
  // The chain's first state is the zero initialisation and is never retained.
  require(thin > 1 || keep < R, ErrorKind::kInvalidParameter, "keep must be below R when thin is 1", "R");
  if (omega) require(*omega >= 0.0, ErrorKind::kInvalidParameter, "omega must be nonnegative", "omega");
}

EdgeTensor::EdgeTensor(Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> adjacency, std::size_t T)
    : adj_(std::move(adjacency)), T_(T) {}

bool EdgeTensor::operator()(std::size_t i, std::size_t j, std::size_t t) const {
  require(t < T_, ErrorKind::kInvalidParameter, "time index out of range", "t");
  return adj_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0;
}

std::size_t EdgeTensor::degree(std::size_t i) const {
  return static_cast<std::size_t>(adj_.row(static_cast<Eigen::Index>(i)).cast<int>().sum());
}

Eigen::VectorXd archetype_profile(Archetype archetype, std::size_t T) {
  require(T >= 4, ErrorKind::kInvalidParameter, "profiles need T >= 4", "T");
  const auto n = static_cast<Eigen::Index>(T);
  Eigen::VectorXd out(n);
  // Logistic through 0.01 at t = 1 and 0.99 at t = T, rescaled onto exactly [0, 1].
  const double mid = 0.5 * static_cast<double>(T + 1);
  const double slope = std::log(99.0) / (mid - 1.0);
  auto logistic = [&](double t) { return 1.0 / (1.0 + std::exp(-slope * (t - mid))); };
  const double lo = logistic(1.0);
  const double hi = logistic(static_cast<double>(T));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i + 1);
    const double s = (logistic(t) - lo) / (hi - lo);
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    switch (archetype) {
      case Archetype::kDecreasing: out[i] = 1.0 - s; break;
      case Archetype::kIncreasing: out[i] = s; break;
      case Archetype::kPeak: out[i] = 4.0 * u * (1.0 - u); break;
      case Archetype::kNull: out[i] = 0.0; break;
    }
  }
  return out;
}

Eigen::VectorXd stretch_profile(const Eigen::VectorXd& profile, std::size_t length) {
  const auto n = profile.size();
  require(length >= 2 && static_cast<Eigen::Index>(length) <= n, ErrorKind::kInvalidParameter,
          "stretched length must lie in [2, T]", "length");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  const auto L = static_cast<Eigen::Index>(length);
  for (Eigen::Index s = 0; s < L; ++s) {
    const double pos = static_cast<double>(s) * static_cast<double>(n - 1) / static_cast<double>(L - 1);
    const auto lo = std::min(static_cast<Eigen::Index>(std::floor(pos)), n - 1);
    const auto hi = std::min(lo + 1, n - 1);
    const double frac = pos - static_cast<double>(lo);
    out[s] = (1.0 - frac) * profile[lo] + frac * profile[hi];
  }
  return out;
}

Eigen::MatrixXd make_mean_profiles(const SimulationSpec& spec, const std::vector<Archetype>& archetypes,
                                   RngStream& rng) {
  require(spec.T >= 4, ErrorKind::kInvalidParameter, "simulation needs T >= 4", "T");
  const auto T = static_cast<Eigen::Index>(spec.T);
  Eigen::MatrixXd profiles(static_cast<Eigen::Index>(archetypes.size()), T);
  for (std::size_t i = 0; i < archetypes.size(); ++i) {
    const auto length = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(spec.T) - 3, static_cast<std::int64_t>(spec.T)));
    profiles.row(static_cast<Eigen::Index>(i)) =
        stretch_profile(archetype_profile(archetypes[i], spec.T), length).transpose();
  }
  return profiles;
}

GroundTruth make_ground_truth(const SimulationSpec& spec, RngStream& rng) {
  spec.validate();
  GroundTruth truth;
  truth.num_times = spec.T;
  constexpr Archetype kOrder[kNumArchetypes] = {Archetype::kDecreasing, Archetype::kIncreasing,
                                                Archetype::kPeak, Archetype::kNull};
  for (Archetype a : kOrder) {
    for (std::size_t k = 0; k < spec.p_prime; ++k) {
      truth.archetype.push_back(a);
      std::string name(1, static_cast<char>(a));
      name += (k + 1 < 10 ? "0" : "") + std::to_string(k + 1);
      truth.node_names.push_back(std::move(name));
    }
  }
  const auto p = static_cast<Eigen::Index>(truth.archetype.size());
  truth.B_true = Eigen::MatrixXd::Zero(p, p);
  const double w = 1.0 / static_cast<double>(spec.p_prime);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      if (i != j && truth.archetype[static_cast<std::size_t>(i)] == truth.archetype[static_cast<std::size_t>(j)])
        truth.B_true(i, j) = w;
  truth.mean_profiles = make_mean_profiles(spec, truth.archetype, rng);
  return truth;
}

PseudoTimeDataset sample_observations(const SimulationSpec& spec, const GroundTruth& truth) {
  spec.validate();
  const std::size_t p = truth.num_nodes();
  require(static_cast<std::size_t>(truth.B_true.rows()) == p && truth.mean_profiles.cols() == static_cast<Eigen::Index>(spec.T),
          ErrorKind::kInvalidParameter, "ground truth does not match the simulation spec");

  // Sparse rows of B_true for the node-wise conditional means.
  std::vector<std::vector<std::pair<std::size_t, double>>> parents(p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const double b = truth.B_true(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (i != j && b != 0.0) parents[i].emplace_back(j, b);
    }

  const std::size_t N = spec.T * spec.n_t;
  Eigen::MatrixXd values(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(p));
  std::vector<int> time(N);
  const std::size_t first_kept = spec.R / spec.thin - spec.keep + 1;  // thinned-state index, 1-based

  std::vector<double> s(p);
  for (std::size_t t = 0; t < spec.T; ++t) {
    RngStream rng(spec.seed, t + 1);
    std::fill(s.begin(), s.end(), 0.0);
    std::size_t row = t * spec.n_t;
    for (std::size_t r = 2; r <= spec.R; ++r) {
      for (std::size_t i = 0; i < p; ++i) {
        double mean = 0.0;
        for (const auto& [j, b] : parents[i]) mean += b * s[j];
        s[i] = mean + spec.noise_sd * rng.normal();
      }
      if (r % spec.thin == 0 && r / spec.thin >= first_kept) {
        for (std::size_t i = 0; i < p; ++i) {
          values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i)) =
              s[i] + truth.mean_profiles(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t));
        }
        time[row] = static_cast<int>(t + 1);
        ++row;
      }
    }
  }
  return PseudoTimeDataset(std::move(values), std::move(time), truth.node_names);
}

std::pair<PseudoTimeDataset, GroundTruth> simulate_dataset(const SimulationSpec& spec) {
  spec.validate();
  RngStream truth_rng(spec.seed, 0);
  GroundTruth truth = make_ground_truth(spec, truth_rng);
  PseudoTimeDataset ds = sample_observations(spec, truth);
  if (spec.omega) {
    RngStream drop_rng(spec.seed, spec.T + 1);
    ds = apply_dropout(ds, *spec.omega, drop_rng);
  }
  return {std::move(ds), std::move(truth)};
}

PseudoTimeDataset apply_dropout(const PseudoTimeDataset& ds, double omega, RngStream& rng) {
  require(omega >= 0.0, ErrorKind::kInvalidParameter, "omega must be nonnegative", "omega");
  Eigen::MatrixXd v = ds.values();
  for (Eigen::Index r = 0; r < v.rows(); ++r)
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      const double drop = std::exp(-omega * v(r, c) * v(r, c));
      if (rng.uniform() < drop) v(r, c) = 0.0;
    }
  return PseudoTimeDataset(std::move(v), ds.time_label(), ds.node_names(), ds.original_labels());
}

EdgeTensor true_adjacency(const GroundTruth& truth) {
  const auto p = static_cast<Eigen::Index>(truth.num_nodes());
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> adj(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      adj(i, j) = (i != j && truth.archetype[static_cast<std::size_t>(i)] ==
                                 truth.archetype[static_cast<std::size_t>(j)])
                      ? 1
                      : 0;
  return EdgeTensor(std::move(adj), truth.num_times);
}

void save_ground_truth(const GroundTruth& truth, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "node,archetype";
  for (const auto& n : truth.node_names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < truth.num_nodes(); ++i) {
    out << truth.node_names[i] << ',' << static_cast<char>(truth.archetype[i]);
    for (std::size_t j = 0; j < truth.num_nodes(); ++j)
      out << ',' << text::format_double(truth.B_true(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    out << '\n';
  }
  out << "# mean_profiles T=" << truth.num_times << '\n';
  for (std::size_t i = 0; i < truth.num_nodes(); ++i) {
    out << truth.node_names[i];
    for (Eigen::Index t = 0; t < truth.mean_profiles.cols(); ++t)
      out << ',' << text::format_double(truth.mean_profiles(static_cast<Eigen::Index>(i), t));
    out << '\n';
  }
  text::write_file_atomic(path, out.str());
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path);
  if (lines.empty()) fail(ErrorKind::kFormatError, "empty ground-truth file", path.string());
  const auto header = text::split(lines[0], ',');
  if (header.size() < 3 || header[0] != "node" || header[1] != "archetype") {
    fail(ErrorKind::kFormatError, "ground-truth header must start with node,archetype", path.string());
  }
  GroundTruth truth;
  truth.node_names.assign(header.begin() + 2, header.end());
  const std::size_t p = truth.node_names.size();
  if (lines.size() < p + 1) fail(ErrorKind::kFormatError, "ground-truth file is truncated", path.string());
  truth.B_true.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    const auto f = text::split(lines[i + 1], ',');
    if (f.size() != p + 2 || f[0] != truth.node_names[i] || f[1].size() != 1) {
      fail(ErrorKind::kFormatError, "malformed ground-truth row " + std::to_string(i + 2), path.string());
    }
    truth.archetype.push_back(static_cast<Archetype>(f[1][0]));
    for (std::size_t j = 0; j < p; ++j)
      truth.B_true(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = text::parse_double(f[j + 2], "B_true");
  }
  std::size_t line = p + 1;
  if (line < lines.size() && lines[line].rfind("# mean_profiles T=", 0) == 0) {
    truth.num_times = static_cast<std::size_t>(text::parse_int(lines[line].substr(18), "T"));
    truth.mean_profiles.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(truth.num_times));
    for (std::size_t i = 0; i < p; ++i) {
      const auto f = text::split(lines.at(line + 1 + i), ',');
      if (f.size() != truth.num_times + 1) fail(ErrorKind::kFormatError, "malformed mean profile", path.string());
      for (std::size_t t = 0; t < truth.num_times; ++t)
        truth.mean_profiles(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) = text::parse_double(f[t + 1], "profile");
    }
  }
  return truth;
}

}  // namespace tvnet
