#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "tvnet/error.hpp"
#include "tvnet/simulate.hpp"

using namespace tvnet;

TEST(Profiles, ShapesBeforeStretch) {
  const auto a = archetype_profile(Archetype::kDecreasing, 8);
  const auto b = archetype_profile(Archetype::kIncreasing, 8);
  const auto c = archetype_profile(Archetype::kPeak, 8);
  const auto d = archetype_profile(Archetype::kNull, 8);
  EXPECT_DOUBLE_EQ(a(0), a.maxCoeff());
  EXPECT_NEAR(a(7), 0.0, 1e-15);
  EXPECT_NEAR(b(0), 0.0, 1e-15);
  EXPECT_NEAR(b(7), 1.0, 1e-15);
  for (int t = 1; t < 8; ++t) {
    EXPECT_LE(a(t), a(t - 1));
    EXPECT_GE(b(t), b(t - 1));
  }
  EXPECT_NEAR(c(0), 0.0, 1e-15);
  EXPECT_NEAR(c(7), 0.0, 1e-15);
  Eigen::Index peak;
  c.maxCoeff(&peak);
  for (Eigen::Index t = 1; t <= peak; ++t) EXPECT_GE(c(t), c(t - 1));
  for (Eigen::Index t = peak + 1; t < 8; ++t) EXPECT_LE(c(t), c(t - 1));
  EXPECT_EQ(d, Eigen::VectorXd::Zero(8));
  EXPECT_THROW(archetype_profile(Archetype::kPeak, 3), Error);
}

TEST(Profiles, StretchAndPad) {
  const auto b = archetype_profile(Archetype::kIncreasing, 8);
  EXPECT_EQ(stretch_profile(b, 8), b);
  const auto s = stretch_profile(b, 5);
  ASSERT_EQ(s.size(), 8);
  EXPECT_DOUBLE_EQ(s(0), b(0));
  EXPECT_DOUBLE_EQ(s(4), b(7));
  EXPECT_EQ(s.tail(3), Eigen::VectorXd::Zero(3));
  // Interior point at position 1.75 of the original grid.
  EXPECT_NEAR(s(1), 0.25 * b(1) + 0.75 * b(2), 1e-15);
}

TEST(Profiles, MeanProfilesHaveLengthT) {
  SimulationSpec spec;
  RngStream rng(1, 0);
  const auto truth = make_ground_truth(spec, rng);
  EXPECT_EQ(truth.mean_profiles.rows(), 40);
  EXPECT_EQ(truth.mean_profiles.cols(), 8);
  for (int i = 30; i < 40; ++i) EXPECT_EQ(truth.mean_profiles.row(i).norm(), 0.0);
}

TEST(GroundTruthTest, AdjacencyStructure) {
  SimulationSpec spec;
  RngStream rng(2, 0);
  const auto truth = make_ground_truth(spec, rng);
  const auto adj = true_adjacency(truth);
  for (std::size_t i = 0; i < 40; ++i) {
    EXPECT_EQ(adj.degree(i), 9u);
    EXPECT_FALSE(adj(i, i, 0));
    for (std::size_t j = 0; j < 40; ++j) {
      EXPECT_EQ(adj(i, j, 3), adj(j, i, 3));
      EXPECT_EQ(adj(i, j, 0), adj(i, j, 7));
      EXPECT_EQ(truth.B_true(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), adj(i, j, 0) ? 0.1 : 0.0);
    }
  }
}

TEST(Simulation, DefaultShapeAndDeterminism) {
  SimulationSpec spec;
  spec.seed = 5;
  const auto [ds, truth] = simulate_dataset(spec);
  EXPECT_EQ(ds.num_samples(), 200u);
  EXPECT_EQ(ds.num_nodes(), 40u);
  EXPECT_EQ(ds.num_times(), 8u);
  const auto [ds2, truth2] = simulate_dataset(spec);
  EXPECT_EQ(ds.values(), ds2.values());
  EXPECT_EQ(truth.mean_profiles, truth2.mean_profiles);
}

TEST(Simulation, IndependentNullCase) {
  SimulationSpec spec;
  spec.seed = 6;
  GroundTruth truth;
  truth.num_times = 8;
  for (int i = 0; i < 40; ++i) {
    truth.archetype.push_back(Archetype::kNull);
    truth.node_names.push_back("n" + std::to_string(i));
  }
  truth.B_true = Eigen::MatrixXd::Zero(40, 40);
  truth.mean_profiles = Eigen::MatrixXd::Zero(40, 8);
  const auto ds = sample_observations(spec, truth);
  const double var = ds.values().array().square().mean();
  EXPECT_NEAR(var, 0.01, 0.0005);
}

TEST(Simulation, SameArchetypeCorrelationExceedsCross) {
  SimulationSpec spec;
  spec.seed = 7;
  const auto [ds, truth] = simulate_dataset(spec);
  double same = 0.0, cross = 0.0;
  int ns = 0, nc = 0;
  for (int t = 1; t <= 8; ++t) {
    const auto& rows = ds.rows_at(t);
    Eigen::MatrixXd block(static_cast<Eigen::Index>(rows.size()), 40);
    for (std::size_t r = 0; r < rows.size(); ++r) block.row(static_cast<Eigen::Index>(r)) = ds.values().row(static_cast<Eigen::Index>(rows[r]));
    const Eigen::MatrixXd centered = block.rowwise() - block.colwise().mean();
    const Eigen::MatrixXd cov = centered.transpose() * centered;
    for (int i = 0; i < 40; ++i)
      for (int j = i + 1; j < 40; ++j) {
        const double corr = cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
        if (truth.archetype[i] == truth.archetype[j]) {
          same += corr;
          ++ns;
        } else {
          cross += corr;
          ++nc;
        }
      }
  }
  EXPECT_GT(same / ns - cross / nc, 0.1);
}

TEST(Simulation, RetainedSamplesNearlyUncorrelated) {
  SimulationSpec spec;
  spec.seed = 8;
  const auto [ds, truth] = simulate_dataset(spec);
  double acf = 0.0;
  int count = 0;
  for (int t = 1; t <= 8; ++t) {
    const auto& rows = ds.rows_at(t);
    for (int i = 0; i < 40; ++i) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(rows.size()));
      for (std::size_t r = 0; r < rows.size(); ++r) x(static_cast<Eigen::Index>(r)) = ds.values()(static_cast<Eigen::Index>(rows[r]), i);
      x.array() -= x.mean();
      acf += x.head(x.size() - 1).dot(x.tail(x.size() - 1)) / x.squaredNorm();
      ++count;
    }
  }
  EXPECT_LT(std::abs(acf / count), 0.1);
}

TEST(Dropout, Boundaries) {
  SimulationSpec spec;
  spec.seed = 9;
  const auto [ds, truth] = simulate_dataset(spec);
  RngStream rng(1, 1);
  EXPECT_EQ(apply_dropout(ds, 0.0, rng).values().cwiseAbs().maxCoeff(), 0.0);
  const auto kept = apply_dropout(ds, 1e6, rng);
  for (Eigen::Index i = 0; i < ds.values().size(); ++i) {
    if (std::abs(ds.values().data()[i]) > 0.01) {
      EXPECT_EQ(kept.values().data()[i], ds.values().data()[i]);
    }
  }
  EXPECT_THROW(apply_dropout(ds, -1.0, rng), Error);
}

TEST(Dropout, RateMatchesExpectation) {
  SimulationSpec spec;
  spec.seed = 10;
  const auto [ds, truth] = simulate_dataset(spec);
  RngStream rng(3, 3);
  const auto dropped = apply_dropout(ds, 2.0, rng);
  const double expected = (-2.0 * ds.values().array().square()).exp().mean();
  const double observed = (dropped.values().array() == 0.0).cast<double>().mean();
  // Binomial standard error with 8000 entries is below 0.006.
  EXPECT_NEAR(observed, expected, 0.025);
}

TEST(GroundTruthTest, SidecarRoundTrip) {
  SimulationSpec spec;
  RngStream rng(4, 0);
  const auto truth = make_ground_truth(spec, rng);
  const auto path = std::filesystem::temp_directory_path() / "tvnet_truth_test.csv";
  save_ground_truth(truth, path);
  const auto back = load_ground_truth(path);
  EXPECT_EQ(back.node_names, truth.node_names);
  EXPECT_EQ(back.archetype, truth.archetype);
  EXPECT_EQ(back.B_true, truth.B_true);
  EXPECT_EQ(back.mean_profiles, truth.mean_profiles);
  EXPECT_EQ(back.num_times, truth.num_times);
}

TEST(SimulationSpec, TooFewTimes) {
  SimulationSpec spec;
  spec.T = 4;
  EXPECT_THROW(spec.validate(), Error);
  spec.T = 5;
  EXPECT_NO_THROW(spec.validate());
}
