#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tvnet/diagnostics.hpp"
#include "tvnet/error.hpp"
#include "tvnet/rng.hpp"

using namespace tvnet;

namespace {

std::vector<double> iid_chain(std::size_t n, RngStream& rng) {
  std::vector<double> x(n);
  for (double& v : x) v = rng.normal();
  return x;
}

}  // namespace

TEST(SpectralVariance, WhiteAndAutoregressive) {
  // The 4% window leaves a single estimate noisy (sd about 0.23 relative), so
  // average over replicates.
  RngStream rng(1, 0);
  double white = 0.0, autoreg = 0.0;
  const int reps = 100;
  for (int r = 0; r < reps; ++r) {
    white += spectral_variance_zero(iid_chain(5000, rng));
    // AR(1) with coefficient 0.5 has long-run variance 1 / (1 - 0.5)^2 = 4.
    std::vector<double> ar(5000);
    double s = 0.0;
    for (double& v : ar) v = s = 0.5 * s + rng.normal();
    autoreg += spectral_variance_zero(ar);
  }
  EXPECT_NEAR(white / reps, 1.0, 0.1);
  EXPECT_NEAR(autoreg / reps, 4.0, 0.4);
  EXPECT_THROW(spectral_variance_zero(std::vector<double>(50, 1.0)), Error);
}

TEST(Geweke, UniformPValuesUnderStationarity) {
  RngStream rng(2, 0);
  std::vector<double> p;
  for (int rep = 0; rep < 500; ++rep) p.push_back(geweke_test(iid_chain(10000, rng)).p);
  EXPECT_GT(oracle::ks_one_sample(p, [](double u) { return std::clamp(u, 0.0, 1.0); }).p, 0.01);
}

TEST(Geweke, DetectsTrend) {
  RngStream rng(3, 0);
  auto x = iid_chain(1000, rng);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += 0.01 * static_cast<double>(i);
  EXPECT_LT(geweke_test(x).p, 0.01);
}

TEST(Geweke, Errors) {
  try {
    geweke_test(std::vector<double>(1000, 2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUndefinedVariance);
  }
  EXPECT_THROW(geweke_test(std::vector<double>(99, 0.0)), Error);
}

TEST(CramerVonMises, PublishedQuantiles) {
  // Upper 10%, 5% and 1% points of the limiting distribution.
  EXPECT_NEAR(cramer_von_mises_cdf(0.347), 0.90, 0.001);
  EXPECT_NEAR(cramer_von_mises_cdf(0.461), 0.95, 0.001);
  EXPECT_NEAR(cramer_von_mises_cdf(0.743), 0.99, 0.001);
  EXPECT_EQ(cramer_von_mises_cdf(0.0), 0.0);
}

TEST(CramerVonMises, MatchesSimulatedBridges) {
  // Monte Carlo oracle: integral of a squared discretised Brownian bridge.
  RngStream rng(4, 0);
  const int n = 2000;
  std::vector<double> stats;
  for (int rep = 0; rep < 4000; ++rep) {
    std::vector<double> w(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) w[i] = w[i - 1] + rng.normal() / std::sqrt(static_cast<double>(n));
    double integral = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double b = w[i] - w[n] * i / n;
      integral += b * b / n;
    }
    stats.push_back(integral);
  }
  EXPECT_GT(oracle::ks_one_sample(stats, cramer_von_mises_cdf).p, 0.01);
}

TEST(Heidelberger, UniformUnderStationarity) {
  RngStream rng(5, 0);
  std::vector<double> p;
  int halfwidth_ok = 0;
  for (int rep = 0; rep < 500; ++rep) {
    auto x = iid_chain(10000, rng);
    for (double& v : x) v += 5.0;
    const auto r = heidelberger_test(x);
    p.push_back(r.stationarity_p);
    halfwidth_ok += r.halfwidth_pass;
  }
  EXPECT_GT(oracle::ks_one_sample(p, [](double u) { return std::clamp(u, 0.0, 1.0); }).p, 0.01);
  EXPECT_GT(halfwidth_ok, 450);
}

TEST(Heidelberger, DetectsStrongTrend) {
  RngStream rng(6, 0);
  auto x = iid_chain(2000, rng);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += 0.01 * static_cast<double>(i);
  const auto r = heidelberger_test(x);
  EXPECT_LT(r.stationarity_p, 0.01);
  EXPECT_FALSE(r.stationary);
  EXPECT_THROW(heidelberger_test(std::vector<double>(500, 1.0)), Error);
}

TEST(Heidelberger, DiscardsTransient) {
  RngStream rng(7, 0);
  auto x = iid_chain(5000, rng);
  for (std::size_t i = 0; i < 400; ++i) x[i] += 8.0 * (1.0 - static_cast<double>(i) / 400.0);
  const auto r = heidelberger_test(x);
  EXPECT_TRUE(r.stationary);
  EXPECT_GT(r.start, 0u);
}

TEST(Diagnostics, PureFunctions) {
  RngStream rng(8, 0);
  const auto x = iid_chain(2000, rng);
  EXPECT_EQ(geweke_test(x).z, geweke_test(x).z);
  EXPECT_EQ(heidelberger_test(x).stationarity_p, heidelberger_test(x).stationarity_p);
}
