#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tvnet/error.hpp"
#include "tvnet/slice.hpp"

using namespace tvnet;

namespace {

std::vector<double> run_chain(const std::function<double(double)>& logd, double lo, double hi, double start,
                              int n, int thin, std::uint64_t seed) {
  RngStream rng(seed, 0);
  double x = start;
  std::vector<double> out;
  for (int i = 0; i < n * thin; ++i) {
    x = slice_sample_bounded(logd, lo, hi, x, rng);
    EXPECT_TRUE(x >= lo && x < hi);
    if (i % thin == thin - 1) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(Slice, BetaTarget) {
  auto logd = [](double x) { return 1.5 * std::log(x) + 3.0 * std::log1p(-x); };
  const auto draws = run_chain(logd, 0.0, 1.0, 0.5, 5000, 5, 1);
  const oracle::GridDensity grid(logd, 0.0, 1.0);
  EXPECT_GT(oracle::ks_one_sample(draws, [&](double x) { return grid.cdf(x); }).p, 0.01);
}

TEST(Slice, MassPiledAtUpperBound) {
  auto logd = [](double x) { return 40.0 * x; };
  const auto draws = run_chain(logd, 0.0, 1.0, 0.1, 5000, 5, 2);
  EXPECT_GT(oracle::ks_one_sample(draws, [](double r) { return oracle::reverse_exp_cdf(r, 40.0); }).p, 0.01);
}

TEST(Slice, BimodalTarget) {
  auto logd = [](double x) {
    // Modes far enough apart to be distinct, close enough for one slice to span both.
    return std::log(std::exp(-0.5 * (x - 1) * (x - 1) / 0.16) + std::exp(-0.5 * (x - 3) * (x - 3) / 0.16));
  };
  const auto draws = run_chain(logd, 0.0, 4.0, 1.0, 5000, 5, 3);
  const oracle::GridDensity grid(logd, 0.0, 4.0);
  EXPECT_GT(oracle::ks_one_sample(draws, [&](double x) { return grid.cdf(x); }).p, 0.01);
}

TEST(Slice, RejectsNonFiniteStart) {
  RngStream rng(4, 0);
  EXPECT_THROW(slice_sample_bounded([](double) { return -INFINITY; }, 0.0, 1.0, 0.5, rng), Error);
  EXPECT_THROW(slice_sample_bounded([](double) { return 0.0; }, 0.0, 1.0, 1.0, rng), Error);
}
