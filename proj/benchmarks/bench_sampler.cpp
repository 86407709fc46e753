#include <benchmark/benchmark.h>

#include "tvnet/gibbs.hpp"
#include "tvnet/prior.hpp"
#include "tvnet/simulate.hpp"
#include "tvnet/tridiagonal.hpp"

namespace {

void BM_TridiagonalSample(benchmark::State& state) {
  const auto T = static_cast<std::size_t>(state.range(0));
  tvnet::RngStream rng(1, 0);
  auto P = tvnet::build_precision(tvnet::CopulaCorrelation(0.8, T));
  P.diag.array() += 2.0;
  const Eigen::VectorXd h = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(T));
  for (auto _ : state) benchmark::DoNotOptimize(tvnet::sample_normal_tridiag_precision(P, h, rng));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TridiagonalSample)->RangeMultiplier(4)->Range(4, 1024)->Complexity(benchmark::oN);

void BM_GibbsSweep(benchmark::State& state) {
  tvnet::SimulationSpec spec;
  spec.p_prime = static_cast<std::size_t>(state.range(0));
  const auto [ds, truth] = tvnet::simulate_dataset(spec);
  const auto std_ds = tvnet::standardize(ds);
  std::vector<std::size_t> predictors;
  for (std::size_t j = 1; j < std_ds.num_nodes(); ++j) predictors.push_back(j);
  const tvnet::ModelHyperparams hp{50.0, 20.0};
  tvnet::GibbsChain chain(tvnet::TargetData::from_dataset(std_ds, 0, predictors), hp,
                          tvnet::ChainState::initial(std_ds.num_times(), predictors.size(), hp));
  tvnet::RngStream rng(2, 0);
  for (auto _ : state) chain.sweep(rng);
  state.counters["predictors"] = static_cast<double>(predictors.size());
}
BENCHMARK(BM_GibbsSweep)->Arg(5)->Arg(10)->Arg(25);

void BM_Simulate(benchmark::State& state) {
  tvnet::SimulationSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(tvnet::simulate_dataset(spec));
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
