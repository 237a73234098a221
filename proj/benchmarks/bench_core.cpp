#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "lineups/bootstrap.hpp"
#include "lineups/johnson.hpp"
#include "lineups/ridge.hpp"
#include "lineups/spectral.hpp"

namespace {

std::vector<double> random_vector(long long size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 10.0);
  std::vector<double> v(static_cast<std::size_t>(size));
  for (double& x : v) x = gauss(rng);
  return v;
}

void BM_AdjacencyApply(benchmark::State& state) {
  const auto space = lineups::make_space(15, 5);
  const auto v = random_vector(space.num_lineups, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(lineups::adjacency_apply(space, v));
}
BENCHMARK(BM_AdjacencyApply);

void BM_Decompose(benchmark::State& state) {
  const auto space = lineups::make_space(15, 5);
  const auto v = random_vector(space.num_lineups, 7);
  for (auto _ : state) benchmark::DoNotOptimize(lineups::decompose(space, v));
}
BENCHMARK(BM_Decompose);

void BM_RankPairs(benchmark::State& state) {
  const auto space = lineups::make_space(15, 5);
  const auto v = random_vector(space.num_lineups, 7);
  const auto decomp = lineups::decompose(space, v);
  const auto poss = [](const lineups::Group&) -> long long { return 500; };
  for (auto _ : state)
    benchmark::DoNotOptimize(
        lineups::rank_groups(decomp, poss, 2, 0, lineups::RankKey::kSclp));
}
BENCHMARK(BM_RankPairs);

void BM_BootstrapTrial(benchmark::State& state) {
  lineups::SynthConfig config;
  config.n = 15;
  config.k = 5;
  config.num_plays = 20000;
  config.seed = 11;
  const auto plays = lineups::generate_synthetic_season(config);
  const auto roster = lineups::synthetic_roster(15);
  const std::vector<lineups::Group> groups{lineups::Group{0, 1}};
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        lineups::bootstrap_group_stats(plays, roster, 5, groups, 1, ++seed));
}
BENCHMARK(BM_BootstrapTrial);

void BM_RidgeFit(benchmark::State& state) {
  const auto dm = lineups::build_design_matrix(15, 5);
  const auto y = random_vector(dm.rows(), 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(lineups::fit_ridge(dm, y, 10.0));
}
BENCHMARK(BM_RidgeFit);

}  // namespace

BENCHMARK_MAIN();
