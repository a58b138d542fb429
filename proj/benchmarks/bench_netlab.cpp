#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "netlab/centrality.hpp"
#include "netlab/graph.hpp"
#include "netlab/macro.hpp"
#include "netlab/simulate.hpp"

using namespace netlab;

namespace {

TemporalGraph random_network(std::size_t n, std::size_t avg_deg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<UserRecord> users(n);
  for (std::size_t i = 0; i < n; ++i) {
    users[i] = {static_cast<UserId>(i + 1), "u" + std::to_string(i + 1),
                static_cast<Timestamp>(i)};
  }
  std::vector<FollowEdge> edges;
  edges.reserve(n * avg_deg);
  for (std::size_t e = 0; e < n * avg_deg; ++e) {
    const UserId a = 1 + rng() % n, b = 1 + rng() % n;
    if (a != b) edges.push_back({a, b, static_cast<Timestamp>(rng() % n)});
  }
  return build_graph(std::move(users), std::move(edges));
}

void BM_BuildGraph(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_network(n, 10, 42));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * 10);
}
BENCHMARK(BM_BuildGraph)->Arg(10000)->Arg(100000);

void BM_PageRank(benchmark::State& state) {
  auto g = random_network(static_cast<std::size_t>(state.range(0)), 10, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pagerank(g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_PageRank)->Arg(10000)->Arg(100000);

void BM_Hits(benchmark::State& state) {
  auto g = random_network(static_cast<std::size_t>(state.range(0)), 10, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hits(g));
  }
}
BENCHMARK(BM_Hits)->Arg(10000)->Arg(100000);

void BM_SimulateBA(benchmark::State& state) {
  SimConfig cfg;
  cfg.n_final = static_cast<std::size_t>(state.range(0));
  cfg.m = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.n_final));
}
BENCHMARK(BM_SimulateBA)->Arg(10000)->Arg(100000);

void BM_FitPowerLaw(benchmark::State& state) {
  auto xs = sample_power_law(2.5, 1, static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_power_law(xs));
  }
}
BENCHMARK(BM_FitPowerLaw)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
