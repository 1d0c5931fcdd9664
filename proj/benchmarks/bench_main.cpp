#include <benchmark/benchmark.h>

#include "rggeo/graph.hpp"
#include "rggeo/kernel.hpp"
#include "rggeo/sampling.hpp"
#include "rggeo/shortest_path.hpp"

using namespace rggeo;

namespace {

const Point kA{0.1, 0.1};
const Point kB{0.9, 0.9};

EpsilonGraph make_graph(std::size_t n) {
  const PointCloud c = sample_points(DensitySpec::uniform(), Domain::unit_cube(2), n, 1);
  return build_graph(c, kA, kB, epsilon_for(n, 0.3, 2).epsilon);
}

void BM_BuildGraph(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const PointCloud c = sample_points(DensitySpec::uniform(), Domain::unit_cube(2), n, 1);
  const double eps = epsilon_for(n, 0.3, 2).epsilon;
  for (auto _ : state) benchmark::DoNotOptimize(build_graph(c, kA, kB, eps));
}
BENCHMARK(BM_BuildGraph)->RangeMultiplier(2)->Range(1000, 16000)->Unit(benchmark::kMillisecond);

void BM_Dijkstra(benchmark::State& state) {
  const EpsilonGraph g = make_graph(static_cast<std::size_t>(state.range(0)));
  const Kernel k = make_weighted_euclidean(Domain::unit_cube(2), Expression::parse("1 + x1*x2", 2));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_path(g, k, CostKind::linear()));
}
BENCHMARK(BM_Dijkstra)->RangeMultiplier(2)->Range(1000, 8000)->Unit(benchmark::kMillisecond);

void BM_HopDP(benchmark::State& state) {
  const EpsilonGraph g = make_graph(static_cast<std::size_t>(state.range(0)));
  const Kernel k = make_power_norm(Domain::unit_cube(2), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(shortest_path(g, k, CostKind::riemann()));
}
BENCHMARK(BM_HopDP)->RangeMultiplier(2)->Range(500, 2000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
