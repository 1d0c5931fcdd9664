#include <cmath>
#include <vector>

#include "doctest.h"
#include "enumerate.hpp"
#include "rggeo/error.hpp"
#include "rggeo/random.hpp"
#include "rggeo/sampling.hpp"
#include "rggeo/shortest_path.hpp"

using namespace rggeo;

namespace {

Kernel random_weight(Rng& rng, double p) {
  const double c1 = rng.uniform(0.5, 2.0), c2 = rng.uniform(-1.0, 1.0), c3 = rng.uniform(-1.0, 1.0);
  const std::string text = std::to_string(c1) + " + exp(" + std::to_string(c2) + "*x1 + " +
                           std::to_string(c3) + "*x2)";
  return make_weighted_euclidean(Domain::unit_cube(2), Expression::parse(text, 2), p);
}

}  // namespace

TEST_CASE("shortest path equals exhaustive enumeration") {
  Rng rng(2024);
  int instances = 0;
  for (std::uint64_t seed = 0; instances < 20; ++seed) {
    const std::size_t n = 4 + rng.below(7);
    const PointCloud c = sample_points(DensitySpec::uniform(), Domain::unit_cube(2), n, seed);
    const std::vector<double> a{rng.uniform(), rng.uniform()}, b{rng.uniform(), rng.uniform()};
    const EpsilonGraph g = build_graph(c, a, b, 0.55);
    if (!is_connected(g, g.a_index(), g.b_index())) continue;
    ++instances;
    for (double p : {1.0, 2.0, 1.5}) {
      const Kernel k = random_weight(rng, p);
      for (const CostKind& kind : {CostKind::riemann(), CostKind::linear()}) {
        const auto brute = testing::enumerate_paths(g, k, kind, 11);
        const ShortestPathResult sp = shortest_path(g, k, kind, 11);
        CHECK(sp.value == brute.value);
        CHECK(evaluate_cost(g, k, kind, sp.path) == doctest::Approx(sp.value).epsilon(1e-12));
        validate_path(g, sp.path);
      }
    }
  }
}

TEST_CASE("layer minima agree with the hop DP") {
  const PointCloud c = sample_points(DensitySpec::uniform(), Domain::unit_cube(2), 60, 1);
  const std::vector<double> a{0.1, 0.1}, b{0.9, 0.8};
  const EpsilonGraph g = build_graph(c, a, b, 0.3);
  const Kernel k = make_power_norm(Domain::unit_cube(2), 2.0);
  const auto layers = hop_layer_minima(g, k, CostKind::riemann(), 30);
  REQUIRE(layers.size() == 31);
  CHECK(std::isinf(layers[0]));
  double best = INFINITY;
  for (std::size_t h = 1; h < layers.size(); ++h)
    best = std::min(best, static_cast<double>(h) * layers[h]);
  CHECK(shortest_path(g, k, CostKind::riemann(), 30).value == best);
  // p = 2 minimum over straight chains can never beat |b - a|^2.
  CHECK(best >= squared_distance(a, b));
}

TEST_CASE("errors and degenerate cases") {
  PointSet pts(2);
  pts.push_back(std::vector<double>{0.2, 0.2});
  pts.push_back(std::vector<double>{0.4, 0.2});
  pts.push_back(std::vector<double>{0.6, 0.2});
  const std::vector<double> a{0.0, 0.2}, b{0.8, 0.2};
  const Kernel k1 = make_power_norm(Domain::unit_cube(2), 1.0);
  const Kernel k2 = make_power_norm(Domain::unit_cube(2), 2.0);
  const EpsilonGraph g = build_graph(pts, a, b, 0.25);
  CHECK(shortest_path(g, k1, CostKind::riemann()).value == doctest::Approx(0.8));
  CHECK(shortest_path(g, k2, CostKind::riemann(), 4).path.vertices.size() == 5);
  CHECK_THROWS_AS(shortest_path(g, k2, CostKind::riemann(), 3), InfeasibleError);
  try {
    shortest_path(g, k2, CostKind::riemann(), 2);
  } catch (const InfeasibleError& e) {
    CHECK(e.bfs_hops() == 4);
  }
  const EpsilonGraph cut = build_graph(pts, a, std::vector<double>{1.0, 0.2}, 0.25);
  CHECK_THROWS_AS(shortest_path(cut, k1, CostKind::riemann()), NoPathError);
  CHECK_THROWS_AS(shortest_path(cut, k2, CostKind::riemann()), NoPathError);

  const EpsilonGraph same = build_graph(pts, a, a, 0.25);
  const ShortestPathResult z = shortest_path(same, k1, CostKind::riemann());
  CHECK(z.value == 0.0);
  CHECK(z.path.vertices.size() == 1);
}

TEST_CASE("ties prefer fewer hops, then the smaller vertex sequence") {
  // Square lattice: several equal-length staircases from a to b.
  PointSet pts(2);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      if ((i || j) && (i != 2 || j != 2)) pts.push_back(std::vector<double>{0.25 * i, 0.25 * j});
  const std::vector<double> a{0.0, 0.0}, b{0.5, 0.5};
  const Kernel k = make_custom(Domain::unit_cube(2), "|v1| + |v2|", 1.0, 1.0, std::sqrt(2.0), 0.0,
                               [](std::span<const double>, std::span<const double> v) {
                                 return std::abs(v[0]) + std::abs(v[1]);
                               });
  const EpsilonGraph g = build_graph(pts, a, b, 0.26);
  const ShortestPathResult r1 = shortest_path(g, k, CostKind::riemann());
  const ShortestPathResult r2 = shortest_path(g, k, CostKind::riemann(), 8);
  CHECK(r1.value == doctest::Approx(1.0));
  CHECK(r1.path == r2.path);
  // Among the six staircases the lexicographically smallest starts a -> 0 -> 1.
  REQUIRE(r1.path.vertices.size() == 5);
  CHECK(r1.path.vertices[1] == 0);
  CHECK(r1.path.vertices[2] == 1);
}

TEST_CASE("default hop cap") {
  const Kernel k = make_power_norm(Domain::unit_cube(2), 2.0);
  CHECK(default_hop_cap(k, 0.1) == static_cast<int>(std::ceil(2.0 * std::sqrt(2.0) / 0.1)));
}
