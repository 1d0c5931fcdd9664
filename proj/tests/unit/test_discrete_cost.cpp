#include <cmath>
#include <vector>

#include "doctest.h"
#include "rggeo/discrete_cost.hpp"
#include "rggeo/error.hpp"
#include "rggeo/oracle.hpp"

using namespace rggeo;

namespace {

// Vertices x_0 < ... on a line; a = first, b = last.
EpsilonGraph line_graph(const std::vector<double>& xs, double eps) {
  PointSet pts(1);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) pts.push_back(std::vector<double>{xs[i]});
  return build_graph(pts, std::vector<double>{xs.front()}, std::vector<double>{xs.back()}, eps);
}

DiscretePath line_path(const EpsilonGraph& g, std::size_t interior) {
  DiscretePath p;
  p.vertices.push_back(static_cast<std::uint32_t>(g.a_index()));
  for (std::uint32_t i = 0; i < interior; ++i) p.vertices.push_back(i);
  p.vertices.push_back(static_cast<std::uint32_t>(g.b_index()));
  return p;
}

Kernel ramp() {
  return make_weighted_euclidean(Domain::unit_cube(1), Expression::parse("1 + x1", 1));
}

}  // namespace

TEST_CASE("one-dimensional costs match left sums and exact integrals") {
  const std::vector<double> xs{0.0, 0.07, 0.2, 0.31, 0.5, 0.58, 0.77, 0.9, 1.0};
  const EpsilonGraph g = line_graph(xs, 0.25);
  const DiscretePath path = line_path(g, xs.size() - 2);
  validate_path(g, path);
  const Kernel k = ramp();
  double left = 0.0, exact = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double dx = xs[i + 1] - xs[i];
    left += (1.0 + xs[i]) * dx;
    exact += dx + 0.5 * (xs[i + 1] * xs[i + 1] - xs[i] * xs[i]);
  }
  CHECK(cost_riemann(g, k, path) == doctest::Approx(left).epsilon(1e-14));
  CHECK(cost_linear(g, k, path) == doctest::Approx(exact).epsilon(1e-14));
  CHECK(exact == doctest::Approx(1.5));
  CHECK(cost_quasinormal(g, k, path, LocalMode::frozen()) ==
        doctest::Approx(left).epsilon(1e-14));
}

TEST_CASE("power kernel costs on a straight chain") {
  const std::vector<double> xs{0.0, 0.1, 0.3, 0.4, 0.7, 1.0};
  const EpsilonGraph g = line_graph(xs, 0.35);
  const DiscretePath path = line_path(g, xs.size() - 2);
  const Kernel k2 = make_power_norm(Domain::unit_cube(1), 2.0);
  double sq = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) sq += std::pow(xs[i + 1] - xs[i], 2);
  const double m = static_cast<double>(xs.size() - 1);
  CHECK(cost_riemann(g, k2, path) == doctest::Approx(m * sq).epsilon(1e-14));
  CHECK(cost_linear(g, k2, path) == doctest::Approx(m * sq).epsilon(1e-14));
  // Jensen: m sum |dx|^2 >= |b - a|^2 with equality for equal steps.
  CHECK(cost_riemann(g, k2, path) >= 1.0);
  const Kernel k1 = make_power_norm(Domain::unit_cube(1), 1.0);
  CHECK(cost_riemann(g, k1, path) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("midpoint anchor") {
  const std::vector<double> xs{0.0, 0.25, 0.5, 0.75, 1.0};
  const EpsilonGraph g = line_graph(xs, 0.3);
  const DiscretePath path = line_path(g, 3);
  // The midpoint rule is exact for the linear weight.
  CHECK(cost_riemann(g, ramp(), path, Anchor::Midpoint) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("refined local distance never exceeds the frozen value for convex frozen kernels") {
  const Kernel k = make_power_norm(Domain::unit_cube(2), 1.0);
  const std::vector<double> u{0.2, 0.3}, v{0.25, 0.34};
  const LocalDf fr = local_df(k, u, v, LocalMode::frozen());
  const LocalDf re = local_df(k, u, v, LocalMode::refined());
  CHECK(fr.value == doctest::Approx(std::hypot(0.05, 0.04)));
  CHECK(re.value <= fr.value + 1e-12);
  CHECK(re.value >= fr.value - 1e-12);

  const Kernel w = make_weighted_euclidean(
      Domain({-1, -1}, {1, 1}), Expression::parse("1 + 8*exp(-2*(x1 - 1/2)^2 + x1*x2 + 2*x2^2)", 2));
  const std::vector<double> p{0.3, 0.3}, q{0.5, 0.6};
  const LocalDf wr = local_df(w, p, q, LocalMode::refined(8, 400));
  PointSet seg(2);
  seg.push_back(p);
  seg.push_back(q);
  const double straight = eval_F(w, ContinuousPath({0.0, 1.0}, seg), 16);
  CHECK(wr.value <= straight + 1e-12);
}

TEST_CASE("path validation") {
  const std::vector<double> xs{0.0, 0.2, 0.4, 0.6};
  const EpsilonGraph g = line_graph(xs, 0.25);
  DiscretePath bad;
  bad.vertices = {static_cast<std::uint32_t>(g.a_index()), 1u, static_cast<std::uint32_t>(g.b_index())};
  CHECK_THROWS_AS(validate_path(g, bad), ConfigError);
  DiscretePath wrong_end;
  wrong_end.vertices = {static_cast<std::uint32_t>(g.a_index()), 0u};
  CHECK_THROWS_AS(validate_path(g, wrong_end), ConfigError);
  DiscretePath empty;
  CHECK_THROWS_AS(validate_path(g, empty), ConfigError);
}

TEST_CASE("interpolation times are uniform in edge count") {
  const std::vector<double> xs{0.0, 0.1, 0.5, 0.6};
  const EpsilonGraph g = line_graph(xs, 0.45);
  const DiscretePath path = line_path(g, 2);
  const ContinuousPath c = interpolate(path, g);
  REQUIRE(c.size() == 4);
  CHECK(c.times()[1] == doctest::Approx(1.0 / 3.0));
  CHECK(c.at(0.5)[0] == doctest::Approx(0.3));
}

TEST_CASE("cost type names") {
  CHECK(to_string(CostType::Riemann) == "H");
  CHECK(parse_cost_type("l") == CostType::Linear);
  CHECK(parse_cost_type("G") == CostType::Quasinormal);
  CHECK_THROWS_AS(parse_cost_type("X"), ConfigError);
}
