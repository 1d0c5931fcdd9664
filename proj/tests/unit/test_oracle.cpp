#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "rggeo/error.hpp"
#include "rggeo/oracle.hpp"

using namespace rggeo;

namespace {

// Worst ratio over directions of the cheapest conic combination of two steps,
// searching all step pairs, sampled on a dense angle grid.
double dense_metrication(double reach) {
  std::vector<std::pair<double, double>> steps;
  const int r = static_cast<int>(std::floor(reach));
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j)
      if ((i || j) && i * i + j * j <= reach * reach + 1e-9) steps.emplace_back(i, j);
  double worst = 1.0;
  for (int t = 0; t < 4000; ++t) {
    const double th = 2.0 * std::numbers::pi * t / 4000.0;
    const double ux = std::cos(th), uy = std::sin(th);
    double best = INFINITY;
    for (const auto& s : steps)
      for (const auto& q : steps) {
        const double det = s.first * q.second - s.second * q.first;
        if (det == 0.0) {
          const double along = s.first * ux + s.second * uy;
          const double len = std::hypot(s.first, s.second);
          if (std::abs(along - len) < 1e-12) best = std::min(best, 1.0);
          continue;
        }
        const double al = (ux * q.second - uy * q.first) / det;
        const double be = (s.first * uy - s.second * ux) / det;
        if (al < -1e-12 || be < -1e-12) continue;
        best = std::min(best, al * std::hypot(s.first, s.second) + be * std::hypot(q.first, q.second));
      }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("metrication factor") {
  CHECK(metrication_factor(1.0, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(metrication_factor(1.0, 1) == 1.0);
  CHECK_THROWS_AS(metrication_factor(5.0, 3), UnsupportedError);
  for (double r : {1.0, 1.5, 2.0, 3.0, 5.0}) {
    INFO("r/h = ", r);
    const double exact = metrication_factor(r, 2);
    const double dense = dense_metrication(r);
    CHECK(exact >= dense - 1e-12);
    CHECK(exact == doctest::Approx(dense).epsilon(1e-5));
  }
  CHECK(metrication_factor(5.0, 2) - 1.0 <= 0.015);
}

TEST_CASE("eval_F on straight lines") {
  const Domain d = Domain::unit_cube(2);
  const std::vector<double> a{0.1, 0.2}, b{0.7, 0.9};
  CHECK(eval_F(make_power_norm(d, 1.0), ContinuousPath::straight(a, b, 5)) ==
        doctest::Approx(distance(a, b)).epsilon(1e-14));
  CHECK(eval_F(make_power_norm(d, 2.0), ContinuousPath::straight(a, b, 5)) ==
        doctest::Approx(squared_distance(a, b)).epsilon(1e-14));
}

TEST_CASE("refinement straightens a bent path and never increases F") {
  const Domain d = Domain::unit_cube(2);
  PointSet pts(2);
  for (auto x : {std::vector<double>{0.1, 0.1}, std::vector<double>{0.2, 0.8},
                 std::vector<double>{0.9, 0.9}})
    pts.push_back(x);
  const ContinuousPath init({0.0, 0.5, 1.0}, pts);
  for (double p : {1.0, 2.0}) {
    const Kernel k = make_power_norm(d, p);
    RefineOptions opt;
    opt.knots = 16;
    opt.iters = 3000;
    const OracleResult r = refine_geodesic(k, init, opt);
    const double target = std::pow(0.8 * std::sqrt(2.0), p);
    CHECK(r.value == doctest::Approx(target).epsilon(1e-6));
    CHECK(r.value >= target - 1e-12);
    CHECK(std::is_sorted(r.trace.rbegin(), r.trace.rend()));
    // trace[0] is the init resampled on uniform knots, which cuts the corner.
    CHECK(r.trace.front() <= eval_F(k, init) + 1e-12);
    CHECK(r.path.size() == 16);
    CHECK(r.path.front()[0] == 0.1);
    CHECK(r.path.back()[1] == 0.9);
  }
}

TEST_CASE("refinement stays in the domain") {
  const Domain d({-1, -1}, {1, 1});
  const Kernel k = make_weighted_euclidean(
      d, Expression::parse("1 + 8*exp(-2*(x1 - 1/2)^2 + x1*x2 + 2*x2^2)", 2));
  const std::vector<double> a{-0.8, -0.8}, b{0.8, 0.8};
  RefineOptions opt;
  opt.knots = 32;
  opt.iters = 500;
  const OracleResult r = refine_geodesic(k, ContinuousPath::straight(a, b), opt);
  CHECK(r.value < eval_F(k, ContinuousPath::straight(a, b), 16));
  for (std::size_t i = 0; i < r.path.size(); ++i) CHECK(d.contains(r.path.knot(i)));
}

TEST_CASE("grid oracle") {
  const Domain d = Domain::unit_cube(2);
  const Kernel k = make_power_norm(d, 1.0);
  const std::vector<double> a{0.1, 0.1}, b{0.9, 0.9};
  GridOptions opt;
  opt.h = 1.0 / 50;
  opt.r = 5 * opt.h;
  const OracleResult g = grid_geodesic(k, d, a, b, opt);
  CHECK(g.value >= distance(a, b) - 1e-12);
  CHECK(g.value <= distance(a, b) * (1.0 + g.residual) + 1e-12);
  CHECK(g.residual == doctest::Approx(metrication_factor(5.0, 2) - 1.0));

  opt.r = opt.h;
  CHECK_THROWS_AS(grid_geodesic(k, d, a, b, opt), ConfigError);
  opt.allow_metrication = true;
  const OracleResult stair = grid_geodesic(k, d, a, b, opt);
  CHECK(stair.value == doctest::Approx(1.6).epsilon(1e-9));
}
