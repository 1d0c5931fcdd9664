#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "rggeo/config.hpp"
#include "rggeo/error.hpp"
#include "rggeo/sweep.hpp"

using namespace rggeo;

namespace {

RunConfig small() {
  RunConfig c;
  c.lo = {0.0, 0.0};
  c.hi = {1.0, 1.0};
  c.a = {0.1, 0.1};
  c.b = {0.9, 0.9};
  c.n_list = {200, 400};
  c.seeds = {1, 2, 3};
  c.costs = {CostType::Riemann, CostType::Linear};
  c.oracle.method = OracleSettings::Method::Refine;
  c.oracle.knots = 2;
  c.oracle.iters = 0;
  c.oracle.cache = false;
  c.rn_probe = 0.0;
  return c;
}

std::string csv(ConvergenceTable t) {
  for (auto& r : t.rows) {
    r.wall_time = 0.0;
    r.peak_mem_kb = 0;
  }
  std::ostringstream out;
  write_table_csv(t, out);
  return out.str();
}

ConvergenceTable synthetic(const std::vector<std::size_t>& ns,
                           const std::function<double(std::size_t)>& gap) {
  ConvergenceTable t;
  for (std::size_t n : ns)
    for (int s = 0; s < 3; ++s) {
      SweepRow r;
      r.n = n;
      r.seed = static_cast<std::uint64_t>(s);
      r.rel_gap = gap(n);
      t.rows.push_back(r);
    }
  return t;
}

}  // namespace

TEST_CASE("sweep is complete and ordered") {
  const RunConfig c = small();
  const ConvergenceTable t = run_sweep(c);
  REQUIRE(t.rows.size() == 2 * 3 * 2);
  std::size_t i = 0;
  for (std::size_t n : c.n_list)
    for (std::uint64_t s : c.seeds)
      for (CostType cost : c.costs) {
        CHECK(t.rows[i].n == n);
        CHECK(t.rows[i].seed == s);
        CHECK(t.rows[i].cost == cost);
        ++i;
      }
  CHECK(std::abs(t.oracle.value - 0.8 * std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("sweep is deterministic apart from timing, for any thread count") {
  RunConfig c = small();
  const std::string one = csv(run_sweep(c));
  CHECK(one == csv(run_sweep(c)));
  c.threads = 3;
  CHECK(one == csv(run_sweep(c)));
}

TEST_CASE("csv round-trip") {
  const ConvergenceTable t = run_sweep(small());
  std::ostringstream out;
  write_table_csv(t, out);
  std::istringstream in(out.str());
  const ConvergenceTable back = read_table_csv(in);
  REQUIRE(back.rows.size() == t.rows.size());
  std::ostringstream again;
  write_table_csv(back, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("disconnected cells are flagged rows") {
  RunConfig c = small();
  c.hi = {10.0, 10.0};
  c.a = {1.0, 1.0};
  c.b = {9.0, 9.0};
  c.n_list = {5};
  const ConvergenceTable t = run_sweep(c);
  REQUIRE(!t.rows.empty());
  for (const auto& r : t.rows) CHECK(r.status == RowStatus::Disconnected);
}

TEST_CASE("fit_rate recovers an exact power law") {
  const auto t = synthetic({100, 400, 1600, 6400}, [](std::size_t n) { return 3.0 / std::sqrt(double(n)); });
  const RateFit f = fit_rate(t, CostType::Riemann);
  CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0));
}

TEST_CASE("fit_rate on constant gaps has zero slope") {
  const auto t = synthetic({100, 200, 300}, [](std::size_t) { return 0.05; });
  CHECK(fit_rate(t, CostType::Riemann).slope == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fit_rate needs three positive medians") {
  const auto t = synthetic({100, 200, 300}, [](std::size_t n) { return n == 200 ? -0.1 : 0.1; });
  CHECK_THROWS_AS(fit_rate(t, CostType::Riemann), Error);
}

TEST_CASE("oracle cache is reused") {
  const auto dir = std::filesystem::temp_directory_path() / "rggeo_cache_test";
  std::filesystem::remove_all(dir);
  RunConfig c = small();
  c.oracle.knots = 8;
  c.oracle.iters = 20;
  c.oracle.cache = true;
  bool hit = true;
  const OracleResult first = compute_oracle(c, dir.string(), &hit);
  CHECK_FALSE(hit);
  const OracleResult second = compute_oracle(c, dir.string(), &hit);
  CHECK(hit);
  CHECK(second.value == first.value);
  c.b = {0.8, 0.9};
  compute_oracle(c, dir.string(), &hit);
  CHECK_FALSE(hit);
  std::filesystem::remove_all(dir);
}

TEST_CASE("median") {
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("fit_rate can fit the magnitude of negative gaps") {
  const auto t = synthetic({100, 400, 1600}, [](std::size_t n) { return -2.0 / double(n); });
  CHECK_THROWS_AS(fit_rate(t, CostType::Riemann), Error);
  CHECK(fit_rate(t, CostType::Riemann, true).slope == doctest::Approx(-1.0).epsilon(1e-12));
}
