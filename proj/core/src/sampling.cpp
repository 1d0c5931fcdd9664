#include "rggeo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rggeo/error.hpp"
#include "rggeo/random.hpp"
#include "rggeo/spatial_index.hpp"

namespace rggeo {

DensitySpec DensitySpec::uniform() { return DensitySpec{}; }

DensitySpec DensitySpec::expression(const rggeo::Expression& rho, const Domain& domain,
                                    std::optional<double> c_lo,
                                    std::optional<double> c_hi) {
  if (rho.max_coordinate() > domain.dim())
    throw ConfigError("density: expression uses coordinates beyond the domain dimension");
  DensitySpec spec;
  spec.kind = Kind::Expression;
  spec.rho = rho;
  if (!c_lo || !c_hi) {
    const Interval r = rho.bound(domain.lo(), domain.hi());
    spec.c_lo = c_lo.value_or(r.lo);
    spec.c_hi = c_hi.value_or(r.hi);
  } else {
    spec.c_lo = *c_lo;
    spec.c_hi = *c_hi;
  }
  if (!(spec.c_lo > 0.0) || !(spec.c_hi >= spec.c_lo) || !std::isfinite(spec.c_hi))
    throw ConfigError("density: require 0 < c_lo <= c_hi < inf (got [" +
                      std::to_string(spec.c_lo) + ", " + std::to_string(spec.c_hi) + "])");
  return spec;
}

double DensitySpec::eval(std::span<const double> x) const {
  return kind == Kind::Uniform ? 1.0 : rho.eval(x);
}

namespace {

void check_envelope(const DensitySpec& density, std::span<const double> x) {
  const double r = density.eval(x);
  if (!(r >= density.c_lo && r <= density.c_hi)) {
    std::ostringstream msg;
    msg << "density: rho=" << r << " at (";
    for (std::size_t k = 0; k < x.size(); ++k) msg << (k ? ", " : "") << x[k];
    msg << ") violates the declared bounds [" << density.c_lo << ", " << density.c_hi << "]";
    throw ConfigError(msg.str());
  }
}

void probe_envelope(const DensitySpec& density, const Domain& domain) {
  const std::size_t d = domain.dim();
  const auto per_axis = static_cast<std::size_t>(
      std::max(2.0, std::floor(std::pow(4096.0, 1.0 / static_cast<double>(d)))));
  std::vector<std::size_t> idx(d, 0);
  Point x(d);
  for (;;) {
    for (std::size_t k = 0; k < d; ++k)
      x[k] = domain.lo()[k] + (domain.hi()[k] - domain.lo()[k]) *
                                  static_cast<double>(idx[k]) / static_cast<double>(per_axis - 1);
    check_envelope(density, x);
    std::size_t k = 0;
    while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == d) break;
  }
}

}  // namespace

PointCloud sample_points(const DensitySpec& density, const Domain& domain,
                         std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("sample_points: n must be >= 1");
  if (!(density.c_lo > 0.0) || !(density.c_hi >= density.c_lo))
    throw ConfigError("sample_points: invalid density bounds");
  if (density.kind == DensitySpec::Kind::Expression) probe_envelope(density, domain);

  const std::size_t d = domain.dim();
  Rng rng(seed);
  PointCloud cloud{PointSet(d), seed, density, domain, n};
  cloud.points.reserve(n);
  Point x(d);
  while (cloud.points.size() < n) {
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.uniform(domain.lo()[k], domain.hi()[k]);
    if (density.kind == DensitySpec::Kind::Expression) {
      const double u = rng.uniform();
      check_envelope(density, x);
      if (!(u * density.c_hi < density.eval(x))) continue;
    }
    cloud.points.push_back(x);
  }
  return cloud;
}

EpsilonSchedule epsilon_for(std::size_t n, double delta, std::size_t dim,
                            std::optional<P1WindowParams> p1) {
  if (!(delta > 0.0)) throw ConfigError("epsilon_for: delta must be positive");
  if (n == 0 || dim == 0) throw ConfigError("epsilon_for: n and d must be >= 1");
  EpsilonSchedule s;
  s.delta = delta;
  s.n = n;
  s.dim = dim;
  s.epsilon = std::pow(static_cast<double>(n), -delta);
  const double d = static_cast<double>(dim);
  s.satisfies_rate = delta < 1.0 / d;
  if (p1) {
    const double a = p1->alpha;
    const double first = 1.0 / ((2.0 - a * a) * p1->eta + d);
    const double second = 1.0 / (a * (d - 1.0) + 1.0);
    s.p1_window_lower = std::max(first, second);
    s.satisfies_p1_window = delta > s.p1_window_lower;
  }
  return s;
}

std::size_t nearest_neighbor(const PointSet& cloud, std::span<const double> x) {
  if (cloud.empty()) throw ConfigError("nearest_neighbor: empty cloud");
  const std::size_t d = cloud.dim();
  Point lo(d, std::numeric_limits<double>::infinity());
  Point hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], cloud[i][k]);
      hi[k] = std::max(hi[k], cloud[i][k]);
    }
  Point extent(d);
  double vol = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    extent[k] = hi[k] - lo[k];
    vol *= std::max(extent[k], 1e-12);
  }
  double cell = std::pow(vol / static_cast<double>(cloud.size()), 1.0 / static_cast<double>(d));
  if (!(cell > 0.0) || !std::isfinite(cell)) cell = 1.0;
  const GridIndex index(cloud, lo, extent, cell);
  return index.nearest(x);
}

CoveringRadius estimate_covering_radius(const PointSet& cloud, const Domain& domain,
                                        double probe_spacing) {
  if (!(probe_spacing > 0.0)) throw ConfigError("covering radius: probe_spacing must be positive");
  if (cloud.empty()) throw ConfigError("covering radius: empty cloud");
  const std::size_t d = domain.dim();
  Point extent(d);
  for (std::size_t k = 0; k < d; ++k) extent[k] = domain.hi()[k] - domain.lo()[k];
  const double cell =
      std::pow(domain.volume() / static_cast<double>(cloud.size()), 1.0 / static_cast<double>(d));
  const GridIndex index(cloud, domain.lo(), extent, cell);

  std::vector<std::size_t> counts(d);
  std::vector<double> step(d);
  double slack_sq = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    counts[k] = static_cast<std::size_t>(std::ceil(extent[k] / probe_spacing)) + 1;
    step[k] = extent[k] / static_cast<double>(counts[k] - 1);
    slack_sq += 0.25 * step[k] * step[k];
  }
  std::vector<std::size_t> idx(d, 0);
  Point x(d);
  double worst = 0.0;
  std::size_t probes = 0;
  for (;;) {
    for (std::size_t k = 0; k < d; ++k)
      x[k] = idx[k] + 1 == counts[k] ? domain.hi()[k]
                                     : domain.lo()[k] + step[k] * static_cast<double>(idx[k]);
    const std::uint32_t j = index.nearest(x);
    worst = std::max(worst, distance(x, cloud[j]));
    ++probes;
    std::size_t k = 0;
    while (k < d && ++idx[k] == counts[k]) idx[k++] = 0;
    if (k == d) break;
  }
  return {worst, std::sqrt(slack_sq), probes};
}

}  // namespace rggeo
