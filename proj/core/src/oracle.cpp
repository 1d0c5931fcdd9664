#include "rggeo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "rggeo/discrete_cost.hpp"
#include "rggeo/error.hpp"
#include "rggeo/graph.hpp"
#include "rggeo/quadrature.hpp"
#include "rggeo/shortest_path.hpp"

namespace rggeo {

std::string to_string(OracleMethod::Kind kind) {
  switch (kind) {
    case OracleMethod::Kind::Grid: return "grid";
    case OracleMethod::Kind::Refined: return "refine";
    case OracleMethod::Kind::GridRefined: return "grid+refine";
  }
  return "?";
}

double eval_F(const Kernel& kernel, const ContinuousPath& path, int quad_order) {
  const QuadratureRule& rule = gauss_legendre(quad_order);
  const std::size_t d = path.dim();
  Point vel(d), z(d);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double dt = path.times()[k + 1] - path.times()[k];
    const auto x0 = path.knot(k);
    const auto x1 = path.knot(k + 1);
    for (std::size_t j = 0; j < d; ++j) vel[j] = (x1[j] - x0[j]) / dt;
    double s = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      for (std::size_t j = 0; j < d; ++j) z[j] = x0[j] + rule.nodes[q] * (x1[j] - x0[j]);
      s += rule.weights[q] * kernel(z, vel);
    }
    total += dt * s;
  }
  return total;
}

namespace {

// Polyline objective with knots equally spaced in t.
class PolylineObjective {
 public:
  PolylineObjective(const Kernel& kernel, std::size_t knots, int quad_order)
      : kernel_(kernel),
        rule_(gauss_legendre(quad_order)),
        dim_(kernel.dim()),
        scale_(std::pow(1.0 / static_cast<double>(knots - 1), 1.0 - kernel.p())),
        delta_(dim_),
        z_(dim_) {}

  // dt^{1-p} int_0^1 f(x + s (y - x), y - x) ds.
  double segment(std::span<const double> x, std::span<const double> y) {
    bool zero = true;
    for (std::size_t j = 0; j < dim_; ++j) {
      delta_[j] = y[j] - x[j];
      zero = zero && delta_[j] == 0.0;
    }
    if (zero) return 0.0;
    double s = 0.0;
    for (std::size_t q = 0; q < rule_.nodes.size(); ++q) {
      for (std::size_t j = 0; j < dim_; ++j) z_[j] = x[j] + rule_.nodes[q] * delta_[j];
      s += rule_.weights[q] * kernel_(z_, delta_);
    }
    return scale_ * s;
  }

  // Kernel length of the segment, int_0^1 f^{1/p}(x + s (y - x), y - x) ds.
  double kernel_length(std::span<const double> x, std::span<const double> y) {
    bool zero = true;
    for (std::size_t j = 0; j < dim_; ++j) {
      delta_[j] = y[j] - x[j];
      zero = zero && delta_[j] == 0.0;
    }
    if (zero) return 0.0;
    const double inv_p = 1.0 / kernel_.p();
    double s = 0.0;
    for (std::size_t q = 0; q < rule_.nodes.size(); ++q) {
      for (std::size_t j = 0; j < dim_; ++j) z_[j] = x[j] + rule_.nodes[q] * delta_[j];
      const double f = kernel_(z_, delta_);
      s += rule_.weights[q] * (inv_p == 1.0 ? f : std::pow(f, inv_p));
    }
    return s;
  }

  double total(const PointSet& pts) {
    double t = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) t += segment(pts[k], pts[k + 1]);
    return t;
  }

 private:
  const Kernel& kernel_;
  const QuadratureRule& rule_;
  std::size_t dim_;
  double scale_;
  Point delta_;
  Point z_;
};

std::vector<double> uniform_times(std::size_t knots) {
  std::vector<double> t(knots);
  for (std::size_t k = 0; k < knots; ++k)
    t[k] = k + 1 == knots ? 1.0 : static_cast<double>(k) / static_cast<double>(knots - 1);
  return t;
}

// Resamples the polyline at equal spacing of the cumulative `lengths`.
PointSet resample(const PointSet& pts, const std::vector<double>& seg_len) {
  const std::size_t m = pts.size();
  const std::size_t d = pts.dim();
  std::vector<double> cum(m, 0.0);
  for (std::size_t k = 1; k < m; ++k) cum[k] = cum[k - 1] + seg_len[k - 1];
  const double total = cum.back();
  PointSet out(d);
  out.reserve(m);
  out.push_back(pts[0]);
  Point x(d);
  std::size_t seg = 0;
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(m - 1);
    while (seg + 2 < m && cum[seg + 1] < target) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double s = len > 0.0 ? std::clamp((target - cum[seg]) / len, 0.0, 1.0) : 0.0;
    for (std::size_t j = 0; j < d; ++j) x[j] = pts[seg][j] + s * (pts[seg + 1][j] - pts[seg][j]);
    out.push_back(x);
  }
  out.push_back(pts[m - 1]);
  return out;
}

}  // namespace

OracleResult refine_geodesic(const Kernel& kernel, const ContinuousPath& init,
                             const RefineOptions& options) {
  const std::size_t m = options.knots;
  if (m < 2) throw ConfigError("refine_geodesic: need at least 2 knots");
  if (init.dim() != kernel.dim()) throw ConfigError("refine_geodesic: dimension mismatch");
  const Domain& domain = kernel.domain();
  const std::size_t d = kernel.dim();

  PointSet pts(d);
  pts.reserve(m);
  const std::vector<double> times = uniform_times(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (k == 0) pts.push_back(init.front());
    else if (k + 1 == m) pts.push_back(init.back());
    else pts.push_back(init.at(times[k]));
  }

  PolylineObjective obj(kernel, m, options.quad_order);
  const double fd = 1e-6 * domain.diameter();
  double value = obj.total(pts);

  OracleResult res;
  res.method = {OracleMethod::Kind::Refined, 0.0, 0.0, m, options.iters};
  res.trace.push_back(value);
  res.status = RefineStatus::MaxIterations;

  std::vector<double> grad(m * d, 0.0);
  double step = options.step;
  const double step_floor_rel = 1e-14;
  double step_floor = 0.0;
  int it = 0;
  if (m == 2) res.status = RefineStatus::Converged;
  for (; it < options.iters && m > 2; ++it) {
    // Central-difference gradient; knot k touches segments k-1 and k only.
    double gmax = 0.0;
    Point probe(d);
    for (std::size_t k = 1; k + 1 < m; ++k) {
      for (std::size_t j = 0; j < d; ++j) {
        std::copy(pts[k].begin(), pts[k].end(), probe.begin());
        probe[j] = pts[k][j] + fd;
        const double plus = obj.segment(pts[k - 1], probe) + obj.segment(probe, pts[k + 1]);
        probe[j] = pts[k][j] - fd;
        const double minus = obj.segment(pts[k - 1], probe) + obj.segment(probe, pts[k + 1]);
        const double g = (plus - minus) / (2.0 * fd);
        grad[k * d + j] = g;
        gmax = std::max(gmax, std::abs(g));
      }
    }
    if (gmax == 0.0) {
      res.status = RefineStatus::Converged;
      break;
    }
    if (step <= 0.0 || step_floor == 0.0) {
      if (step <= 0.0) {
        const double seg = std::max(init.euclidean_length(), distance(init.front(), init.back())) /
                           static_cast<double>(m - 1);
        step = 0.25 * std::max(seg, fd) / gmax;
      }
      step_floor = step * step_floor_rel;
    }

    // Backtracking descent step.
    PointSet trial = pts;
    double trial_value = value;
    bool accepted = false;
    while (step >= step_floor) {
      trial = pts;
      for (std::size_t k = 1; k + 1 < m; ++k) {
        auto x = trial[k];
        for (std::size_t j = 0; j < d; ++j) x[j] -= step * grad[k * d + j];
        domain.clamp(x);
      }
      trial_value = obj.total(trial);
      if (trial_value < value) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.status = RefineStatus::StepUnderflow;
      break;
    }
    step *= 1.5;

    if (options.reparametrize) {
      std::vector<double> len(m - 1);
      for (std::size_t k = 0; k + 1 < m; ++k) len[k] = obj.kernel_length(trial[k], trial[k + 1]);
      PointSet again = resample(trial, len);
      const double again_value = obj.total(again);
      if (again_value <= value) {
        trial = std::move(again);
        trial_value = again_value;
      }
    }
    const double improvement = value - trial_value;
    pts = std::move(trial);
    res.residual = improvement / std::max(value, std::numeric_limits<double>::min());
    value = trial_value;
    res.trace.push_back(value);
    if (improvement <= options.rel_tol * value) {
      res.status = RefineStatus::Converged;
      ++it;
      break;
    }
  }
  res.iterations = it;
  res.value = value;
  res.path = ContinuousPath(times, std::move(pts));
  return res;
}

double metrication_factor(double r_over_h, std::size_t dim) {
  if (dim == 1) return 1.0;
  if (dim != 2) throw UnsupportedError("metrication_factor: only d = 1 and d = 2 are supported");
  const auto reach = static_cast<long>(std::floor(r_over_h + 1e-9));
  if (reach < 1) throw ConfigError("metrication_factor: r must be at least h");
  // Primitive lattice steps within the radius, sorted by angle.
  struct Step {
    double x, y, angle;
  };
  std::vector<Step> steps;
  const double r2 = r_over_h * r_over_h * (1.0 + 1e-12);
  for (long i = -reach; i <= reach; ++i)
    for (long j = -reach; j <= reach; ++j) {
      if ((i == 0 && j == 0) || static_cast<double>(i * i + j * j) > r2) continue;
      if (std::gcd(i, j) != 1) continue;
      steps.push_back({static_cast<double>(i), static_cast<double>(j),
                       std::atan2(static_cast<double>(j), static_cast<double>(i))});
    }
  std::sort(steps.begin(), steps.end(), [](const Step& s, const Step& t) { return s.angle < t.angle; });
  // Between consecutive steps s1, s2 the cheapest combination costs c . u for
  // the vector c with c . s_i = |s_i|; its maximum over the cone is |c| when c
  // points inside the cone and 1 otherwise.
  double worst = 1.0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const Step& s = steps[k];
    const Step& t = steps[(k + 1) % steps.size()];
    const double det = s.x * t.y - s.y * t.x;
    if (det <= 0.0) continue;
    const double ls = std::hypot(s.x, s.y), lt = std::hypot(t.x, t.y);
    const double cx = (ls * t.y - lt * s.y) / det;
    const double cy = (lt * s.x - ls * t.x) / det;
    const double ca = std::atan2(cy, cx);
    double lo = s.angle, hi = t.angle, a = ca;
    if (hi < lo) hi += 2.0 * std::numbers::pi;
    while (a < lo) a += 2.0 * std::numbers::pi;
    if (a <= hi) worst = std::max(worst, std::hypot(cx, cy));
  }
  return worst;
}

OracleResult grid_geodesic(const Kernel& kernel, const Domain& domain,
                           std::span<const double> a, std::span<const double> b,
                           const GridOptions& options) {
  if (!(options.h > 0.0) || !(options.r > 0.0))
    throw ConfigError("grid_geodesic: h and r must be positive");
  if (options.r < 3.0 * options.h * (1.0 - 1e-12) && !options.allow_metrication)
    throw ConfigError("grid_geodesic: r must be at least 3h to control metrication error");
  if (!domain.contains(a) || !domain.contains(b))
    throw ConfigError("grid_geodesic: endpoints must lie in the domain");
  const std::size_t d = domain.dim();

  OracleResult res;
  res.method = {OracleMethod::Kind::Grid, options.h, options.r, 0, 0};
  res.residual = d <= 2 ? metrication_factor(options.r / options.h, d) - 1.0
                        : std::numeric_limits<double>::quiet_NaN();
  if (std::equal(a.begin(), a.end(), b.begin())) {
    res.value = 0.0;
    res.path = ContinuousPath::straight(a, b);
    return res;
  }

  std::vector<std::size_t> counts(d);
  double total = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double extent = domain.hi()[k] - domain.lo()[k];
    counts[k] = static_cast<std::size_t>(std::floor(extent / options.h + 1e-9)) + 1;
    total *= static_cast<double>(counts[k]);
  }
  if (total > 5e7) throw ConfigError("grid_geodesic: lattice too large; increase h");
  PointSet lattice(d);
  lattice.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> idx(d, 0);
  Point x(d);
  for (;;) {
    for (std::size_t k = 0; k < d; ++k)
      x[k] = std::min(domain.lo()[k] + options.h * static_cast<double>(idx[k]), domain.hi()[k]);
    lattice.push_back(x);
    std::size_t k = 0;
    while (k < d && ++idx[k] == counts[k]) idx[k++] = 0;
    if (k == d) break;
  }
  const EpsilonGraph graph = build_graph(lattice, a, b, options.r * (1.0 + 1e-9));
  ShortestPathResult sp;
  if (kernel.p() == 1.0 || options.hop_cap) {
    sp = shortest_path(graph, kernel, CostKind::linear(options.quad_order), options.hop_cap);
  } else {
    // For p-homogeneous f, d_f = d_g^p with g = f^{1/p}, so Dijkstra on g suffices.
    const double p = kernel.p();
    const Kernel g(kernel.family(), kernel.description() + " ^(1/p)", kernel.domain(), 1.0,
                   std::pow(kernel.m1(), 1.0 / p), std::pow(kernel.m2(), 1.0 / p), std::nullopt,
                   [&kernel, p](std::span<const double> x, std::span<const double> v) {
                     return std::pow(kernel(x, v), 1.0 / p);
                   });
    sp = shortest_path(graph, g, CostKind::linear(options.quad_order));
    sp.value = std::pow(sp.value, p);
  }
  res.value = sp.value;
  res.path = interpolate(sp.path, graph);
  return res;
}

}  // namespace rggeo
