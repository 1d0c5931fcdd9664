#include "rggeo/conditions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "rggeo/error.hpp"
#include "rggeo/oracle.hpp"
#include "rggeo/random.hpp"

namespace rggeo {

std::string to_string(Condition condition) {
  switch (condition) {
    case Condition::Homogeneity: return "Homogeneity";
    case Condition::Ellipticity: return "Ellipticity";
    case Condition::Lip: return "Lip";
    case Condition::Convexity: return "Convexity";
    case Condition::TrIneq: return "TrIneq";
    case Condition::Pythag: return "Pythag";
    case Condition::Hilb: return "Hilb";
    case Condition::Hamel: return "Hamel";
  }
  return "?";
}

Condition parse_condition(const std::string& name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (Condition c : {Condition::Homogeneity, Condition::Ellipticity, Condition::Lip,
                      Condition::Convexity, Condition::TrIneq, Condition::Pythag, Condition::Hilb,
                      Condition::Hamel}) {
    std::string s = to_string(c);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (s == lower) return c;
  }
  throw ConfigError("unknown condition '" + name + "'");
}

namespace {

struct Sampler {
  Rng rng;
  const Domain& domain;
  std::size_t d;

  Point point() {
    Point x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.uniform(domain.lo()[k], domain.hi()[k]);
    return x;
  }
  Point unit() {
    Point u(d);
    rng.unit_vector(u);
    return u;
  }
  Point gaussian() {
    Point v(d);
    for (auto& c : v) c = rng.normal();
    return v;
  }
  double log_uniform(double lo, double hi) {
    return std::exp(rng.uniform(std::log(lo), std::log(hi)));
  }
};

// Tracks the worst normalized violation and the sample that produced it.
struct Tally {
  ConditionReport report;
  double tol;

  void add(double violation, const std::vector<Point>& tuple, const char* what) {
    if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
    if (report.samples_tested++ == 0 || violation > report.worst_violation) {
      report.worst_violation = violation;
      if (violation > tol) {
        report.pass = false;
        report.witness = Witness{tuple, what};
      }
    }
  }
};

Point add(const Point& a, const Point& b, double s = 1.0) {
  Point c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] + s * b[k];
  return c;
}

void homogeneity(const Kernel& f, Sampler& s, std::size_t n, Tally& t) {
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = s.point();
    Point v = s.unit();
    const double scale = s.log_uniform(0.1, 10.0);
    for (auto& c : v) c *= scale;
    const double lambda = s.log_uniform(0.1, 10.0);
    Point lv = v;
    for (auto& c : lv) c *= lambda;
    const double rhs = std::pow(lambda, f.p()) * f(x, v);
    const double viol = std::abs(f(x, lv) - rhs) / (1.0 + rhs);
    t.add(viol, {x, v, {lambda}}, "x, v, (lambda)");
  }
}

void ellipticity(const Kernel& f, Sampler& s, std::size_t n, Tally& t) {
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = s.point();
    const Point u = s.unit();
    const double val = f(x, u);
    const double viol = std::max(f.m1() - val, val - f.m2()) / f.m2();
    t.add(viol, {x, u}, "x, unit v");
  }
}

void lipschitz(const Kernel& f, Sampler& s, std::size_t n, Tally& t) {
  if (!f.lip_c()) throw UnsupportedError("Lip audit needs a declared Lipschitz constant");
  const double c = *f.lip_c();
  const double local = 1e-3 * s.domain.diameter();
  double c_hat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = s.point();
    Point y;
    if (i % 2 == 0) {
      y = s.point();
    } else {
      y = add(x, s.unit(), local * s.rng.uniform());
      s.domain.clamp(y);
    }
    const double dist = distance(x, y);
    if (dist == 0.0) continue;
    const Point v = s.unit();
    const double ratio = std::abs(f(x, v) - f(y, v)) / dist;
    c_hat = std::max(c_hat, ratio);
    t.add((ratio - c) / std::max(c, 1.0), {x, y, v}, "x, y, unit v");
  }
  t.report.estimated_constant = c_hat;
}

void convexity(const Kernel& f, Sampler& s, std::size_t n, Tally& t) {
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = s.point();
    const Point v = s.gaussian();
    const Point w = s.gaussian();
    const double lam = s.rng.uniform();
    Point mix(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) mix[k] = lam * v[k] + (1.0 - lam) * w[k];
    const double rhs = lam * f(x, v) + (1.0 - lam) * f(x, w);
    t.add((f(x, mix) - rhs) / (1.0 + rhs), {x, v, w, {lam}}, "x, v, w, (t)");
  }
}

void triangle(const Kernel& f, Sampler& s, std::size_t n, Tally& t) {
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = s.point();
    const Point u = s.gaussian();
    const Point v = s.gaussian();
    const Point w = s.gaussian();
    const double rhs = f(x, add(v, u, -1.0)) + f(x, add(u, w, -1.0));
    t.add((f(x, add(v, w, -1.0)) - rhs) / (1.0 + rhs), {x, u, v, w}, "x, u, v, w");
  }
}

void pythag(const Kernel& f, Sampler& s, std::size_t n, const ConditionParams& prm, Tally& t) {
  if (s.d < 2) throw UnsupportedError("Pythag audit needs d >= 2");
  if (!(prm.alpha > 1.0)) throw ConfigError("Pythag audit needs alpha > 1");
  const double eta = prm.eta;
  double c_hat = std::numeric_limits<double>::infinity();
  std::size_t accepted = 0;
  std::size_t attempts = 0;
  while (accepted < n) {
    if (++attempts > 1000 * n + 1000) throw Error("Pythag audit: sampler stalled");
    const double r = s.log_uniform(1e-3, 0.5);
    const double len_max = std::min(prm.pythag_c * std::pow(r, 1.0 / prm.alpha), eta);
    const double len = len_max * s.rng.uniform();
    if (len <= 0.0) continue;
    // Orthonormal e1, e2 spanning a random 2-plane.
    const Point e1 = s.unit();
    Point e2 = s.gaussian();
    double dot = 0.0;
    for (std::size_t k = 0; k < s.d; ++k) dot += e1[k] * e2[k];
    for (std::size_t k = 0; k < s.d; ++k) e2[k] -= dot * e1[k];
    const double n2 = norm(e2);
    if (n2 < 1e-12) continue;
    for (auto& c : e2) c /= n2;
    const double along = s.rng.uniform(-eta, len + eta);
    const double across = s.rng.uniform(r, eta);
    // Distance from w = along e1 + across e2 to the segment [0, len e1].
    const double gap = along < 0.0 ? along : (along > len ? along - len : 0.0);
    if (std::hypot(gap, across) < r) continue;
    if (std::hypot(along, across) >= eta || std::hypot(along - len, across) >= eta) continue;
    Point u(s.d, 0.0), v(s.d), w(s.d);
    const Point base = s.point();
    for (std::size_t k = 0; k < s.d; ++k) {
      u[k] = base[k];
      v[k] = base[k] + len * e1[k];
      w[k] = base[k] + along * e1[k] + across * e2[k];
    }
    const Point x = s.point();
    const double gain = f(x, add(w, u, -1.0)) + f(x, add(v, w, -1.0)) - f(x, add(v, u, -1.0));
    const double ratio = gain / std::pow(r, prm.alpha);
    c_hat = std::min(c_hat, ratio);
    ++accepted;
    // A nonpositive gain fails regardless of tol.
    const double viol = ratio > 0.0 ? -ratio : std::max(t.tol - ratio, std::nextafter(t.tol, 1.0));
    t.add(viol, {x, u, v, w, {r}}, "x, u, v, w, (r)");
  }
  t.report.alpha = prm.alpha;
  t.report.estimated_constant = c_hat;
}

void hilbert(const Kernel& f, Sampler& s, std::size_t n, const ConditionParams& prm, Tally& t) {
  RefineOptions opt;
  opt.knots = std::max<std::size_t>(prm.hilb_knots, 3);
  opt.iters = prm.hilb_iters;
  opt.quad_order = 1;  // frozen kernels do not vary along a segment
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = s.point();
    const Kernel frozen = f.frozen_at(x);
    const Point a = s.point();
    const Point b = s.point();
    const double straight = frozen(x, add(b, a, -1.0));
    if (straight == 0.0) continue;
    PointSet init(s.d);
    std::vector<double> times(opt.knots);
    const double spread = 0.25 * distance(a, b);
    for (std::size_t k = 0; k < opt.knots; ++k) {
      const double tk = k + 1 == opt.knots ? 1.0 : static_cast<double>(k) / (opt.knots - 1);
      times[k] = tk;
      Point y(s.d);
      for (std::size_t j = 0; j < s.d; ++j) {
        y[j] = a[j] + tk * (b[j] - a[j]);
        if (k != 0 && k + 1 != opt.knots) y[j] += spread * s.rng.normal();
      }
      s.domain.clamp(y);
      init.push_back(y);
    }
    const OracleResult res = refine_geodesic(frozen, ContinuousPath(times, std::move(init)), opt);
    t.add((straight - res.value) / straight, {x, a, b}, "x, a, b");
  }
}

void hamel(const Kernel& f, Sampler& s, std::size_t n, Tally& t) {
  const std::size_t d = s.d;
  const double h = 1e-4 * s.domain.diameter();
  Point lo = s.domain.lo(), hi = s.domain.hi();
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] += h;
    hi[k] -= h;
  }
  const Domain inner(lo, hi);
  const double hv = 1e-4;
  std::vector<double> a(d * d);
  for (std::size_t i = 0; i < n; ++i) {
    Point x = s.point();
    inner.clamp(x);
    const Point v = s.unit();
    double scale = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) {
        Point xp = x, xm = x, vp = v, vm = v;
        xp[p] += h;
        xm[p] -= h;
        vp[q] += hv;
        vm[q] -= hv;
        a[p * d + q] = (f(xp, vp) - f(xp, vm) - f(xm, vp) + f(xm, vm)) / (4.0 * h * hv);
        scale = std::max(scale, std::abs(a[p * d + q]));
      }
    double asym = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q)
        asym = std::max(asym, std::abs(a[p * d + q] - a[q * d + p]));
    // Finite differences cannot resolve symmetry below ~1e-5.
    t.add(asym / (1.0 + scale) - std::max(0.0, 1e-5 - t.tol), {x, v}, "x, unit v");
  }
}

}  // namespace

ConditionReport check_condition(const Kernel& kernel, Condition condition, const Domain& domain,
                                std::size_t n_samples, double tol, std::uint64_t seed,
                                const ConditionParams& params) {
  if (domain.dim() != kernel.dim()) throw ConfigError("check_condition: dimension mismatch");
  if (n_samples == 0) throw ConfigError("check_condition: n_samples must be positive");
  Sampler s{Rng(seed), domain, domain.dim()};
  Tally t{{}, tol};
  t.report.condition = condition;
  switch (condition) {
    case Condition::Homogeneity: homogeneity(kernel, s, n_samples, t); break;
    case Condition::Ellipticity: ellipticity(kernel, s, n_samples, t); break;
    case Condition::Lip: lipschitz(kernel, s, n_samples, t); break;
    case Condition::Convexity: convexity(kernel, s, n_samples, t); break;
    case Condition::TrIneq: triangle(kernel, s, n_samples, t); break;
    case Condition::Pythag: pythag(kernel, s, n_samples, params, t); break;
    case Condition::Hilb: hilbert(kernel, s, n_samples, params, t); break;
    case Condition::Hamel: hamel(kernel, s, n_samples, t); break;
  }
  return t.report;
}

}  // namespace rggeo
