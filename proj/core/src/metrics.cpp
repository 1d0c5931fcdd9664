#include "rggeo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rggeo/error.hpp"

namespace rggeo {

namespace {

double directed(const PointSet& a, const PointSet& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      best = std::min(best, squared_distance(a[i], b[j]));
      if (best <= worst) break;  // cannot raise the sup
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

}  // namespace

double hausdorff_distance(const PointSet& a, const PointSet& b) {
  if (a.empty() || b.empty()) throw ConfigError("hausdorff_distance: empty input");
  if (a.dim() != b.dim()) throw ConfigError("hausdorff_distance: dimension mismatch");
  return std::max(directed(a, b), directed(b, a));
}

PointSet densify(const ContinuousPath& path, double resolution) {
  if (!(resolution > 0.0)) throw ConfigError("densify: resolution must be positive");
  const std::size_t d = path.dim();
  PointSet out(d);
  if (path.size() == 0) return out;
  out.push_back(path.knot(0));
  Point x(d);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto p = path.knot(k);
    const auto q = path.knot(k + 1);
    const auto pieces =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(distance(p, q) / resolution)));
    for (std::size_t s = 1; s <= pieces; ++s) {
      const double t = static_cast<double>(s) / static_cast<double>(pieces);
      for (std::size_t j = 0; j < d; ++j) x[j] = s == pieces ? q[j] : p[j] + t * (q[j] - p[j]);
      out.push_back(x);
    }
  }
  return out;
}

HausdorffResult hausdorff_distance(const ContinuousPath& a, const ContinuousPath& b,
                                   double resolution) {
  return {hausdorff_distance(densify(a, resolution), densify(b, resolution)), resolution};
}

HausdorffResult hausdorff_distance(const PointSet& a, const ContinuousPath& b, double resolution) {
  return {hausdorff_distance(a, densify(b, resolution)), resolution};
}

ContinuousPath reparametrize_constant_speed(const ContinuousPath& path) {
  const std::size_t d = path.dim();
  PointSet pts(d);
  pts.push_back(path.knot(0));
  for (std::size_t k = 1; k < path.size(); ++k) {
    const auto last = pts[pts.size() - 1];
    if (!std::equal(last.begin(), last.end(), path.knot(k).begin())) pts.push_back(path.knot(k));
  }
  if (pts.size() == 1) return ContinuousPath::straight(pts[0], pts[0]);
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t k = 1; k < pts.size(); ++k) cum[k] = cum[k - 1] + distance(pts[k - 1], pts[k]);
  std::vector<double> times(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) times[k] = cum[k] / cum.back();
  times.back() = 1.0;
  return ContinuousPath(std::move(times), std::move(pts));
}

double uniform_distance(const ContinuousPath& p1, const ContinuousPath& p2, Reparam reparam,
                        std::size_t grid) {
  if (p1.dim() != p2.dim()) throw ConfigError("uniform_distance: dimension mismatch");
  if (reparam == Reparam::ConstantSpeed)
    return uniform_distance(reparametrize_constant_speed(p1), reparametrize_constant_speed(p2),
                            Reparam::AsIs, grid);
  std::vector<double> ts(p1.times());
  ts.insert(ts.end(), p2.times().begin(), p2.times().end());
  for (std::size_t k = 0; k < grid; ++k)
    ts.push_back(grid < 2 ? 0.0 : static_cast<double>(k) / static_cast<double>(grid - 1));
  double worst = 0.0;
  for (double t : ts) worst = std::max(worst, distance(p1.at(t), p2.at(t)));
  return worst;
}

PathDiagnostics path_diagnostics(const DiscretePath& path, const EpsilonGraph& graph, double eps) {
  if (!(eps > 0.0)) throw ConfigError("path_diagnostics: eps must be positive");
  PathDiagnostics diag;
  const auto& vs = path.vertices;
  if (vs.empty()) return diag;
  const std::size_t d = graph.dim();
  const double tau = eps / std::sqrt(static_cast<double>(d));
  std::map<std::vector<long long>, std::size_t> boxes;
  std::vector<long long> key(d);
  for (auto v : vs) {
    const auto x = graph.vertex(v);
    for (std::size_t j = 0; j < d; ++j) key[j] = static_cast<long long>(std::floor(x[j] / tau));
    diag.max_points_per_box = std::max(diag.max_points_per_box, ++boxes[key]);
  }
  diag.boxes_visited = boxes.size();
  const double m = static_cast<double>(path.edges());
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const double len = distance(graph.vertex(vs[i]), graph.vertex(vs[i + 1]));
    diag.euclidean_length += len;
    diag.lipschitz_modulus = std::max(diag.lipschitz_modulus, m * len);
  }
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (j - i > diag.theta_hops && distance(graph.vertex(vs[i]), graph.vertex(vs[j])) < eps)
        diag.theta_hops = j - i;
  return diag;
}

}  // namespace rggeo
