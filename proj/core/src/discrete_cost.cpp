#include "rggeo/discrete_cost.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "rggeo/error.hpp"
#include "rggeo/oracle.hpp"
#include "rggeo/quadrature.hpp"

namespace rggeo {

std::string to_string(CostType type) {
  switch (type) {
    case CostType::Riemann: return "H";
    case CostType::Linear: return "L";
    case CostType::Quasinormal: return "G";
  }
  return "?";
}

CostType parse_cost_type(const std::string& name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "H" || s == "RIEMANN") return CostType::Riemann;
  if (s == "L" || s == "LINEAR") return CostType::Linear;
  if (s == "G" || s == "QUASINORMAL") return CostType::Quasinormal;
  throw ConfigError("unknown cost kind '" + name + "' (expected H, L or G)");
}

namespace {

double hop_factor(std::size_t m, double p) {
  return p == 1.0 ? 1.0 : std::pow(static_cast<double>(m), p - 1.0);
}

double linear_segment(const Kernel& kernel, const QuadratureRule& rule,
                      std::span<const double> x, std::span<const double> y,
                      std::span<double> delta, std::span<double> z) {
  for (std::size_t j = 0; j < x.size(); ++j) delta[j] = y[j] - x[j];
  double s = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    for (std::size_t j = 0; j < x.size(); ++j) z[j] = x[j] + rule.nodes[q] * delta[j];
    s += rule.weights[q] * kernel(z, delta);
  }
  return s;
}

}  // namespace

LocalDf local_df(const Kernel& kernel, std::span<const double> u,
                 std::span<const double> v, const LocalMode& mode) {
  const std::size_t d = u.size();
  Point delta(d);
  bool same = true;
  for (std::size_t j = 0; j < d; ++j) {
    delta[j] = v[j] - u[j];
    same = same && delta[j] == 0.0;
  }
  if (same) return {0.0, true};
  if (mode.kind == LocalMode::Kind::Frozen) return {kernel(u, delta), true};

  RefineOptions opts;
  opts.knots = std::max<std::size_t>(mode.knots, 2);
  opts.iters = mode.iters;
  const OracleResult r = refine_geodesic(kernel, ContinuousPath::straight(u, v), opts);
  return {r.value, r.status != RefineStatus::MaxIterations};
}

double edge_term(const Kernel& kernel, const CostKind& kind, std::span<const double> x,
                 std::span<const double> y) {
  const std::size_t d = x.size();
  Point delta(d);
  for (std::size_t j = 0; j < d; ++j) delta[j] = y[j] - x[j];
  switch (kind.type) {
    case CostType::Riemann:
      if (kind.anchor == Anchor::Left) return kernel(x, delta);
      {
        Point mid(d);
        for (std::size_t j = 0; j < d; ++j) mid[j] = 0.5 * (x[j] + y[j]);
        return kernel(mid, delta);
      }
    case CostType::Linear: {
      Point z(d);
      return linear_segment(kernel, gauss_legendre(kind.quad_order), x, y, delta, z);
    }
    case CostType::Quasinormal:
      return local_df(kernel, x, y, kind.local).value;
  }
  return 0.0;
}

void validate_path(const EpsilonGraph& graph, const DiscretePath& path) {
  const auto& v = path.vertices;
  if (v.empty()) throw ConfigError("path: empty vertex sequence");
  for (std::uint32_t i : v)
    if (i >= graph.num_vertices()) throw ConfigError("path: vertex index out of range");
  if (v.front() != graph.a_index()) throw ConfigError("path: must start at a");
  if (v.size() == 1) {
    const auto a = graph.vertex(graph.a_index());
    const auto b = graph.vertex(graph.b_index());
    if (!std::equal(a.begin(), a.end(), b.begin()))
      throw ConfigError("path: zero-edge path is only valid when a = b");
    return;
  }
  if (v.back() != graph.b_index()) throw ConfigError("path: must end at b");
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (!graph.adjacent(v[i], v[i + 1]))
      throw ConfigError("path: vertices " + std::to_string(v[i]) + " and " +
                        std::to_string(v[i + 1]) + " are not adjacent");
}

double cost_riemann(const EpsilonGraph& graph, const Kernel& kernel,
                    const DiscretePath& path, Anchor anchor) {
  validate_path(graph, path);
  const std::size_t m = path.edges();
  if (m == 0) return 0.0;
  const std::size_t d = graph.dim();
  const double md = static_cast<double>(m);
  Point scaled(d), base(d);
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto x = graph.vertex(path.vertices[i]);
    const auto y = graph.vertex(path.vertices[i + 1]);
    for (std::size_t j = 0; j < d; ++j) {
      scaled[j] = md * (y[j] - x[j]);
      base[j] = anchor == Anchor::Left ? x[j] : 0.5 * (x[j] + y[j]);
    }
    sum += kernel(base, scaled);
  }
  return sum / md;
}

double cost_linear(const EpsilonGraph& graph, const Kernel& kernel,
                   const DiscretePath& path, int quad_order) {
  validate_path(graph, path);
  const std::size_t m = path.edges();
  if (m == 0) return 0.0;
  const QuadratureRule& rule = gauss_legendre(quad_order);
  const std::size_t d = graph.dim();
  Point delta(d), z(d);
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    sum += linear_segment(kernel, rule, graph.vertex(path.vertices[i]),
                          graph.vertex(path.vertices[i + 1]), delta, z);
  return hop_factor(m, kernel.p()) * sum;
}

double cost_quasinormal(const EpsilonGraph& graph, const Kernel& kernel,
                        const DiscretePath& path, const LocalMode& mode) {
  validate_path(graph, path);
  const std::size_t m = path.edges();
  if (m == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    sum += local_df(kernel, graph.vertex(path.vertices[i]),
                    graph.vertex(path.vertices[i + 1]), mode)
               .value;
  return hop_factor(m, kernel.p()) * sum;
}

double evaluate_cost(const EpsilonGraph& graph, const Kernel& kernel,
                     const CostKind& kind, const DiscretePath& path) {
  switch (kind.type) {
    case CostType::Riemann: return cost_riemann(graph, kernel, path, kind.anchor);
    case CostType::Linear: return cost_linear(graph, kernel, path, kind.quad_order);
    case CostType::Quasinormal: return cost_quasinormal(graph, kernel, path, kind.local);
  }
  return 0.0;
}

ContinuousPath interpolate(const DiscretePath& path, const EpsilonGraph& graph,
                           const InterpolationKind& kind, const Kernel* kernel) {
  const std::size_t m = path.edges();
  if (m == 0) throw ConfigError("interpolate: path must have at least one edge");
  const std::size_t d = graph.dim();
  const double md = static_cast<double>(m);
  std::vector<double> times;
  PointSet pts(d);
  if (kind.kind == InterpolationKind::Kind::Linear) {
    for (std::size_t i = 0; i <= m; ++i) {
      times.push_back(i == m ? 1.0 : static_cast<double>(i) / md);
      pts.push_back(graph.vertex(path.vertices[i]));
    }
    return ContinuousPath(std::move(times), std::move(pts));
  }
  if (!kernel) throw ConfigError("interpolate: quasinormal interpolation needs a kernel");
  RefineOptions opts;
  opts.knots = std::max<std::size_t>(kind.knots, 2);
  opts.iters = 400;
  times.push_back(0.0);
  pts.push_back(graph.vertex(path.vertices[0]));
  for (std::size_t i = 0; i < m; ++i) {
    const auto x = graph.vertex(path.vertices[i]);
    const auto y = graph.vertex(path.vertices[i + 1]);
    const OracleResult seg = refine_geodesic(*kernel, ContinuousPath::straight(x, y), opts);
    const double t0 = static_cast<double>(i) / md;
    for (std::size_t k = 1; k < seg.path.size(); ++k) {
      const double t = i + 1 == m && k + 1 == seg.path.size()
                           ? 1.0
                           : t0 + seg.path.times()[k] / md;
      times.push_back(t);
      pts.push_back(seg.path.knot(k));
    }
  }
  return ContinuousPath(std::move(times), std::move(pts));
}

}  // namespace rggeo
