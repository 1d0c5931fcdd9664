#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rggeo/graph.hpp"
#include "rggeo/kernel.hpp"
#include "rggeo/path.hpp"

namespace rggeo {

/// How the quasinormal cost approximates d_f between neighboring vertices.
struct LocalMode {
  enum class Kind { Frozen, Refined };
  Kind kind = Kind::Frozen;
  std::size_t knots = 8;
  int iters = 400;

  static LocalMode frozen() { return {}; }
  static LocalMode refined(std::size_t knots = 8, int iters = 400) {
    return {Kind::Refined, knots, iters};
  }
};

/// Base point of the Riemann cost on each edge.
enum class Anchor { Left, Midpoint };

enum class CostType { Riemann, Linear, Quasinormal };

/// One of the three discrete costs: H_n (Riemann), L_n (Linear), G_n
/// (Quasinormal).
struct CostKind {
  CostType type = CostType::Riemann;
  int quad_order = 8;
  LocalMode local;
  Anchor anchor = Anchor::Left;

  static CostKind riemann(Anchor anchor = Anchor::Left) {
    CostKind k;
    k.anchor = anchor;
    return k;
  }
  static CostKind linear(int quad_order = 8) {
    CostKind k;
    k.type = CostType::Linear;
    k.quad_order = quad_order;
    return k;
  }
  static CostKind quasinormal(LocalMode mode = {}) {
    CostKind k;
    k.type = CostType::Quasinormal;
    k.local = mode;
    return k;
  }
};

std::string to_string(CostType type);
/// Parses "H", "L" or "G" (case-insensitive).
CostType parse_cost_type(const std::string& name);

struct LocalDf {
  double value;
  /// False when a Refined run stopped on the iteration limit.
  bool converged;
};

/// Approximation of d_f(u, v) for nearby points.
///
/// Frozen returns f(u, v - u). Refined minimizes F over polylines between u
/// and v starting from the straight segment.
LocalDf local_df(const Kernel& kernel, std::span<const double> u,
                 std::span<const double> v, const LocalMode& mode);

/// Additive per-edge term of the cost for the directed edge x -> y; the cost
/// of an m-edge path is m^{p-1} times the sum of these terms.
double edge_term(const Kernel& kernel, const CostKind& kind,
                 std::span<const double> x, std::span<const double> y);

/// H_n(v) = (1/m) sum_{i=0}^{m-1} f(v_i, m (v_{i+1} - v_i)).
double cost_riemann(const EpsilonGraph& graph, const Kernel& kernel,
                    const DiscretePath& path, Anchor anchor = Anchor::Left);

/// L_n(l_v) = m^{p-1} sum_i int_0^1 f(v_i + t (v_{i+1} - v_i), v_{i+1} - v_i) dt,
/// each integral by Gauss-Legendre of order quad_order.
double cost_linear(const EpsilonGraph& graph, const Kernel& kernel,
                   const DiscretePath& path, int quad_order = 8);

/// G_n(gamma_v) = m^{p-1} sum_i d_f(v_{i-1}, v_i) with d_f from local_df.
double cost_quasinormal(const EpsilonGraph& graph, const Kernel& kernel,
                        const DiscretePath& path, const LocalMode& mode);

/// Dispatches on kind.type.
double evaluate_cost(const EpsilonGraph& graph, const Kernel& kernel,
                     const CostKind& kind, const DiscretePath& path);

/// Throws ConfigError unless path starts at a, ends at b and follows edges.
/// A single-vertex path is accepted only when a and b coincide.
void validate_path(const EpsilonGraph& graph, const DiscretePath& path);

struct InterpolationKind {
  enum class Kind { Linear, QuasinormalApprox };
  Kind kind = Kind::Linear;
  std::size_t knots = 8;

  static InterpolationKind linear() { return {}; }
  static InterpolationKind quasinormal(std::size_t knots) {
    return {Kind::QuasinormalApprox, knots};
  }
};

/// Continuous path through the vertices with each edge taking time 1/m.
/// QuasinormalApprox replaces each segment by a refined polyline of `knots`
/// knots and needs the kernel.
ContinuousPath interpolate(const DiscretePath& path, const EpsilonGraph& graph,
                           const InterpolationKind& kind = {},
                           const Kernel* kernel = nullptr);

}  // namespace rggeo
