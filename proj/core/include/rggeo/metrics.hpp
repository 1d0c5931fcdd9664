#pragma once

#include <cstddef>

#include "rggeo/graph.hpp"
#include "rggeo/path.hpp"

namespace rggeo {

/// Symmetric Hausdorff distance between nonempty finite sets.
/// Throws ConfigError on empty input.
double hausdorff_distance(const PointSet& a, const PointSet& b);

/// Knots of `path` plus equally spaced points on each segment, so that
/// consecutive points are at most `resolution` apart.
PointSet densify(const ContinuousPath& path, double resolution);

struct HausdorffResult {
  double value = 0.0;
  /// Densification resolution used for path arguments.
  double resolution = 0.0;
};

HausdorffResult hausdorff_distance(const ContinuousPath& a, const ContinuousPath& b,
                                   double resolution);
HausdorffResult hausdorff_distance(const PointSet& a, const ContinuousPath& b, double resolution);

enum class Reparam { AsIs, ConstantSpeed };

/// Same image traversed at constant Euclidean speed; consecutive duplicate
/// knots are dropped. Idempotent.
ContinuousPath reparametrize_constant_speed(const ContinuousPath& path);

/// sup_t |p1(t) - p2(t)| over the union of both knot sets and a uniform grid of
/// `grid` points. Knots are included, so the value is exact for polylines.
double uniform_distance(const ContinuousPath& p1, const ContinuousPath& p2,
                        Reparam reparam = Reparam::AsIs, std::size_t grid = 4001);

struct PathDiagnostics {
  /// Distinct cells of side eps / sqrt(d), anchored at the origin, holding a path vertex.
  std::size_t boxes_visited = 0;
  /// Largest number of path vertices in one such cell.
  std::size_t max_points_per_box = 0;
  /// Largest segment speed of the uniform-time linear interpolation, m * max |dv|.
  double lipschitz_modulus = 0.0;
  /// max |i - j| over vertex pairs closer than eps.
  std::size_t theta_hops = 0;
  double euclidean_length = 0.0;
};

PathDiagnostics path_diagnostics(const DiscretePath& path, const EpsilonGraph& graph, double eps);

}  // namespace rggeo
