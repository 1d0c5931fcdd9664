#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rggeo/kernel.hpp"
#include "rggeo/path.hpp"

namespace rggeo {

/// F(gamma) = int_0^1 f(gamma, gamma') dt for a polyline, by composite
/// Gauss-Legendre quadrature on each segment.
double eval_F(const Kernel& kernel, const ContinuousPath& path, int quad_order = 8);

struct OracleMethod {
  enum class Kind { Grid, Refined, GridRefined };
  Kind kind = Kind::Refined;
  double h = 0.0;
  double r = 0.0;
  std::size_t knots = 0;
  int iters = 0;
};

std::string to_string(OracleMethod::Kind kind);

enum class RefineStatus { Converged, MaxIterations, StepUnderflow };

struct OracleResult {
  double value = 0.0;
  ContinuousPath path;
  OracleMethod method;
  /// Grid: worst-case relative metrication error of the stencil.
  /// Refined: relative improvement of the last iteration.
  double residual = 0.0;
  int iterations = 0;
  RefineStatus status = RefineStatus::Converged;
  /// Objective after each iteration; trace[0] is the initial value.
  std::vector<double> trace;
};

struct RefineOptions {
  std::size_t knots = 64;
  int iters = 2000;
  /// Initial step; 0 selects one that moves knots by a quarter segment.
  double step = 0.0;
  int quad_order = 8;
  double rel_tol = 1e-10;
  /// Resample to constant kernel speed after each descent step.
  bool reparametrize = true;
};

/// Local minimization of F over polylines with `knots` knots equally spaced in t.
///
/// Each iteration takes a backtracking gradient step on the interior knots
/// (central finite differences, spacing 1e-6 diam(D)), clamps knots into D,
/// then resamples the polyline to constant speed in the kernel's own length
/// f^{1/p} (the discrete quasinormal normalization). The resampled polyline is
/// kept only if the iteration as a whole did not increase F, so trace is
/// nonincreasing.
OracleResult refine_geodesic(const Kernel& kernel, const ContinuousPath& init,
                             const RefineOptions& options = {});

struct GridOptions {
  double h = 0.005;
  /// Neighborhood radius; pairs with |u - v| <= r are connected.
  double r = 0.025;
  /// p > 1 only. Unset runs Dijkstra on f^{1/p} and raises the result to the
  /// power p; set runs the hop-indexed search on f with this cap.
  std::optional<int> hop_cap;
  /// Permit r < 3h (the staircase regime) for demonstrations.
  bool allow_metrication = false;
  /// Gauss-Legendre order for the exact edge integrals.
  int quad_order = 8;
};

/// Brute-force d_f estimate on a regular lattice of spacing h (plus a and b)
/// with all pairs within radius r connected. Edges cost the exact integral of
/// f along the segment, so the value is F of a polyline and bounds d_f above.
OracleResult grid_geodesic(const Kernel& kernel, const Domain& domain,
                           std::span<const double> a, std::span<const double> b,
                           const GridOptions& options);

/// Worst-case ratio of lattice-path length to straight length over all
/// directions, for lattice steps of length <= r/h (d = 1 or 2).
double metrication_factor(double r_over_h, std::size_t dim);

}  // namespace rggeo
