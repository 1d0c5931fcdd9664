#pragma once

#include <cstdint>
#include <optional>

#include "rggeo/expression.hpp"
#include "rggeo/geometry.hpp"

namespace rggeo {

/// Sampling density rho on D with c_lo <= rho <= c_hi (rho need not be
/// normalized; only ratios matter for rejection sampling).
struct DensitySpec {
  enum class Kind { Uniform, Expression };

  Kind kind = Kind::Uniform;
  rggeo::Expression rho;  // used when kind == Expression
  double c_lo = 1.0;
  double c_hi = 1.0;

  static DensitySpec uniform();
  /// Bounds are taken from an interval enclosure of rho over `domain` when
  /// not supplied. Throws ConfigError if rho is not bounded away from zero.
  static DensitySpec expression(const rggeo::Expression& rho, const Domain& domain,
                                std::optional<double> c_lo = std::nullopt,
                                std::optional<double> c_hi = std::nullopt);

  double eval(std::span<const double> x) const;
};

struct PointCloud {
  PointSet points;
  std::uint64_t seed = 0;
  DensitySpec density;
  Domain domain;
  std::size_t n = 0;
};

/// i.i.d. points from `density` on `domain`.
///
/// Randomness is consumed in a fixed order: for each proposal, d coordinate
/// uniforms (coordinate order), then, for non-uniform densities, one
/// acceptance uniform. Proposal x is accepted iff u * c_hi < rho(x).
PointCloud sample_points(const DensitySpec& density, const Domain& domain,
                         std::size_t n, std::uint64_t seed);

/// epsilon_n = n^{-delta} together with its validity flags.
struct EpsilonSchedule {
  double delta = 0.0;
  double epsilon = 0.0;
  std::size_t n = 0;
  std::size_t dim = 0;
  /// delta < 1/d: the connectivity rate condition.
  bool satisfies_rate = false;
  /// delta > max{1/((2 - alpha^2) eta + d), 1/(alpha (d - 1) + 1)}; present
  /// only when (alpha, eta) are supplied.
  std::optional<bool> satisfies_p1_window;
  double p1_window_lower = 0.0;
};

struct P1WindowParams {
  double alpha;
  double eta;
};

EpsilonSchedule epsilon_for(std::size_t n, double delta, std::size_t dim,
                            std::optional<P1WindowParams> p1 = std::nullopt);

/// Index of the point of the cloud closest to x (smallest index on ties).
std::size_t nearest_neighbor(const PointSet& cloud, std::span<const double> x);

struct CoveringRadius {
  double value;
  /// True R_n is at most value + slack.
  double slack;
  std::size_t probes;
};

/// max over a regular probe grid (spacing <= probe_spacing, boundary included)
/// of the distance to the nearest cloud point.
CoveringRadius estimate_covering_radius(const PointSet& cloud, const Domain& domain,
                                        double probe_spacing);

}  // namespace rggeo
