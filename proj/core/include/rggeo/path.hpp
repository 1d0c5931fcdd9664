#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rggeo/geometry.hpp"

namespace rggeo {

/// Vertex sequence (v_0, ..., v_m) in an EpsilonGraph.
struct DiscretePath {
  std::vector<std::uint32_t> vertices;

  std::size_t edges() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  friend bool operator==(const DiscretePath&, const DiscretePath&) = default;
};

/// Piecewise-linear path on [0, 1] with knots (t_k, x_k), t strictly increasing.
class ContinuousPath {
 public:
  ContinuousPath() = default;
  /// Throws ConfigError unless t_0 = 0, t_last = 1, t strictly increasing.
  ContinuousPath(std::vector<double> times, PointSet points);

  /// Straight segment from a to b traversed at constant speed, with `knots`
  /// equally spaced knots (knots >= 2).
  static ContinuousPath straight(std::span<const double> a, std::span<const double> b,
                                 std::size_t knots = 2);

  std::size_t size() const { return times_.size(); }
  std::size_t dim() const { return points_.dim(); }
  const std::vector<double>& times() const { return times_; }
  const PointSet& points() const { return points_; }
  std::span<const double> knot(std::size_t k) const { return points_[k]; }
  std::span<const double> front() const { return points_[0]; }
  std::span<const double> back() const { return points_[points_.size() - 1]; }

  /// Position at time t in [0, 1] (clamped).
  Point at(double t) const;
  double euclidean_length() const;
  /// Largest segment speed |dx| / dt.
  double max_speed() const;

  friend bool operator==(const ContinuousPath&, const ContinuousPath&) = default;

 private:
  std::vector<double> times_;
  PointSet points_;
};

}  // namespace rggeo
