#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace rggeo {

using Point = std::vector<double>;

/// Closed axis-aligned box [lo, hi] in R^d.
class Domain {
 public:
  Domain() = default;
  /// Throws ConfigError unless lo < hi componentwise.
  Domain(Point lo, Point hi);

  static Domain unit_cube(std::size_t dim);

  std::size_t dim() const { return lo_.size(); }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }
  double diameter() const;
  double volume() const;

  bool contains(std::span<const double> x, double tol = 0.0) const;
  /// Componentwise clamp into the box (exact projection for boxes).
  void clamp(std::span<double> x) const;

 private:
  Point lo_;
  Point hi_;
};

/// Flat storage for a set of points of common dimension.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim) : dim_(dim) {}
  PointSet(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> operator[](std::size_t i) {
    return {coords_.data() + i * dim_, dim_};
  }

  void push_back(std::span<const double> x);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }
  const std::vector<double>& coords() const { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

inline double norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

inline double distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = x[k] - y[k];
    s += t * t;
  }
  return std::sqrt(s);
}

inline double squared_distance(std::span<const double> x,
                               std::span<const double> y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = x[k] - y[k];
    s += t * t;
  }
  return s;
}

}  // namespace rggeo
