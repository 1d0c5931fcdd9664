#include "rggeo/geometry.hpp"

#include <algorithm>

#include "rggeo/error.hpp"

namespace rggeo {

Domain::Domain(Point lo, Point hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.empty() || lo_.size() != hi_.size())
    throw ConfigError("domain: lo and hi must be nonempty and of equal length");
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (!(lo_[k] < hi_[k]) || !std::isfinite(lo_[k]) || !std::isfinite(hi_[k]))
      throw ConfigError("domain: require finite lo < hi in every coordinate");
  }
}

Domain Domain::unit_cube(std::size_t dim) {
  return Domain(Point(dim, 0.0), Point(dim, 1.0));
}

double Domain::diameter() const { return distance(lo_, hi_); }

double Domain::volume() const {
  double v = 1.0;
  for (std::size_t k = 0; k < dim(); ++k) v *= hi_[k] - lo_[k];
  return v;
}

bool Domain::contains(std::span<const double> x, double tol) const {
  if (x.size() != dim()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double slack = tol * (hi_[k] - lo_[k]);
    if (!(x[k] >= lo_[k] - slack && x[k] <= hi_[k] + slack)) return false;
  }
  return true;
}

void Domain::clamp(std::span<double> x) const {
  for (std::size_t k = 0; k < x.size(); ++k)
    x[k] = std::clamp(x[k], lo_[k], hi_[k]);
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0 || coords_.size() % dim_ != 0)
    throw ConfigError("point set: coordinate count is not a multiple of dim");
}

void PointSet::push_back(std::span<const double> x) {
  if (x.size() != dim_) throw ConfigError("point set: dimension mismatch");
  coords_.insert(coords_.end(), x.begin(), x.end());
}

}  // namespace rggeo
