#include "rggeo/path.hpp"

#include <algorithm>

#include "rggeo/error.hpp"

namespace rggeo {

ContinuousPath::ContinuousPath(std::vector<double> times, PointSet points)
    : times_(std::move(times)), points_(std::move(points)) {
  if (times_.size() < 2 || times_.size() != points_.size())
    throw ConfigError("continuous path: need >= 2 knots with matching times");
  if (times_.front() != 0.0 || times_.back() != 1.0)
    throw ConfigError("continuous path: times must start at 0 and end at 1");
  for (std::size_t k = 1; k < times_.size(); ++k)
    if (!(times_[k] > times_[k - 1]))
      throw ConfigError("continuous path: times must be strictly increasing");
}

ContinuousPath ContinuousPath::straight(std::span<const double> a, std::span<const double> b,
                                        std::size_t knots) {
  if (knots < 2) throw ConfigError("straight path: need >= 2 knots");
  const std::size_t d = a.size();
  std::vector<double> t(knots);
  PointSet pts(d);
  pts.reserve(knots);
  Point x(d);
  for (std::size_t k = 0; k < knots; ++k) {
    t[k] = k + 1 == knots ? 1.0 : static_cast<double>(k) / static_cast<double>(knots - 1);
    for (std::size_t j = 0; j < d; ++j) x[j] = k + 1 == knots ? b[j] : a[j] + t[k] * (b[j] - a[j]);
    pts.push_back(x);
  }
  return ContinuousPath(std::move(t), std::move(pts));
}

Point ContinuousPath::at(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t k = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
  if (k + 1 >= times_.size()) k = times_.size() - 2;
  const double s = (t - times_[k]) / (times_[k + 1] - times_[k]);
  const auto x0 = points_[k];
  const auto x1 = points_[k + 1];
  Point x(dim());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = x0[j] + s * (x1[j] - x0[j]);
  return x;
}

double ContinuousPath::euclidean_length() const {
  double len = 0.0;
  for (std::size_t k = 1; k < size(); ++k) len += distance(points_[k - 1], points_[k]);
  return len;
}

double ContinuousPath::max_speed() const {
  double v = 0.0;
  for (std::size_t k = 1; k < size(); ++k)
    v = std::max(v, distance(points_[k - 1], points_[k]) / (times_[k] - times_[k - 1]));
  return v;
}

}  // namespace rggeo
