#include "rggeo/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rggeo/error.hpp"

namespace rggeo {

GridIndex::GridIndex(const PointSet& points, std::span<const double> origin,
                     std::span<const double> extent, double cell)
    : points_(&points),
      dim_(points.dim()),
      cell_(cell),
      origin_(origin.begin(), origin.end()) {
  if (!(cell > 0.0) || !std::isfinite(cell)) throw ConfigError("grid index: cell size must be positive");
  dims_.resize(dim_);
  double total = 1.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    dims_[k] = static_cast<std::int64_t>(std::floor(extent[k] / cell)) + 1;
    total *= static_cast<double>(dims_[k]);
  }
  if (total > 0x1.0p62) throw UnsupportedError("grid index: too many cells for exact keys");

  const std::size_t n = points.size();
  std::vector<std::uint64_t> keys(n);
  std::vector<std::int64_t> c(dim_);
  for (std::size_t i = 0; i < n; ++i) {
    cell_of(points[i], c);
    keys[i] = key(c);
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
  buckets_.reserve(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && keys[order_[j]] == keys[order_[i]]) ++j;
    buckets_.emplace(keys[order_[i]], Range{static_cast<std::uint32_t>(i),
                                            static_cast<std::uint32_t>(j)});
    i = j;
  }
}

void GridIndex::cell_of(std::span<const double> x, std::span<std::int64_t> out) const {
  for (std::size_t k = 0; k < dim_; ++k) {
    const auto c = static_cast<std::int64_t>(std::floor((x[k] - origin_[k]) / cell_));
    out[k] = std::clamp<std::int64_t>(c, 0, dims_[k] - 1);
  }
}

std::uint64_t GridIndex::key(std::span<const std::int64_t> c) const {
  std::uint64_t k = 0;
  for (std::size_t i = dim_; i-- > 0;)
    k = k * static_cast<std::uint64_t>(dims_[i]) + static_cast<std::uint64_t>(c[i]);
  return k;
}

bool GridIndex::in_grid(std::span<const std::int64_t> c) const {
  for (std::size_t k = 0; k < dim_; ++k)
    if (c[k] < 0 || c[k] >= dims_[k]) return false;
  return true;
}

const GridIndex::Range* GridIndex::find(std::span<const std::int64_t> c) const {
  if (!in_grid(c)) return nullptr;
  auto it = buckets_.find(key(c));
  return it == buckets_.end() ? nullptr : &it->second;
}

std::uint32_t GridIndex::nearest(std::span<const double> x) const {
  if (!points_ || points_->empty()) throw ConfigError("nearest: empty point set");
  std::vector<std::int64_t> base(dim_), c(dim_);
  cell_of(x, base);
  std::int64_t max_ring = 0;
  for (std::size_t k = 0; k < dim_; ++k) max_ring = std::max(max_ring, dims_[k]);

  double best_sq = std::numeric_limits<double>::infinity();
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  // Points in rings >= k+1 are at distance >= k*cell from x.
  for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
    const std::int64_t side = 2 * ring + 1;
    std::int64_t total = 1;
    for (std::size_t k = 0; k < dim_; ++k) total *= side;
    for (std::int64_t combo = 0; combo < total; ++combo) {
      std::int64_t r = combo;
      bool on_shell = false;
      for (std::size_t k = 0; k < dim_; ++k) {
        const std::int64_t off = r % side - ring;
        r /= side;
        c[k] = base[k] + off;
        on_shell = on_shell || off == ring || off == -ring;
      }
      if (ring > 0 && !on_shell) continue;
      const Range* range = find(c);
      if (!range) continue;
      for (std::uint32_t i = range->begin; i < range->end; ++i) {
        const std::uint32_t j = order_[i];
        const double d2 = squared_distance(x, (*points_)[j]);
        if (d2 < best_sq || (d2 == best_sq && j < best)) {
          best_sq = d2;
          best = j;
        }
      }
    }
    const double reach = static_cast<double>(ring) * cell_;
    if (best != std::numeric_limits<std::uint32_t>::max() && std::sqrt(best_sq) < reach) break;
  }
  return best;
}

}  // namespace rggeo
