#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "rggeo/geometry.hpp"

namespace rggeo {

/// Uniform-grid spatial hash over a point set.
///
/// Cells have side `cell` and are anchored at `origin`; cell keys are exact
/// linearized integer coordinates, so distinct cells never share a bucket.
class GridIndex {
 public:
  GridIndex() = default;
  GridIndex(const PointSet& points, std::span<const double> origin,
            std::span<const double> extent, double cell);

  double cell_size() const { return cell_; }
  std::size_t occupied_cells() const { return buckets_.size(); }

  /// Calls fn(j) for every indexed point j in the 3^d cells around x.
  template <class Fn>
  void for_each_candidate(std::span<const double> x, Fn&& fn) const;

  /// Index of the nearest point to x; ties go to the smallest index.
  /// Requires a nonempty index.
  std::uint32_t nearest(std::span<const double> x) const;

 private:
  struct Range {
    std::uint32_t begin;
    std::uint32_t end;
  };

  void cell_of(std::span<const double> x, std::span<std::int64_t> out) const;
  std::uint64_t key(std::span<const std::int64_t> c) const;
  bool in_grid(std::span<const std::int64_t> c) const;
  const Range* find(std::span<const std::int64_t> c) const;

  const PointSet* points_ = nullptr;
  std::size_t dim_ = 0;
  double cell_ = 0.0;
  Point origin_;
  std::vector<std::int64_t> dims_;
  std::vector<std::uint32_t> order_;
  std::unordered_map<std::uint64_t, Range> buckets_;
};

template <class Fn>
void GridIndex::for_each_candidate(std::span<const double> x, Fn&& fn) const {
  std::int64_t base[8];
  std::int64_t c[8];
  std::vector<std::int64_t> big_base, big_c;
  std::span<std::int64_t> b(base, dim_), cc(c, dim_);
  if (dim_ > 8) {
    big_base.resize(dim_);
    big_c.resize(dim_);
    b = big_base;
    cc = big_c;
  }
  cell_of(x, b);
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim_; ++k) total *= 3;
  for (std::size_t combo = 0; combo < total; ++combo) {
    std::size_t r = combo;
    for (std::size_t k = 0; k < dim_; ++k) {
      cc[k] = b[k] + static_cast<std::int64_t>(r % 3) - 1;
      r /= 3;
    }
    const Range* range = find(cc);
    if (!range) continue;
    for (std::uint32_t i = range->begin; i < range->end; ++i) fn(order_[i]);
  }
}

}  // namespace rggeo
