#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rggeo/geometry.hpp"
#include "rggeo/sampling.hpp"
#include "rggeo/spatial_index.hpp"

namespace rggeo {

/// The epsilon-graph on X_n U {a, b}: cloud points first, then a, then b.
///
/// (i, j) is an edge iff 0 < |v_i - v_j| < epsilon, compared exactly in
/// floating point. Adjacency is stored in CSR form with each neighbor list
/// sorted ascending.
class EpsilonGraph {
 public:
  EpsilonGraph() = default;

  std::size_t num_vertices() const { return vertices_.size(); }
  /// Number of undirected edges.
  std::size_t num_edges() const { return neighbors_.size() / 2; }
  std::size_t a_index() const { return vertices_.size() - 2; }
  std::size_t b_index() const { return vertices_.size() - 1; }
  double epsilon() const { return epsilon_; }
  std::size_t dim() const { return vertices_.dim(); }

  const PointSet& vertices() const { return vertices_; }
  std::span<const double> vertex(std::size_t i) const { return vertices_[i]; }
  std::span<const std::uint32_t> neighbors(std::size_t i) const {
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  /// Position of edge (i -> j) in the CSR arrays, or -1 if absent.
  std::int64_t edge_slot(std::size_t i, std::size_t j) const;
  bool adjacent(std::size_t i, std::size_t j) const { return edge_slot(i, j) >= 0; }
  std::size_t edge_slots() const { return neighbors_.size(); }
  std::size_t slot_begin(std::size_t i) const { return offsets_[i]; }
  std::size_t degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }

  const GridIndex& cell_index() const { return index_; }

  friend EpsilonGraph build_graph(const PointSet& cloud, std::span<const double> a,
                                  std::span<const double> b, double epsilon);

 private:
  PointSet vertices_;
  double epsilon_ = 0.0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> neighbors_;
  GridIndex index_;
};

/// Builds the graph by spatial-hash queries over the 3^d cells around each
/// vertex (cell side = epsilon). Work is O(n + sum of degrees).
EpsilonGraph build_graph(const PointSet& cloud, std::span<const double> a,
                         std::span<const double> b, double epsilon);
EpsilonGraph build_graph(const PointCloud& cloud, std::span<const double> a,
                         std::span<const double> b, double epsilon);

/// Breadth-first hop distance from `from` to `to`; -1 when unreachable.
int bfs_hops(const EpsilonGraph& graph, std::size_t from, std::size_t to);

bool is_connected(const EpsilonGraph& graph, std::size_t a_index, std::size_t b_index);

/// Writes `src,dst,dist` rows, one per undirected edge with src < dst.
void write_adjacency_csv(const EpsilonGraph& graph, std::ostream& out);

}  // namespace rggeo
