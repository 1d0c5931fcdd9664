#include "rggeo/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>

#include "rggeo/error.hpp"

namespace rggeo {

std::int64_t EpsilonGraph::edge_slot(std::size_t i, std::size_t j) const {
  const auto nb = neighbors(i);
  const auto it = std::lower_bound(nb.begin(), nb.end(), static_cast<std::uint32_t>(j));
  if (it == nb.end() || *it != j) return -1;
  return static_cast<std::int64_t>(offsets_[i] + static_cast<std::size_t>(it - nb.begin()));
}

EpsilonGraph build_graph(const PointSet& cloud, std::span<const double> a,
                         std::span<const double> b, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ConfigError("build_graph: epsilon must be positive");
  const std::size_t d = cloud.dim();
  if (a.size() != d || b.size() != d) throw ConfigError("build_graph: endpoint dimension mismatch");
  if (cloud.size() + 2 > std::numeric_limits<std::uint32_t>::max())
    throw UnsupportedError("build_graph: too many vertices");

  EpsilonGraph g;
  g.epsilon_ = epsilon;
  g.vertices_ = PointSet(d);
  g.vertices_.reserve(cloud.size() + 2);
  for (std::size_t i = 0; i < cloud.size(); ++i) g.vertices_.push_back(cloud[i]);
  g.vertices_.push_back(a);
  g.vertices_.push_back(b);

  const std::size_t nv = g.vertices_.size();
  Point lo(d, std::numeric_limits<double>::infinity());
  Point hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], g.vertices_[i][k]);
      hi[k] = std::max(hi[k], g.vertices_[i][k]);
    }
  Point extent(d);
  for (std::size_t k = 0; k < d; ++k) extent[k] = hi[k] - lo[k];
  g.index_ = GridIndex(g.vertices_, lo, extent, epsilon);

  const double eps_sq = epsilon * epsilon;
  g.offsets_.assign(nv + 1, 0);
  std::vector<std::uint32_t> scratch;
  for (std::size_t i = 0; i < nv; ++i) {
    scratch.clear();
    const auto xi = g.vertices_[i];
    g.index_.for_each_candidate(xi, [&](std::uint32_t j) {
      if (j == i) return;
      const double d2 = squared_distance(xi, g.vertices_[j]);
      // 0 < |u - v| < eps; the sqrt comparison keeps the test exact on the
      // distance itself rather than on its square.
      if (d2 > 0.0 && d2 < 4.0 * eps_sq && std::sqrt(d2) < epsilon) scratch.push_back(j);
    });
    std::sort(scratch.begin(), scratch.end());
    g.neighbors_.insert(g.neighbors_.end(), scratch.begin(), scratch.end());
    g.offsets_[i + 1] = g.neighbors_.size();
  }
  return g;
}

EpsilonGraph build_graph(const PointCloud& cloud, std::span<const double> a,
                         std::span<const double> b, double epsilon) {
  if (!cloud.domain.contains(a) || !cloud.domain.contains(b))
    throw ConfigError("build_graph: a and b must lie in the domain");
  return build_graph(cloud.points, a, b, epsilon);
}

int bfs_hops(const EpsilonGraph& graph, std::size_t from, std::size_t to) {
  const std::size_t nv = graph.num_vertices();
  if (from >= nv || to >= nv) throw ConfigError("bfs: vertex index out of range");
  if (from == to) return 0;
  std::vector<int> hops(nv, -1);
  std::deque<std::size_t> queue{from};
  hops[from] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::uint32_t v : graph.neighbors(u)) {
      if (hops[v] >= 0) continue;
      hops[v] = hops[u] + 1;
      if (v == to) return hops[v];
      queue.push_back(v);
    }
  }
  return -1;
}

bool is_connected(const EpsilonGraph& graph, std::size_t a_index, std::size_t b_index) {
  return bfs_hops(graph, a_index, b_index) >= 0;
}

void write_adjacency_csv(const EpsilonGraph& graph, std::ostream& out) {
  out << "src,dst,dist\n";
  char buf[96];
  for (std::size_t i = 0; i < graph.num_vertices(); ++i)
    for (std::uint32_t j : graph.neighbors(i)) {
      if (j <= i) continue;
      std::snprintf(buf, sizeof buf, "%zu,%u,%.17g\n", i, j,
                    distance(graph.vertex(i), graph.vertex(j)));
      out << buf;
    }
}

}  // namespace rggeo
