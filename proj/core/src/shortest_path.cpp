#include "rggeo/shortest_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "rggeo/error.hpp"

namespace rggeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Per-run memo of directed edge terms, indexed by CSR slot.
class EdgeTerms {
 public:
  EdgeTerms(const EpsilonGraph& g, const Kernel& k, const CostKind& kind)
      : g_(g), k_(k), kind_(kind), memo_(g.edge_slots(), std::numeric_limits<double>::quiet_NaN()) {}

  double operator()(std::size_t u, std::size_t slot) {
    double& w = memo_[slot];
    if (std::isnan(w)) {
      const std::uint32_t v = g_.neighbors(u)[slot - g_.slot_begin(u)];
      w = edge_term(k_, kind_, g_.vertex(u), g_.vertex(v));
    }
    return w;
  }

 private:
  const EpsilonGraph& g_;
  const Kernel& k_;
  const CostKind& kind_;
  std::vector<double> memo_;
};

bool same_point(const EpsilonGraph& g) {
  const auto a = g.vertex(g.a_index());
  const auto b = g.vertex(g.b_index());
  return std::equal(a.begin(), a.end(), b.begin());
}

int checked_cap(const EpsilonGraph& graph, const Kernel& kernel,
                std::optional<int> hop_cap) {
  const int bfs = bfs_hops(graph, graph.a_index(), graph.b_index());
  if (bfs < 0) throw NoPathError("shortest_path: a and b are not connected in the graph");
  const int cap = hop_cap.value_or(default_hop_cap(kernel, graph.epsilon()));
  if (cap < bfs)
    throw InfeasibleError("shortest_path: hop cap " + std::to_string(cap) +
                              (hop_cap ? "" : " (default)") +
                              " is below the BFS hop distance " + std::to_string(bfs),
                          bfs);
  return cap;
}

// Lexicographic comparison of two equal-length predecessor chains ending at
// x and y; `step(node, depth)` returns the predecessor of node at depth.
template <class Step>
bool chain_less(std::uint32_t x, std::uint32_t y, int depth, Step step) {
  std::vector<std::uint32_t> px, py;
  for (int h = depth; x != kNone && y != kNone; --h) {
    px.push_back(x);
    py.push_back(y);
    if (x == y) break;
    x = step(x, h);
    y = step(y, h);
  }
  return std::lexicographical_compare(px.rbegin(), px.rend(), py.rbegin(), py.rend());
}

ShortestPathResult dijkstra(const EpsilonGraph& graph, const Kernel& kernel,
                            const CostKind& kind) {
  const std::size_t nv = graph.num_vertices();
  const std::size_t a = graph.a_index();
  const std::size_t b = graph.b_index();
  EdgeTerms terms(graph, kernel, kind);
  std::vector<double> dist(nv, kInf);
  std::vector<int> hops(nv, std::numeric_limits<int>::max());
  std::vector<std::uint32_t> pred(nv, kNone);
  std::vector<char> done(nv, 0);
  using Entry = std::tuple<double, int, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[a] = 0.0;
  hops[a] = 0;
  heap.emplace(0.0, 0, static_cast<std::uint32_t>(a));
  auto step = [&](std::uint32_t node, int) { return pred[node]; };
  while (!heap.empty()) {
    const auto [d, h, u] = heap.top();
    heap.pop();
    if (done[u] || d != dist[u] || h != hops[u]) continue;
    done[u] = 1;
    if (u == b) break;
    const auto nb = graph.neighbors(u);
    const std::size_t base = graph.slot_begin(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const std::uint32_t v = nb[k];
      if (done[v]) continue;
      const double nd = d + terms(u, base + k);
      const int nh = h + 1;
      bool better = nd < dist[v] || (nd == dist[v] && nh < hops[v]);
      if (!better && nd == dist[v] && nh == hops[v] && pred[v] != u)
        better = chain_less(u, pred[v], 0, step);
      if (better) {
        dist[v] = nd;
        hops[v] = nh;
        pred[v] = u;
        heap.emplace(nd, nh, v);
      }
    }
  }
  if (!done[b]) throw NoPathError("shortest_path: a and b are not connected in the graph");
  ShortestPathResult res;
  res.value = dist[b];
  for (std::uint32_t v = static_cast<std::uint32_t>(b); v != kNone; v = pred[v])
    res.path.vertices.push_back(v);
  std::reverse(res.path.vertices.begin(), res.path.vertices.end());
  return res;
}

// One relaxation layer: next[v] = min_u cur[u] + w(u, v).
template <class OnTie>
void relax_layer(const EpsilonGraph& graph, EdgeTerms& terms,
                 const std::vector<std::uint32_t>& active, const std::vector<double>& cur,
                 std::vector<double>& next, std::vector<std::uint32_t>* pred, OnTie on_tie) {
  for (std::uint32_t u : active) {
    const double cu = cur[u];
    const auto nb = graph.neighbors(u);
    const std::size_t base = graph.slot_begin(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const std::uint32_t v = nb[k];
      const double cand = cu + terms(u, base + k);
      if (cand < next[v]) {
        next[v] = cand;
        if (pred) (*pred)[v] = u;
      } else if (pred && cand == next[v] && (*pred)[v] != u && on_tie(u, (*pred)[v])) {
        (*pred)[v] = u;
      }
    }
  }
}

std::vector<std::uint32_t> finite_entries(const std::vector<double>& layer) {
  std::vector<std::uint32_t> out;
  for (std::size_t v = 0; v < layer.size(); ++v)
    if (layer[v] < kInf) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

ShortestPathResult hop_dp(const EpsilonGraph& graph, const Kernel& kernel,
                          const CostKind& kind, int cap) {
  const std::size_t nv = graph.num_vertices();
  const std::size_t a = graph.a_index();
  const std::size_t b = graph.b_index();
  const double p = kernel.p();
  EdgeTerms terms(graph, kernel, kind);

  // Pass 1: values only, two rolling layers.
  std::vector<double> cur(nv, kInf), next(nv, kInf);
  cur[a] = 0.0;
  double best = kInf;
  int best_h = -1;
  auto no_tie = [](std::uint32_t, std::uint32_t) { return false; };
  for (int h = 1; h <= cap; ++h) {
    std::fill(next.begin(), next.end(), kInf);
    relax_layer(graph, terms, finite_entries(cur), cur, next, nullptr, no_tie);
    if (next[b] < kInf) {
      const double total = std::pow(static_cast<double>(h), p - 1.0) * next[b];
      if (total < best) {
        best = total;
        best_h = h;
      }
    }
    std::swap(cur, next);
  }
  if (best_h < 0) throw NoPathError("shortest_path: no walk from a to b within the hop cap");

  // Pass 2: rerun up to the winning hop count, recording predecessors.
  std::vector<std::vector<std::uint32_t>> pred(static_cast<std::size_t>(best_h) + 1);
  std::fill(cur.begin(), cur.end(), kInf);
  cur[a] = 0.0;
  for (int h = 1; h <= best_h; ++h) {
    auto& layer = pred[static_cast<std::size_t>(h)];
    layer.assign(nv, kNone);
    std::fill(next.begin(), next.end(), kInf);
    // Chains at depth h-1 are compared through the earlier layers.
    auto step = [&](std::uint32_t node, int depth) {
      return depth <= 0 ? kNone : pred[static_cast<std::size_t>(depth)][node];
    };
    auto on_tie = [&](std::uint32_t u, std::uint32_t incumbent) {
      return chain_less(u, incumbent, h - 1, step);
    };
    relax_layer(graph, terms, finite_entries(cur), cur, next, &layer, on_tie);
    std::swap(cur, next);
  }
  ShortestPathResult res;
  res.value = std::pow(static_cast<double>(best_h), p - 1.0) * cur[b];
  std::uint32_t v = static_cast<std::uint32_t>(b);
  for (int h = best_h; h >= 1; --h) {
    res.path.vertices.push_back(v);
    v = pred[static_cast<std::size_t>(h)][v];
  }
  res.path.vertices.push_back(v);
  std::reverse(res.path.vertices.begin(), res.path.vertices.end());
  return res;
}

}  // namespace

int default_hop_cap(const Kernel& kernel, double epsilon) {
  const double k_hop =
      2.0 * std::pow(kernel.m2() / kernel.m1(), 1.0 / kernel.p()) * kernel.domain().diameter();
  const double cap = std::ceil(k_hop / epsilon);
  return static_cast<int>(std::min(cap, 1e7));
}

ShortestPathResult shortest_path(const EpsilonGraph& graph, const Kernel& kernel,
                                 const CostKind& kind, std::optional<int> hop_cap) {
  if (same_point(graph)) {
    ShortestPathResult res;
    res.path.vertices.push_back(static_cast<std::uint32_t>(graph.a_index()));
    return res;
  }
  if (hop_cap && *hop_cap < 0) throw ConfigError("shortest_path: hop_cap must be >= 0");
  const int cap = checked_cap(graph, kernel, hop_cap);
  if (kernel.p() == 1.0) return dijkstra(graph, kernel, kind);
  return hop_dp(graph, kernel, kind, cap);
}

std::vector<double> hop_layer_minima(const EpsilonGraph& graph, const Kernel& kernel,
                                     const CostKind& kind, int hop_cap) {
  const std::size_t nv = graph.num_vertices();
  EdgeTerms terms(graph, kernel, kind);
  std::vector<double> cur(nv, kInf), next(nv, kInf);
  cur[graph.a_index()] = 0.0;
  std::vector<double> out{cur[graph.b_index()]};
  auto no_tie = [](std::uint32_t, std::uint32_t) { return false; };
  for (int h = 1; h <= hop_cap; ++h) {
    std::fill(next.begin(), next.end(), kInf);
    relax_layer(graph, terms, finite_entries(cur), cur, next, nullptr, no_tie);
    out.push_back(next[graph.b_index()]);
    std::swap(cur, next);
  }
  return out;
}

}  // namespace rggeo
