#pragma once

#include <optional>
#include <vector>

#include "rggeo/discrete_cost.hpp"
#include "rggeo/graph.hpp"
#include "rggeo/kernel.hpp"
#include "rggeo/path.hpp"

namespace rggeo {

struct ShortestPathResult {
  double value = 0.0;
  DiscretePath path;
};

/// ceil(K / epsilon) with K = 2 (m2/m1)^{1/p} diam(D).
int default_hop_cap(const Kernel& kernel, double epsilon);

/// Minimizes the chosen discrete cost over paths from a to b.
///
/// p = 1: Dijkstra on the per-edge terms. p > 1: the cost is m^{p-1} W with W
/// additive, so best[h][v] (min W over h-edge walks a -> v) is computed layer
/// by layer for h <= hop_cap and the answer is min_h h^{p-1} best[h][b].
/// Ties prefer fewer hops, then the lexicographically smaller vertex sequence.
///
/// Throws NoPathError when a and b are disconnected, and InfeasibleError when
/// an explicit hop_cap is below the BFS hop distance. When a and b coincide
/// the result is 0 with the single-vertex path (a).
ShortestPathResult shortest_path(const EpsilonGraph& graph, const Kernel& kernel,
                                 const CostKind& kind,
                                 std::optional<int> hop_cap = std::nullopt);

/// best[h][b] for h = 0..hop_cap (infinity where no h-edge walk exists).
std::vector<double> hop_layer_minima(const EpsilonGraph& graph, const Kernel& kernel,
                                     const CostKind& kind, int hop_cap);

}  // namespace rggeo
