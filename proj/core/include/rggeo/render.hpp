#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rggeo/geometry.hpp"
#include "rggeo/graph.hpp"
#include "rggeo/path.hpp"

namespace rggeo {

struct LabeledPath {
  ContinuousPath path;
  std::string label;
  std::string color = "#d62728";
  /// Draw the knots as dots (discrete paths).
  bool markers = false;
};

struct RenderOptions {
  double width = 640.0;
  double margin = 24.0;
  /// Marching-squares resolution and number of level sets of the field.
  std::size_t field_grid = 200;
  std::size_t levels = 12;
  bool draw_vertices = true;
};

using ScalarField = std::function<double(std::span<const double>)>;

/// Deterministic SVG of a 2-d scene: optional field level sets, graph edges
/// (one <line class="edge"> per undirected edge), labeled paths and a frame.
/// Throws UnsupportedError unless d = 2.
std::string render_scene(const Domain& domain, const EpsilonGraph* graph,
                         const std::vector<LabeledPath>& paths, const ScalarField& field = {},
                         const RenderOptions& options = {});

}  // namespace rggeo
