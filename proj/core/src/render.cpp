#include "rggeo/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rggeo/error.hpp"

namespace rggeo {

namespace {

std::string f3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  // Avoid "-0.000".
  return std::string(buf) == "-0.000" ? "0.000" : buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double lo0, lo1, sx, sy, margin, height;
  double x(double u) const { return margin + (u - lo0) * sx; }
  double y(double v) const { return height - margin - (v - lo1) * sy; }
};

// Marching squares on the samples of `field`; emits one segment per crossing.
void contours(std::ostringstream& out, const Domain& dom, const Frame& fr, const ScalarField& field,
              std::size_t grid, std::size_t levels) {
  const std::size_t m = grid + 1;
  std::vector<double> val(m * m);
  double lo = INFINITY, hi = -INFINITY;
  Point x(2);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      x[0] = dom.lo()[0] + (dom.hi()[0] - dom.lo()[0]) * static_cast<double>(i) / grid;
      x[1] = dom.lo()[1] + (dom.hi()[1] - dom.lo()[1]) * static_cast<double>(j) / grid;
      const double f = field(x);
      val[j * m + i] = f;
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
  if (!(hi > lo) || levels == 0) return;
  const bool geometric = lo > 0.0;
  out << "<g class=\"levels\" fill=\"none\" stroke=\"#7f7f7f\" stroke-width=\"0.6\">\n";
  for (std::size_t l = 1; l <= levels; ++l) {
    const double s = static_cast<double>(l) / static_cast<double>(levels + 1);
    const double c = geometric ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s;
    auto px = [&](double i, double j, int which) {
      return which == 0 ? fr.x(dom.lo()[0] + (dom.hi()[0] - dom.lo()[0]) * i / grid)
                        : fr.y(dom.lo()[1] + (dom.hi()[1] - dom.lo()[1]) * j / grid);
    };
    for (std::size_t j = 0; j < grid; ++j)
      for (std::size_t i = 0; i < grid; ++i) {
        const double v[4] = {val[j * m + i], val[j * m + i + 1], val[(j + 1) * m + i + 1],
                             val[(j + 1) * m + i]};
        // Corners (i,j), (i+1,j), (i+1,j+1), (i,j+1); edges e_k from corner k to k+1.
        const double ci[4] = {0, 1, 1, 0}, cj[4] = {0, 0, 1, 1};
        double pts[4][2];
        int np = 0;
        for (int e = 0; e < 4; ++e) {
          const double a = v[e] - c, b = v[(e + 1) % 4] - c;
          if ((a < 0.0) == (b < 0.0)) continue;
          const double t = a / (a - b);
          const int n = (e + 1) % 4;
          pts[np][0] = static_cast<double>(i) + ci[e] + t * (ci[n] - ci[e]);
          pts[np][1] = static_cast<double>(j) + cj[e] + t * (cj[n] - cj[e]);
          ++np;
        }
        for (int k = 0; k + 1 < np; k += 2)
          out << "<line class=\"level\" x1=\"" << f3(px(pts[k][0], 0, 0)) << "\" y1=\""
              << f3(px(0, pts[k][1], 1)) << "\" x2=\"" << f3(px(pts[k + 1][0], 0, 0))
              << "\" y2=\"" << f3(px(0, pts[k + 1][1], 1)) << "\"/>\n";
      }
  }
  out << "</g>\n";
}

}  // namespace

std::string render_scene(const Domain& domain, const EpsilonGraph* graph,
                         const std::vector<LabeledPath>& paths, const ScalarField& field,
                         const RenderOptions& opt) {
  if (domain.dim() != 2) throw UnsupportedError("render_scene: only d = 2 is supported");
  if (graph && graph->dim() != 2) throw UnsupportedError("render_scene: graph must be 2-d");
  const double w0 = domain.hi()[0] - domain.lo()[0];
  const double w1 = domain.hi()[1] - domain.lo()[1];
  const double inner = opt.width - 2.0 * opt.margin;
  const double scale = inner / std::max(w0, w1);
  const double width = w0 * scale + 2.0 * opt.margin;
  const double height = w1 * scale + 2.0 * opt.margin;
  const Frame fr{domain.lo()[0], domain.lo()[1], scale, scale, opt.margin, height};

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f3(width) << "\" height=\""
      << f3(height) << "\" viewBox=\"0 0 " << f3(width) << ' ' << f3(height) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << f3(width) << "\" height=\"" << f3(height)
      << "\" fill=\"white\"/>\n";
  if (field) contours(out, domain, fr, field, std::max<std::size_t>(opt.field_grid, 2), opt.levels);
  if (graph) {
    out << "<g class=\"graph\" stroke=\"#9ecae1\" stroke-width=\"0.4\">\n";
    for (std::size_t i = 0; i < graph->num_vertices(); ++i)
      for (std::uint32_t j : graph->neighbors(i)) {
        if (j <= i) continue;
        const auto p = graph->vertex(i);
        const auto q = graph->vertex(j);
        out << "<line class=\"edge\" x1=\"" << f3(fr.x(p[0])) << "\" y1=\"" << f3(fr.y(p[1]))
            << "\" x2=\"" << f3(fr.x(q[0])) << "\" y2=\"" << f3(fr.y(q[1])) << "\"/>\n";
      }
    out << "</g>\n";
    if (opt.draw_vertices) {
      out << "<g class=\"vertices\" fill=\"#3182bd\">\n";
      for (std::size_t i = 0; i < graph->num_vertices(); ++i) {
        const auto p = graph->vertex(i);
        out << "<circle cx=\"" << f3(fr.x(p[0])) << "\" cy=\"" << f3(fr.y(p[1]))
            << "\" r=\"1.200\"/>\n";
      }
      out << "</g>\n";
    }
  }
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const LabeledPath& lp = paths[k];
    if (lp.path.size() == 0) continue;
    if (lp.path.dim() != 2) throw UnsupportedError("render_scene: paths must be 2-d");
    out << "<polyline class=\"path\" fill=\"none\" stroke=\"" << escape(lp.color)
        << "\" stroke-width=\"1.800\" points=\"";
    for (std::size_t i = 0; i < lp.path.size(); ++i) {
      const auto p = lp.path.knot(i);
      out << (i ? " " : "") << f3(fr.x(p[0])) << ',' << f3(fr.y(p[1]));
    }
    out << "\"/>\n";
    if (lp.markers)
      for (std::size_t i = 0; i < lp.path.size(); ++i) {
        const auto p = lp.path.knot(i);
        out << "<circle class=\"knot\" cx=\"" << f3(fr.x(p[0])) << "\" cy=\"" << f3(fr.y(p[1]))
            << "\" r=\"2.000\" fill=\"" << escape(lp.color) << "\"/>\n";
      }
    out << "<text class=\"label\" x=\"" << f3(opt.margin + 6.0) << "\" y=\""
        << f3(opt.margin + 14.0 + 14.0 * static_cast<double>(k)) << "\" font-size=\"12\" fill=\""
        << escape(lp.color) << "\">" << escape(lp.label) << "</text>\n";
  }
  out << "<rect class=\"frame\" x=\"" << f3(fr.x(domain.lo()[0])) << "\" y=\""
      << f3(fr.y(domain.hi()[1])) << "\" width=\"" << f3(w0 * scale) << "\" height=\""
      << f3(w1 * scale) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace rggeo
