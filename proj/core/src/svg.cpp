#include "tubeweave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tubeweave/errors.hpp"

namespace tubeweave {

void RenderStyle::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("render scale must be positive");
  for (double w : {margin_px, boundary_stroke, obstacle_stroke, edge_stroke, path_stroke, trace_stroke, node_radius,
                   font_px}) {
    if (!(w >= 0.0)) throw InvalidArgument("render widths must be non-negative");
  }
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

struct Frame {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();
  double scale = 1.0;
  double margin = 0.0;

  void include(Point2 p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  bool empty() const { return !(min_x <= max_x); }
  double width() const { return (max_x - min_x) * scale + 2.0 * margin; }
  double height() const { return (max_y - min_y) * scale + 2.0 * margin; }
  std::string x(Point2 p) const { return fmt((p.x - min_x) * scale + margin); }
  std::string y(Point2 p) const { return fmt((max_y - p.y) * scale + margin); }
  std::string xy(Point2 p) const { return x(p) + "," + y(p); }
};

std::string points_attr(const Frame& f, const std::vector<Point2>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += f.xy(pts[i]);
  }
  return out;
}

}  // namespace

std::string render_svg(const RenderArtifacts& art, const RenderStyle& style) {
  style.validate();
  Frame f;
  f.scale = style.scale;
  f.margin = style.margin_px;
  if (art.env) {
    for (Point2 p : art.env->boundary.vertices()) f.include(p);
    for (const Polygon& o : art.env->obstacles) {
      for (Point2 p : o.vertices()) f.include(p);
    }
  }
  if (art.roadmap) {
    for (const RoadmapNode& n : art.roadmap->nodes()) f.include(n.position);
  }
  for (const WeavePlan& p : art.plans) {
    for (Point2 q : p.polyline) f.include(q);
  }
  for (const auto& t : art.traces) {
    for (Point2 q : t) f.include(q);
  }
  if (f.empty()) {
    f.min_x = f.min_y = 0.0;
    f.max_x = f.max_y = 0.0;
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(f.width()) << "\" height=\""
     << fmt(f.height()) << "\" viewBox=\"0 0 " << fmt(f.width()) << ' ' << fmt(f.height()) << "\">\n";

  if (art.env) {
    os << "  <polygon class=\"boundary\" points=\"" << points_attr(f, art.env->boundary.vertices())
       << "\" fill=\"none\" stroke=\"" << style.boundary_color << "\" stroke-width=\"" << fmt(style.boundary_stroke)
       << "\"/>\n";
  }
  if (art.roadmap) {
    const RoadmapGraph& g = *art.roadmap;
    os << "  <g class=\"roadmap\" stroke=\"" << style.edge_color << "\" stroke-width=\"" << fmt(style.edge_stroke)
       << "\">\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        if (!g.has_edge(i, j)) continue;
        const Point2 a = g.node(i).position;
        const Point2 b = g.node(j).position;
        os << "    <line x1=\"" << f.x(a) << "\" y1=\"" << f.y(a) << "\" x2=\"" << f.x(b) << "\" y2=\"" << f.y(b)
           << "\"/>\n";
      }
    }
    os << "  </g>\n";
  }
  if (art.env) {
    for (std::size_t i = 0; i < art.env->obstacles.size(); ++i) {
      os << "  <polygon class=\"obstacle\" data-index=\"" << i << "\" points=\""
         << points_attr(f, art.env->obstacles[i].vertices()) << "\" fill=\"" << style.obstacle_fill << "\" stroke=\""
         << style.obstacle_stroke_color << "\" stroke-width=\"" << fmt(style.obstacle_stroke) << "\"/>\n";
    }
  }
  if (art.roadmap) {
    os << "  <g class=\"nodes\" fill=\"" << style.node_color << "\">\n";
    for (const RoadmapNode& n : art.roadmap->nodes()) {
      os << "    <circle cx=\"" << f.x(n.position) << "\" cy=\"" << f.y(n.position) << "\" r=\""
         << fmt(style.node_radius) << "\"/>\n";
    }
    os << "  </g>\n";
  }
  for (const auto& t : art.traces) {
    if (t.size() < 2) continue;
    os << "  <polyline class=\"trace\" points=\"" << points_attr(f, t) << "\" fill=\"none\" stroke=\""
       << style.trace_color << "\" stroke-width=\"" << fmt(style.trace_stroke) << "\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (const WeavePlan& p : art.plans) {
    if (p.polyline.empty()) continue;
    const bool ccw = p.family() == Direction::CCW;
    os << "  <path class=\"plan " << (ccw ? "ccw" : "cw") << "\" data-id=\"" << p.id << "\" d=\"";
    for (std::size_t i = 0; i < p.polyline.size(); ++i) {
      os << (i ? " L " : "M ") << f.x(p.polyline[i]) << ' ' << f.y(p.polyline[i]);
    }
    os << "\" fill=\"none\" stroke=\"" << (ccw ? style.ccw_color : style.cw_color) << "\" stroke-width=\""
       << fmt(style.path_stroke) << "\"/>\n";
    for (std::size_t i = 0; i < p.waypoints.size(); ++i) {
      const Point2 w = p.waypoints[i].position;
      os << "  <text class=\"waypoint\" x=\"" << f.x(w) << "\" y=\"" << f.y(w) << "\" font-size=\""
         << fmt(style.font_px) << "\" font-family=\"sans-serif\">" << (i + 1) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace tubeweave
