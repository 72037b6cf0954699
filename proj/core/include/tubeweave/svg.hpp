#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tubeweave/environment.hpp"
#include "tubeweave/roadmap.hpp"
#include "tubeweave/weave.hpp"

namespace tubeweave {

struct RenderStyle {
  double scale = 0.5;  // px per mm
  double margin_px = 20.0;
  double boundary_stroke = 1.5;
  double obstacle_stroke = 1.0;
  double edge_stroke = 0.4;
  double path_stroke = 2.5;
  double trace_stroke = 1.5;
  double node_radius = 2.0;
  double font_px = 12.0;
  std::string boundary_color = "#333333";
  std::string obstacle_fill = "#9e9e9e";
  std::string obstacle_stroke_color = "#555555";
  std::string node_color = "#1f77b4";
  std::string edge_color = "#c8c8c8";
  std::string ccw_color = "#000000";
  std::string cw_color = "#d62728";
  std::string trace_color = "#2ca02c";

  /// Throws InvalidArgument when scale <= 0 or a stroke is negative.
  void validate() const;
};

struct RenderArtifacts {
  std::optional<EnvironmentMap> env;
  std::optional<RoadmapGraph> roadmap;
  std::vector<WeavePlan> plans;
  /// Simulated tube centrelines, drawn dashed.
  std::vector<std::vector<Point2>> traces;
};

/// Standalone SVG 1.1. +y points up. Plans are one <path> each, coloured by
/// weave family; waypoints are numbered from 1 along each plan.
std::string render_svg(const RenderArtifacts& artifacts, const RenderStyle& style = {});

}  // namespace tubeweave
