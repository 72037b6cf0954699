#pragma once

// Three-pillar demonstration layout and its end-to-end pipeline. The
// dimensions are configuration defaults, not measurements.

#include <string>
#include <vector>

#include "tubeweave/tube.hpp"
#include "tubeweave/weave.hpp"

namespace tubeweave {

struct DemoParams {
  double pillar_diameter = 100.0;
  double pitch = 400.0;
  std::size_t sides = 12;
  /// Distance from the outer pillars to the extruder poses.
  double approach = 400.0;
  /// Boundary half-height around the pillar row.
  double half_height = 400.0;
  double offset_d = 50.0;
};

struct DemoLayout {
  EnvironmentMap env;
  std::vector<std::string> labels;  // R1, R2, R3
  Pose start;                       // left extruder, facing +x
  Pose end;                         // right extruder, facing -x
  double offset_d = 50.0;
  Side first_side = Side::Above;

  PlanRequest request() const;
};

DemoLayout demo_layout(const DemoParams& params = {});

/// Fold spacing and fold length used by the demo pipeline.
TubeSpec demo_tube();

struct DemoRun {
  PlanResult planned;
  WeavePlan plan;       // smoothed roadmap plan
  WeavePlan conformed;  // fold-lattice plan that is actually discretised
  Discretization discretization;
  SimulationResult simulation;
  VerificationReport verification;
  double clearance = 0.0;
};

/// plan -> smooth -> conform -> discretise -> simulate -> verify.
/// Throws PlanningError naming the first stage that fails.
DemoRun run_demo(const DemoLayout& layout, const TubeSpec& tube, const ConformOptions& conform = {});

}  // namespace tubeweave
