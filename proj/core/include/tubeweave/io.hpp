#pragma once

// JSON file schemas. Readers throw SchemaError naming the first problem.

#include <string>
#include <vector>

#include "tubeweave/environment.hpp"
#include "tubeweave/roadmap.hpp"
#include "tubeweave/structural.hpp"
#include "tubeweave/tube.hpp"
#include "tubeweave/weave.hpp"

namespace tubeweave::io {

/// {name, units:"mm", boundary:[[x,y],...], obstacles:[[[x,y],...],...]}.
/// Either vertex orientation is accepted; the map is validated on load.
EnvironmentMap environment_from_json(const std::string& text);
std::string environment_to_json(const EnvironmentMap& env);

/// {start, end, waypoints:[{node, side, dir, obstacle, pos}], polyline,
///  contacted, total_length_mm, turn_angles_rad, id, offset_d_mm}.
WeavePlan plan_from_json(const std::string& text);
std::string plan_to_json(const WeavePlan& plan);

/// {plans:[plan...], failures:[{start, end, side, reason}]}.
std::vector<WeavePlan> plans_from_json(const std::string& text);
std::string plans_to_json(const std::vector<PairOutcome>& outcomes);
std::string plans_to_json(const std::vector<WeavePlan>& plans);
/// Accepts either a single plan or a plans file.
std::vector<WeavePlan> plans_from_any_json(const std::string& text);

/// {tube:{d_flat_mm, t_mm, pressure_pa, s_mm, l_fold_mm, l_thread_mm,
///  reel_mm[, theta_rad]}, base:{x, y, heading}, commands:[{k, cmd}]}.
FoldSchedule schedule_from_json(const std::string& text);
std::string schedule_to_json(const FoldSchedule& schedule);

std::string roadmap_to_json(const RoadmapGraph& g);
std::string simulation_to_json(const SimulationResult& sim, const VerificationReport& report);
std::string verification_to_json(const VerificationReport& report);
std::string feasibility_to_json(const FeasibilityReport& report);
std::string feasibility_list_to_json(const std::vector<FeasibilityReport>& reports);
std::vector<FeasibilityReport> feasibility_list_from_json(const std::string& text);
std::string perturbation_to_json(const PerturbationReport& report);
std::string material_to_json(const MaterialEstimate& m);

/// {a, b_per_m, pressure_pa}.
BucklingModel buckling_from_json(const std::string& text);
std::string buckling_to_json(const BucklingModel& m);

/// Read a whole file; throws Error (with errno text) when it cannot be opened.
std::string read_file(const std::string& path);
/// Write atomically enough for CLI use; throws Error on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace tubeweave::io
