#include "tubeweave/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tubeweave/errors.hpp"

namespace tubeweave::io {

using json = nlohmann::ordered_json;

namespace {

// Non-finite values are written as null and read back as +infinity.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double get_num(const json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_null()) return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw SchemaError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::size_t get_index(const json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw SchemaError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string get_str(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

const json& get_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw SchemaError(std::string("field '") + key + "' must be an array");
  return j.at(key);
}

json point(Point2 p) { return json::array({p.x, p.y}); }

Point2 to_point(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError("point must be a [x, y] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json points(const std::vector<Point2>& pts) {
  json a = json::array();
  for (const Point2& p : pts) a.push_back(point(p));
  return a;
}

std::vector<Point2> to_points(const json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of points");
  std::vector<Point2> out;
  for (const json& p : j) out.push_back(to_point(p));
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const json::exception& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  } catch (const Error& e) {
    throw SchemaError(std::string(what) + ": " + e.what());
  }
}

json plan_json(const WeavePlan& p) {
  json wps = json::array();
  for (const auto& w : p.waypoints) {
    wps.push_back({{"node", w.node},
                   {"side", std::string(to_string(w.side))},
                   {"dir", std::string(to_string(w.dir))},
                   {"obstacle", w.obstacle},
                   {"pos", point(w.position)}});
  }
  json turns = json::array();
  for (double t : p.turn_angles) turns.push_back(t);
  return {{"id", p.id},
          {"start", point(p.start)},
          {"end", point(p.end)},
          {"offset_d_mm", p.offset_d},
          {"waypoints", wps},
          {"polyline", points(p.polyline)},
          {"contacted", p.contacted},
          {"total_length_mm", p.total_length},
          {"turn_angles_rad", turns}};
}

WeavePlan plan_from(const json& j) {
  if (!j.is_object()) throw SchemaError("plan must be an object");
  WeavePlan p;
  p.id = j.contains("id") ? get_index(j, "id") : 0;
  p.start = to_point(j.at("start"));
  p.end = to_point(j.at("end"));
  p.offset_d = j.contains("offset_d_mm") ? get_num(j, "offset_d_mm") : 0.0;
  for (const json& w : get_array(j, "waypoints")) {
    WeaveWaypoint wp;
    wp.node = get_index(w, "node");
    wp.side = side_from_string(get_str(w, "side"));
    wp.dir = direction_from_string(get_str(w, "dir"));
    wp.obstacle = w.contains("obstacle") ? get_index(w, "obstacle") : 0;
    if (w.contains("pos")) wp.position = to_point(w.at("pos"));
    p.waypoints.push_back(wp);
  }
  p.polyline = to_points(get_array(j, "polyline"));
  if (p.polyline.size() < 2) throw SchemaError("plan polyline needs at least two points");
  for (const json& c : get_array(j, "contacted")) {
    if (!c.is_number_integer() || c.get<long long>() < 0) throw SchemaError("contacted entries must be indices");
    p.contacted.push_back(c.get<std::size_t>());
  }
  p.refresh();
  return p;
}

json tube_json(const TubeSpec& t) {
  json j = {{"d_flat_mm", t.d_flat},     {"t_mm", t.wall},         {"pressure_pa", t.pressure_pa},
            {"s_mm", t.fold_spacing},    {"l_fold_mm", t.l_fold},  {"l_thread_mm", t.l_thread},
            {"reel_mm", t.reel_length}};
  if (t.theta_override) j["theta_rad"] = *t.theta_override;
  return j;
}

TubeSpec tube_from(const json& j) {
  TubeSpec t;
  t.d_flat = get_num(j, "d_flat_mm");
  t.wall = get_num(j, "t_mm");
  t.pressure_pa = get_num(j, "pressure_pa");
  t.fold_spacing = get_num(j, "s_mm");
  t.l_fold = get_num(j, "l_fold_mm");
  t.l_thread = get_num(j, "l_thread_mm");
  t.reel_length = get_num(j, "reel_mm");
  if (j.contains("theta_rad")) t.theta_override = get_num(j, "theta_rad");
  return t;
}

json feasibility_json(const FeasibilityReport& r) {
  json spans = json::array();
  for (const auto& s : r.spans) {
    spans.push_back({{"from", point(s.from)},
                     {"to", point(s.to)},
                     {"length_mm", s.length},
                     {"q_n_per_m", s.q},
                     {"q_max_n_per_m", s.q_max},
                     {"pass", s.pass}});
  }
  return {{"plan_id", r.plan_id},
          {"spans", spans},
          {"spans_pass", r.spans_pass},
          {"worst_span_margin_n_per_m", num(r.worst_span_margin)},
          {"cumulative_bend_rad", r.cumulative_bend},
          {"theta_max_rad", r.theta_max},
          {"bend_pass", r.bend_pass},
          {"material_length_mm", r.material_length},
          {"reel_mm", r.reel_length},
          {"reel_pass", r.reel_pass},
          {"material", {{"tubes", r.material.tubes}, {"volume_cm3", r.material.volume_cm3}, {"mass_g", r.material.mass_g}}},
          {"total_length_mm", r.total_length},
          {"min_clearance_mm", num(r.min_clearance)},
          {"geometry_pass", r.geometry_pass},
          {"overall", r.overall}};
}

FeasibilityReport feasibility_from(const json& j) {
  FeasibilityReport r;
  r.plan_id = get_index(j, "plan_id");
  for (const json& s : get_array(j, "spans")) {
    SpanResult sr;
    sr.from = to_point(s.at("from"));
    sr.to = to_point(s.at("to"));
    sr.length = get_num(s, "length_mm");
    sr.q = get_num(s, "q_n_per_m");
    sr.q_max = get_num(s, "q_max_n_per_m");
    sr.pass = s.at("pass").get<bool>();
    r.spans.push_back(sr);
  }
  r.spans_pass = j.at("spans_pass").get<bool>();
  r.worst_span_margin = get_num(j, "worst_span_margin_n_per_m");
  r.cumulative_bend = get_num(j, "cumulative_bend_rad");
  r.theta_max = get_num(j, "theta_max_rad");
  r.bend_pass = j.at("bend_pass").get<bool>();
  r.material_length = get_num(j, "material_length_mm");
  r.reel_length = get_num(j, "reel_mm");
  r.reel_pass = j.at("reel_pass").get<bool>();
  const json& m = j.at("material");
  r.material = {get_index(m, "tubes"), get_num(m, "volume_cm3"), get_num(m, "mass_g")};
  r.total_length = get_num(j, "total_length_mm");
  r.min_clearance = get_num(j, "min_clearance_mm");
  r.geometry_pass = j.at("geometry_pass").get<bool>();
  r.overall = j.at("overall").get<bool>();
  return r;
}

json verification_json(const VerificationReport& r) {
  json obs = json::array();
  for (const auto& o : r.obstacles) {
    obs.push_back({{"obstacle", o.obstacle}, {"collision", o.collision}, {"clearance_mm", num(o.clearance)}});
  }
  json pas = json::array();
  for (const auto& p : r.passages) {
    pas.push_back({{"obstacle", p.obstacle},
                   {"expected", std::string(to_string(p.expected))},
                   {"observed", p.observed ? json(std::string(to_string(*p.observed))) : json(nullptr)},
                   {"distance_mm", num(p.distance)},
                   {"contacted", p.contacted},
                   {"ok", p.ok}});
  }
  return {{"passed", r.passed},
          {"inside_boundary", r.inside_boundary},
          {"min_clearance_mm", num(r.min_clearance)},
          {"alternation_ok", r.alternation_ok},
          {"obstacles", obs},
          {"passages", pas},
          {"failures", r.failures}};
}

}  // namespace

EnvironmentMap environment_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded("environment", [&] {
    if (!j.is_object()) throw SchemaError("environment must be an object");
    if (j.contains("units") && get_str(j, "units") != "mm") throw SchemaError("units must be \"mm\"");
    const std::string name = j.contains("name") ? get_str(j, "name") : std::string();
    Polygon boundary = [&] {
      try {
        return Polygon::make(to_points(get_array(j, "boundary")));
      } catch (const GeometryError& e) {
        throw SchemaError(std::string("boundary: ") + e.what());
      }
    }();
    std::vector<Polygon> obstacles;
    const json& obs = get_array(j, "obstacles");
    for (std::size_t i = 0; i < obs.size(); ++i) {
      try {
        obstacles.push_back(Polygon::make(to_points(obs[i])));
      } catch (const GeometryError& e) {
        throw SchemaError("obstacle " + std::to_string(i) + ": " + e.what());
      }
    }
    EnvironmentMap env{name, std::move(boundary), std::move(obstacles)};
    if (auto err = env.check()) throw SchemaError(*err);
    return env;
  });
}

std::string environment_to_json(const EnvironmentMap& env) {
  json obs = json::array();
  for (const Polygon& p : env.obstacles) obs.push_back(points(p.vertices()));
  return dump({{"name", env.name}, {"units", "mm"}, {"boundary", points(env.boundary.vertices())}, {"obstacles", obs}});
}

WeavePlan plan_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded("plan", [&] { return plan_from(j); });
}

std::string plan_to_json(const WeavePlan& plan) { return dump(plan_json(plan)); }

std::vector<WeavePlan> plans_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded("plans", [&] {
    std::vector<WeavePlan> out;
    for (const json& p : get_array(j, "plans")) out.push_back(plan_from(p));
    return out;
  });
}

std::vector<WeavePlan> plans_from_any_json(const std::string& text) {
  const json j = parse(text);
  return guarded("plans", [&] {
    std::vector<WeavePlan> out;
    if (j.is_object() && j.contains("plans")) {
      for (const json& p : get_array(j, "plans")) out.push_back(plan_from(p));
    } else {
      out.push_back(plan_from(j));
    }
    return out;
  });
}

std::string plans_to_json(const std::vector<PairOutcome>& outcomes) {
  json plans = json::array();
  json failures = json::array();
  for (const auto& o : outcomes) {
    if (o.plan) {
      plans.push_back(plan_json(*o.plan));
    } else {
      failures.push_back(
          {{"start", o.start}, {"end", o.end}, {"side", std::string(to_string(o.first_side))}, {"reason", o.failure}});
    }
  }
  return dump({{"plans", plans}, {"failures", failures}});
}

std::string plans_to_json(const std::vector<WeavePlan>& list) {
  json plans = json::array();
  for (const auto& p : list) plans.push_back(plan_json(p));
  return dump({{"plans", plans}, {"failures", json::array()}});
}

FoldSchedule schedule_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded("schedule", [&] {
    FoldSchedule s;
    s.tube = tube_from(j.at("tube"));
    const json& b = j.at("base");
    s.base = {{get_num(b, "x"), get_num(b, "y")}, get_num(b, "heading")};
    for (const json& c : get_array(j, "commands")) {
      s.commands.push_back({get_index(c, "k"), fold_command_from_string(get_str(c, "cmd"))});
    }
    s.validate();
    return s;
  });
}

std::string schedule_to_json(const FoldSchedule& s) {
  json cmds = json::array();
  for (const auto& c : s.commands) cmds.push_back({{"k", c.k}, {"cmd", std::string(to_string(c.cmd))}});
  return dump({{"tube", tube_json(s.tube)},
               {"base", {{"x", s.base.position.x}, {"y", s.base.position.y}, {"heading", s.base.heading}}},
               {"commands", cmds}});
}

std::string roadmap_to_json(const RoadmapGraph& g) {
  json nodes = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const RoadmapNode& n = g.node(i);
    json entry = {{"index", i}, {"pos", point(n.position)}};
    if (const auto* ov = std::get_if<ObstacleVertex>(&n.provenance)) {
      entry["obstacle"] = ov->obstacle;
      entry["vertex"] = ov->vertex;
    } else {
      entry["tag"] = std::get<FreePoint>(n.provenance).tag;
    }
    nodes.push_back(entry);
  }
  json adj = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.size(); ++j) row.push_back(g.has_edge(i, j) ? json(g.weight(i, j)) : json(nullptr));
    adj.push_back(row);
  }
  return dump({{"offset_d_mm", g.offset_d()}, {"nodes", nodes}, {"adjacency", adj}});
}

std::string verification_to_json(const VerificationReport& r) { return dump(verification_json(r)); }

std::string simulation_to_json(const SimulationResult& sim, const VerificationReport& report) {
  return dump({{"polyline", points(sim.polyline)},
               {"final_heading_rad", sim.final_heading},
               {"stations", sim.stations.size()},
               {"verification", verification_json(report)}});
}

std::string feasibility_to_json(const FeasibilityReport& r) { return dump(feasibility_json(r)); }

std::string feasibility_list_to_json(const std::vector<FeasibilityReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(feasibility_json(r));
  return dump({{"reports", arr}});
}

std::vector<FeasibilityReport> feasibility_list_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded("feasibility", [&] {
    std::vector<FeasibilityReport> out;
    if (j.contains("reports")) {
      for (const json& r : get_array(j, "reports")) out.push_back(feasibility_from(r));
    } else {
      out.push_back(feasibility_from(j));
    }
    return out;
  });
}

std::string perturbation_to_json(const PerturbationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    const char* status = e.status == PerturbationEntry::Status::Pass   ? "pass"
                         : e.status == PerturbationEntry::Status::Fail ? "fail"
                                                                       : "invalid";
    entries.push_back({{"dx_mm", e.displacement.dx},
                       {"dy_mm", e.displacement.dy},
                       {"status", status},
                       {"min_clearance_mm", num(e.min_clearance)},
                       {"detail", e.detail}});
  }
  return dump({{"obstacle", r.obstacle},
               {"nominal_pass", r.nominal_pass},
               {"margins_mm",
                {{"plus_x", r.margins.plus_x},
                 {"minus_x", r.margins.minus_x},
                 {"plus_y", r.margins.plus_y},
                 {"minus_y", r.margins.minus_y}}},
               {"entries", entries}});
}

std::string material_to_json(const MaterialEstimate& m) {
  return dump({{"tubes", m.tubes}, {"volume_cm3", m.volume_cm3}, {"mass_g", m.mass_g}});
}

BucklingModel buckling_from_json(const std::string& text) {
  const json j = parse(text);
  return guarded("buckling model", [&] {
    BucklingModel m{get_num(j, "a"), get_num(j, "b_per_m"), j.contains("pressure_pa") ? get_num(j, "pressure_pa") : 0.0};
    m.validate();
    return m;
  });
}

std::string buckling_to_json(const BucklingModel& m) {
  return dump({{"a", m.a}, {"b_per_m", m.b_per_m}, {"pressure_pa", m.pressure_pa}});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "': " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot write '" + path + "': " + std::strerror(errno));
  out << content;
  if (!out) throw FileError("write to '" + path + "' failed");
}

}  // namespace tubeweave::io
