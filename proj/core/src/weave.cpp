#include "tubeweave/weave.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tubeweave/errors.hpp"

namespace tubeweave {

std::string_view to_string(Side s) { return s == Side::Above ? "above" : "below"; }
std::string_view to_string(Direction d) { return d == Direction::CW ? "CW" : "CCW"; }

Side side_from_string(std::string_view s) {
  if (s == "above") return Side::Above;
  if (s == "below") return Side::Below;
  throw InvalidArgument("unknown side '" + std::string(s) + "' (expected above|below)");
}

Direction direction_from_string(std::string_view s) {
  if (s == "CW" || s == "cw") return Direction::CW;
  if (s == "CCW" || s == "ccw") return Direction::CCW;
  throw InvalidArgument("unknown direction '" + std::string(s) + "' (expected CW|CCW)");
}

ChordFrame ChordFrame::from(Point2 start, Point2 end) {
  const double len = distance(start, end);
  if (!(len > kDefaultEps)) throw InvalidArgument("chord start and end coincide");
  const Point2 u = normalized(end - start);
  return {start, u, perp(u), len};
}

std::optional<Side> ChordFrame::side(Point2 p) const {
  const double v = offset(p);
  if (v > kDefaultEps) return Side::Above;
  if (v < -kDefaultEps) return Side::Below;
  return std::nullopt;
}

bool violates_side(const ChordFrame& frame, const Segment& s, const SideConstraint& c) {
  const double cu = frame.along(c.centroid);
  const double ua = frame.along(s.a) - cu;
  const double ub = frame.along(s.b) - cu;
  if ((ua > 0.0 && ub > 0.0) || (ua < 0.0 && ub < 0.0)) return false;
  const double cv = frame.offset(c.centroid);
  const double va = frame.offset(s.a) - cv;
  const double vb = frame.offset(s.b) - cv;
  const double sgn = sign_of(c.side);
  if (ua == ub) return va * sgn < 0.0 || vb * sgn < 0.0;
  const double t = ua / (ua - ub);
  return (va + t * (vb - va)) * sgn < 0.0;
}

void WeavePlan::refresh() {
  total_length = polyline_length(polyline);
  turn_angles = polyline_turns(polyline);
}

double WeavePlan::cumulative_bend() const {
  double acc = 0.0;
  for (double t : turn_angles) acc += std::abs(t);
  return acc;
}

Direction WeavePlan::family() const { return waypoints.empty() ? Direction::CCW : waypoints.front().dir; }

std::vector<SideConstraint> WeavePlan::side_constraints(const EnvironmentMap& env) const {
  std::vector<SideConstraint> out;
  out.reserve(waypoints.size());
  for (const auto& w : waypoints) {
    if (w.obstacle >= env.obstacles.size()) {
      throw InvalidArgument("plan references obstacle " + std::to_string(w.obstacle) + " not present in the map");
    }
    out.push_back({w.obstacle, env.obstacles[w.obstacle].centroid(), w.side});
  }
  return out;
}

std::vector<std::size_t> default_targets(const EnvironmentMap& env, Point2 start, Point2 end, double d,
                                         const std::vector<std::size_t>& exclude) {
  const ChordFrame frame = ChordFrame::from(start, end);
  const Segment chord{start, end};
  std::vector<std::pair<double, std::size_t>> hits;
  for (std::size_t k = 0; k < env.obstacles.size(); ++k) {
    if (std::find(exclude.begin(), exclude.end(), k) != exclude.end()) continue;
    if (segment_polygon_distance(chord, env.obstacles[k]) <= d) {
      hits.emplace_back(frame.along(env.obstacles[k].centroid()), k);
    }
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::size_t> out;
  for (const auto& h : hits) out.push_back(h.second);
  return out;
}

std::vector<WeaveWaypoint> select_weave_waypoints(const EnvironmentMap& env, const RoadmapGraph& g,
                                                  std::size_t start, std::size_t end,
                                                  const std::vector<std::size_t>& targets, Side first_side) {
  if (start >= g.size() || end >= g.size()) throw InvalidArgument("start/end node index out of range");
  const ChordFrame frame = ChordFrame::from(g.node(start).position, g.node(end).position);
  std::vector<WeaveWaypoint> out;
  Side required = first_side;
  for (std::size_t t : targets) {
    if (t >= env.obstacles.size()) throw InvalidArgument("target obstacle " + std::to_string(t) + " out of range");
    std::optional<std::size_t> best;
    double best_offset = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i == start || i == end) continue;
      const RoadmapNode& n = g.node(i);
      if (n.obstacle() != t || frame.side(n.position) != required) continue;
      const double off = std::abs(frame.offset(n.position));
      if (!best || off < best_offset) {
        best = i;
        best_offset = off;
      }
    }
    if (!best) {
      throw PlanningError("obstacle " + std::to_string(t) + " has no roadmap node " +
                          std::string(to_string(required)) + " the chord");
    }
    out.push_back({*best, t, g.node(*best).position, required, direction_for(required)});
    required = opposite(required);
  }
  return out;
}

PlanOutcome plan_weave(const EnvironmentMap& env, const RoadmapGraph& g, std::size_t start, std::size_t end,
                       const std::vector<WeaveWaypoint>& waypoints) {
  if (start >= g.size() || end >= g.size()) throw InvalidArgument("start/end node index out of range");
  const Point2 s = g.node(start).position;
  const Point2 e = g.node(end).position;
  if (!(distance(s, e) > kDefaultEps)) return PlanFailure{0, "start and end coincide"};

  WeavePlan plan;
  plan.start = s;
  plan.end = e;
  plan.offset_d = g.offset_d();
  plan.waypoints = waypoints;
  for (const auto& w : waypoints) plan.contacted.push_back(w.obstacle);

  const ChordFrame frame = ChordFrame::from(s, e);
  const std::vector<SideConstraint> constraints = plan.side_constraints(env);
  const EdgeFilter allow = [&](std::size_t u, std::size_t v) {
    const Segment seg{g.node(u).position, g.node(v).position};
    return std::none_of(constraints.begin(), constraints.end(),
                        [&](const SideConstraint& c) { return violates_side(frame, seg, c); });
  };

  std::vector<std::size_t> stops{start};
  for (const auto& w : waypoints) stops.push_back(w.node);
  stops.push_back(end);

  std::vector<std::size_t> route{start};
  for (std::size_t leg = 0; leg + 1 < stops.size(); ++leg) {
    auto path = shortest_path(g, stops[leg], stops[leg + 1], allow);
    if (!path) {
      return PlanFailure{leg, "no route from node " + std::to_string(stops[leg]) + " to node " +
                                  std::to_string(stops[leg + 1]) + " passing features on their assigned sides"};
    }
    route.insert(route.end(), path->nodes.begin() + 1, path->nodes.end());
  }
  for (std::size_t idx : route) {
    const Point2 p = g.node(idx).position;
    if (plan.polyline.empty() || distance(plan.polyline.back(), p) > kDefaultEps) plan.polyline.push_back(p);
  }
  plan.refresh();
  return plan;
}

WeavePlan smooth_path(const WeavePlan& plan, const EnvironmentMap& env, double eps) {
  WeavePlan out = plan;
  if (out.polyline.size() < 3) return out;
  const ChordFrame frame = ChordFrame::from(plan.start, plan.end);
  const std::vector<SideConstraint> constraints = plan.side_constraints(env);
  auto& pts = out.polyline;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i + 1 < pts.size();) {
      const Segment shortcut{pts[i - 1], pts[i + 1]};
      const bool ok = shortcut.length() > eps && env.segment_is_free(shortcut, eps) &&
                      std::none_of(constraints.begin(), constraints.end(),
                                   [&](const SideConstraint& c) { return violates_side(frame, shortcut, c); });
      if (ok) {
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      } else {
        ++i;
      }
    }
  }
  out.refresh();
  return out;
}

std::vector<PairOutcome> all_pairs_plans(const EnvironmentMap& env, const RoadmapGraph& g,
                                         const AllPairsPolicy& policy) {
  struct Candidate {
    std::size_t start;
    std::size_t end;
    Side side;
  };
  std::vector<std::size_t> endpoints;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (boundary_distance(env.boundary, g.node(i).position) <= policy.boundary_band) endpoints.push_back(i);
  }
  std::vector<Candidate> cands;
  for (std::size_t i : endpoints) {
    for (std::size_t j : endpoints) {
      if (i == j) continue;
      const double chord = distance(g.node(i).position, g.node(j).position);
      if (!(chord > kDefaultEps) || chord < policy.min_chord) continue;
      for (Side side : policy.first_sides) cands.push_back({i, j, side});
    }
  }
  if (policy.sample_fraction < 1.0) {
    std::vector<std::size_t> order(cands.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 engine(policy.seed);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(engine() % i)]);
    }
    const double frac = std::max(0.0, policy.sample_fraction);
    const auto keep = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(cands.size())));
    order.resize(std::min(keep, order.size()));
    std::sort(order.begin(), order.end());
    std::vector<Candidate> sampled;
    for (std::size_t k : order) sampled.push_back(cands[k]);
    cands = std::move(sampled);
  }

  std::vector<PairOutcome> out;
  out.reserve(cands.size());
  for (const Candidate& c : cands) {
    PairOutcome po{c.start, c.end, c.side, std::nullopt, {}};
    std::vector<std::size_t> exclude;
    for (std::size_t n : {c.start, c.end}) {
      if (auto ob = g.node(n).obstacle()) exclude.push_back(*ob);
    }
    try {
      const auto targets = default_targets(env, g.node(c.start).position, g.node(c.end).position, g.offset_d(), exclude);
      const auto wps = select_weave_waypoints(env, g, c.start, c.end, targets, c.side);
      PlanOutcome res = plan_weave(env, g, c.start, c.end, wps);
      if (auto* fail = std::get_if<PlanFailure>(&res)) {
        po.failure = "leg " + std::to_string(fail->leg) + ": " + fail->reason;
      } else {
        WeavePlan plan = std::get<WeavePlan>(std::move(res));
        if (policy.smooth) plan = smooth_path(plan, env);
        plan.id = out.size();
        po.plan = std::move(plan);
      }
    } catch (const PlanningError& e) {
      po.failure = e.what();
    }
    out.push_back(std::move(po));
  }
  return out;
}

PlanResult plan_between(const EnvironmentMap& env, const PlanRequest& req) {
  PlanResult r{build_roadmap(env, req.offset_d, req.eps), 0, 0, {}, PlanFailure{}};
  r.start_node = r.roadmap.insert_point(env, req.start, "start", req.eps);
  r.end_node = r.roadmap.insert_point(env, req.end, "end", req.eps);
  r.targets = req.targets ? *req.targets : default_targets(env, req.start, req.end, req.offset_d);
  for (std::size_t t : r.targets) {
    if (t >= env.obstacles.size()) throw InvalidArgument("target obstacle " + std::to_string(t) + " out of range");
  }
  const auto wps = select_weave_waypoints(env, r.roadmap, r.start_node, r.end_node, r.targets, req.first_side);
  r.outcome = plan_weave(env, r.roadmap, r.start_node, r.end_node, wps);
  if (req.smooth) {
    if (auto* plan = std::get_if<WeavePlan>(&r.outcome)) *plan = smooth_path(*plan, env, req.eps);
  }
  return r;
}

}  // namespace tubeweave
