#include <cmath>
#include <numbers>
#include <queue>
#include <unordered_set>

#include "tubeweave/errors.hpp"
#include "tubeweave/tube.hpp"

namespace tubeweave {

namespace {

struct LatticeKey {
  long ix;
  long iy;
  int k;
  friend bool operator==(const LatticeKey&, const LatticeKey&) = default;
};

struct LatticeKeyHash {
  std::size_t operator()(const LatticeKey& key) const noexcept {
    std::size_t h = std::hash<long>{}(key.ix);
    h ^= std::hash<long>{}(key.iy) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<int>{}(key.k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct LatticeNode {
  Point2 pos;
  int k = 0;
  double g = 0.0;
  std::size_t parent = 0;
  FoldCommand cmd = FoldCommand::Keep;
};

struct QueueEntry {
  double f;
  std::size_t seq;
  std::size_t node;
  bool operator>(const QueueEntry& o) const { return f > o.f || (f == o.f && seq > o.seq); }
};

}  // namespace

std::optional<WeavePlan> conform_plan(const WeavePlan& plan, const EnvironmentMap& env, const TubeSpec& tube,
                                      const ConformOptions& opt) {
  tube.validate();
  if (plan.polyline.size() < 2) throw InvalidArgument("conform_plan: plan polyline needs at least two points");
  const double theta = tube.theta();
  const double s = tube.fold_spacing;
  const double clearance = opt.clearance.value_or(0.5 * tube.inflated_diameter() + 15.0);
  const double goal_tol = opt.goal_tolerance.value_or(s);
  const Point2 start = plan.polyline.front();
  const Point2 goal = plan.polyline.back();
  const double h0 = opt.base_heading.value_or(std::atan2(plan.polyline[1].y - start.y, plan.polyline[1].x - start.x));
  const FoldCommand straight = opt.straight == StraightPolicy::Keep ? FoldCommand::Keep : FoldCommand::ReleaseBoth;
  const int k_max = static_cast<int>(std::ceil(2.0 * std::numbers::pi / theta)) + 1;
  const double cell = 0.25 * s;

  const ChordFrame frame = ChordFrame::from(plan.start, plan.end);
  const std::vector<SideConstraint> constraints = plan.side_constraints(env);

  auto segment_ok = [&](Point2 a, Point2 b) {
    if (!point_strictly_inside(env.boundary, b) || segment_crosses_boundary({a, b}, env.boundary)) return false;
    for (const Polygon& ob : env.obstacles) {
      if (segment_polygon_distance({a, b}, ob) < clearance) return false;
    }
    for (const SideConstraint& c : constraints) {
      if (violates_side(frame, {a, b}, c)) return false;
    }
    return true;
  };
  auto key_of = [&](const LatticeNode& n) {
    return LatticeKey{std::lround(n.pos.x / cell), std::lround(n.pos.y / cell), n.k};
  };

  std::vector<LatticeNode> nodes{{start, 0, 0.0, 0, FoldCommand::Keep}};
  std::unordered_set<LatticeKey, LatticeKeyHash> closed;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;
  std::size_t seq = 0;
  open.push({distance(start, goal), seq++, 0});

  std::optional<std::size_t> reached;
  std::size_t expansions = 0;
  while (!open.empty() && expansions < opt.max_expansions) {
    const QueueEntry top = open.top();
    open.pop();
    const LatticeNode cur = nodes[top.node];
    if (!closed.insert(key_of(cur)).second) continue;
    ++expansions;
    if (top.node != 0 && distance(cur.pos, goal) <= goal_tol) {
      reached = top.node;
      break;
    }
    const double heading = h0 + cur.k * theta;
    const Point2 dir{std::cos(heading), std::sin(heading)};
    for (FoldCommand cmd : {straight, FoldCommand::ReleaseLeft, FoldCommand::ReleaseRight}) {
      const double len = cmd == FoldCommand::ReleaseBoth ? s + 2.0 * tube.l_fold : s;
      const int dk = cmd == FoldCommand::ReleaseRight ? 1 : (cmd == FoldCommand::ReleaseLeft ? -1 : 0);
      const int k = cur.k + dk;
      if (std::abs(k) > k_max) continue;
      const Point2 next = cur.pos + len * dir;
      if (!segment_ok(cur.pos, next)) continue;
      LatticeNode child{next, k, cur.g + len + (dk != 0 ? opt.bend_weight * theta : 0.0), top.node, cmd};
      if (closed.count(key_of(child))) continue;
      nodes.push_back(child);
      open.push({child.g + distance(next, goal), seq++, nodes.size() - 1});
    }
  }
  if (!reached) return std::nullopt;

  std::vector<std::size_t> chain;
  for (std::size_t i = *reached; i != 0; i = nodes[i].parent) chain.push_back(i);
  WeavePlan out = plan;
  out.polyline = {start};
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const LatticeNode& n = nodes[*it];
    const bool turns = n.cmd == FoldCommand::ReleaseLeft || n.cmd == FoldCommand::ReleaseRight;
    if (turns || std::next(it) == chain.rend()) out.polyline.push_back(n.pos);
  }
  out.refresh();
  return out;
}

}  // namespace tubeweave
