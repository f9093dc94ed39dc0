#include "rulemon/predicates/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rulemon::predicates {

const AgentState& agent_in(const Scene& scene, AgentId id) {
  const AgentState* a = scene.find(id);
  if (a == nullptr) {
    throw std::out_of_range("agent " + std::to_string(id) + " is not present in scene " +
                            std::to_string(scene.index));
  }
  return *a;
}

Relation relational(const AgentState& i, const AgentState& j, const MapModel& map, double delta_near) {
  const double si = world::s_in_lane_of(i, j, map);
  const double gap = world::longitudinal_gap(i, j, map);
  Relation r;
  r.behind = si + i.length / 2.0 < j.s_front();
  r.front = si - i.length / 2.0 > j.s_rear();
  if (gap < delta_near) {
    const auto lefts = map.left_chain(j.lane);
    const auto rights = map.right_chain(j.lane);
    r.left = std::find(lefts.begin(), lefts.end(), i.lane) != lefts.end();
    r.right = std::find(rights.begin(), rights.end(), i.lane) != rights.end();
  }
  return r;
}

bool dense(const Scene& scene, AgentId i, const PredicateParams& p) {
  const AgentState& ego = agent_in(scene, i);
  int close = 0;
  for (const auto& [id, other] : scene.agents) {
    if (id == i) continue;
    if (world::norm(other.position() - ego.position()) < p.rho_dense && ++close >= p.n_dense) return true;
  }
  return false;
}

namespace {

// Same-lane neighbour ordered by centre arc length; direction +1 looks ahead.
std::optional<AgentId> lane_neighbour(const Scene& scene, AgentId i, int direction) {
  const AgentState& ego = agent_in(scene, i);
  std::optional<AgentId> best;
  double best_ds = 0.0;
  for (const auto& [id, other] : scene.agents) {
    if (id == i || other.lane != ego.lane) continue;
    const double ds = direction * (other.s - ego.s);
    if (ds <= 0.0) continue;
    if (!best || ds < best_ds) {
      best = id;
      best_ds = ds;
    }
  }
  return best;
}

}  // namespace

std::optional<AgentId> predecessor(const Scene& scene, AgentId i) { return lane_neighbour(scene, i, +1); }
std::optional<AgentId> follower(const Scene& scene, AgentId i) { return lane_neighbour(scene, i, -1); }

double required_distance(double v_rear, double v_front, const PredicateParams& p) {
  const double d = v_rear * p.reaction_time + v_rear * v_rear / (2.0 * p.decel_max_rear) -
                   v_front * v_front / (2.0 * p.decel_max_front);
  return std::max(0.0, d);
}

bool safe_following(const AgentState& rear, const AgentState& front, const MapModel& map, const PredicateParams& p) {
  return world::longitudinal_gap(rear, front, map) > required_distance(rear.speed, front.speed, p);
}

bool safe_distance_front(const Scene& scene, AgentId i, const MapModel& map, const PredicateParams& p) {
  const auto f = predecessor(scene, i);
  if (!f) return true;
  return safe_following(agent_in(scene, i), agent_in(scene, *f), map, p);
}

bool safe_distance_rear(const Scene& scene, AgentId i, const MapModel& map, const PredicateParams& p) {
  const auto r = follower(scene, i);
  if (!r) return true;
  return safe_following(agent_in(scene, *r), agent_in(scene, i), map, p);
}

bool in_direct_front(const Scene& scene, AgentId i, AgentId j) {
  const auto f = predecessor(scene, i);
  return f && *f == j;
}

bool colliding(const Scene& scene, AgentId i, const MapModel& map) {
  const AgentState& ego = agent_in(scene, i);
  const world::OrientedBox box = ego.box();
  for (const auto& corner : box.corners()) {
    if (!map.on_road(corner, ego.lane)) return true;
  }
  const double reach = std::hypot(ego.length, ego.width) / 2.0;
  for (const auto& [id, other] : scene.agents) {
    if (id == i) continue;
    const double other_reach = std::hypot(other.length, other.width) / 2.0;
    if (world::norm(other.position() - ego.position()) > reach + other_reach) continue;
    if (world::intersects(box, other.box())) return true;
  }
  return false;
}

bool near(const AgentState& i, const AgentState& j, const PredicateParams& p) {
  return world::norm(i.position() - j.position()) < p.delta_near;
}

bool lane_end(const AgentState& i, const MapModel& map, const PredicateParams& p) {
  const auto& end = map.lane(i.lane).end_s;
  return end && *end - i.s_front() < p.delta_rem;
}

bool accelerate(const AgentState& i, const PredicateParams& p) { return i.acceleration > p.a_limit; }

bool speed_diff(const AgentState& i, const AgentState& j, const PredicateParams& p) {
  return i.speed > j.speed + p.v_thresh;
}

bool past_merge_point(const AgentState& i, const MapModel& map) {
  const auto& merge = map.lane(i.lane).merge_s;
  return merge && i.s > *merge;
}

}  // namespace rulemon::predicates
