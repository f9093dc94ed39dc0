#include "rulemon/predicates/labeler.hpp"

#include <algorithm>
#include <string>

#include "rulemon/predicates/predicates.hpp"

namespace rulemon::predicates {

std::optional<Lifespan> joint_lifespan(const Trace& trace, std::span<const AgentId> tuple) {
  if (tuple.empty()) return std::nullopt;
  Lifespan joint = trace.lifespan(tuple.front());
  for (AgentId id : tuple.subspan(1)) {
    const Lifespan& l = trace.lifespan(id);
    joint.first = std::max(joint.first, l.first);
    joint.last = std::min(joint.last, l.last);
  }
  if (joint.first > joint.last) return std::nullopt;
  return joint;
}

Labeler::Labeler(const Trace& trace, PredicateParams params) : trace_(&trace), params_(params) {
  params_.validate();
  neighbours_.resize(trace.size());
  for (std::size_t t = 0; t < trace.size(); ++t) {
    std::map<world::LaneId, std::vector<const world::AgentState*>> by_lane;
    for (const auto& [id, a] : trace.scene(t).agents) by_lane[a.lane].push_back(&a);
    auto& out = neighbours_[t];
    for (auto& [lane, agents] : by_lane) {
      // Ascending arc length, ties by id; the nearest strictly-ahead group
      // starts right after the ego's group, and its lowest id comes first.
      std::sort(agents.begin(), agents.end(), [](const auto* a, const auto* b) {
        return a->s != b->s ? a->s < b->s : a->id < b->id;
      });
      for (std::size_t k = 0; k < agents.size(); ++k) {
        Neighbours n;
        std::size_t up = k;
        while (up < agents.size() && agents[up]->s == agents[k]->s) ++up;
        if (up < agents.size()) n.ahead = agents[up]->id;
        std::size_t down = k;
        while (down > 0 && agents[down - 1]->s == agents[k]->s) --down;
        if (down > 0) {
          std::size_t group = down - 1;
          while (group > 0 && agents[group - 1]->s == agents[down - 1]->s) --group;
          n.behind = agents[group]->id;
        }
        out.emplace(agents[k]->id, n);
      }
    }
  }
  for (const auto& [id, life] : trace.lifespans()) {
    for (std::size_t t = life.first; t <= life.last; ++t) {
      if (past_merge_point(*trace.scene(t).find(id), trace.map())) {
        merged_from_.emplace(id, t);
        break;
      }
    }
  }
}

const Labeler::Neighbours& Labeler::neighbours(AgentId i, std::size_t t) const {
  const auto& scene = neighbours_.at(t);
  auto it = scene.find(i);
  if (it == scene.end()) {
    throw std::out_of_range("agent " + std::to_string(i) + " is not present in scene " + std::to_string(t));
  }
  return it->second;
}

std::optional<AgentId> Labeler::predecessor(AgentId i, std::size_t t) const { return neighbours(i, t).ahead; }
std::optional<AgentId> Labeler::follower(AgentId i, std::size_t t) const { return neighbours(i, t).behind; }

bool Labeler::merged(AgentId i, std::size_t t) const {
  (void)neighbours(i, t);
  auto it = merged_from_.find(i);
  return it != merged_from_.end() && t >= it->second;
}

bool Labeler::lane_change(AgentId i, std::size_t t) const {
  const auto& scene = trace_->scene(t);
  const auto& now = agent_in(scene, i);
  if (t == trace_->lifespan(i).first) return false;
  return agent_in(trace_->scene(t - 1), i).lane != now.lane;
}

bool Labeler::value(const PropositionRef& prop, std::span<const AgentId> tuple, std::size_t t,
                    const PredicateParams& p) const {
  const auto slot_agent = [&](std::size_t n) -> AgentId {
    if (n >= prop.slots.size() || static_cast<std::size_t>(prop.slots[n]) >= tuple.size()) {
      throw std::out_of_range("proposition '" + prop.name + "' references a slot beyond the agent tuple");
    }
    return tuple[static_cast<std::size_t>(prop.slots[n])];
  };
  const world::Scene& scene = trace_->scene(t);
  const world::MapModel& map = trace_->map();
  const AgentId i = slot_agent(0);
  const AgentState& ego = agent_in(scene, i);

  switch (prop.predicate) {
    case Predicate::Dense:
      return dense(scene, i, p);
    case Predicate::Merged:
      return merged(i, t);
    case Predicate::SafeDistanceFront: {
      const auto f = predecessor(i, t);
      return !f || safe_following(ego, agent_in(scene, *f), map, p);
    }
    case Predicate::SafeDistanceRear: {
      const auto r = follower(i, t);
      return !r || safe_following(agent_in(scene, *r), ego, map, p);
    }
    case Predicate::Colliding:
      return colliding(scene, i, map);
    case Predicate::LaneChange:
      return lane_change(i, t);
    case Predicate::LaneEnd:
      return lane_end(ego, map, p);
    case Predicate::Accelerate:
      return accelerate(ego, p);
    case Predicate::BuiltUp:
      return map.built_up();
    case Predicate::Motorway:
      return map.motorway();
    case Predicate::DivergingLane:
      return map.lane(ego.lane).type == world::LaneType::Diverging;
    case Predicate::AccelerationLane:
      return map.lane(ego.lane).type == world::LaneType::Acceleration;
    default:
      break;
  }

  const AgentId j = slot_agent(1);
  const AgentState& other = agent_in(scene, j);
  switch (prop.predicate) {
    case Predicate::InDirectFront: {
      const auto f = predecessor(i, t);
      return f && *f == j;
    }
    case Predicate::Right:
      return i != j && relational(ego, other, map, p.delta_near).right;
    case Predicate::Left:
      return i != j && relational(ego, other, map, p.delta_near).left;
    case Predicate::Front:
      return i != j && relational(ego, other, map, p.delta_near).front;
    case Predicate::Behind:
      return i != j && relational(ego, other, map, p.delta_near).behind;
    case Predicate::Near:
      return i != j && near(ego, other, p);
    case Predicate::SpeedDiff:
      return speed_diff(ego, other, p);
    default:
      break;
  }
  throw std::logic_error("unhandled predicate");
}

LabelTrace Labeler::label(const PropositionRef& prop, std::span<const AgentId> tuple,
                          const PredicateParams& p) const {
  LabelTrace out{prop.name, {tuple.begin(), tuple.end()}, 0, {}};
  const auto joint = joint_lifespan(*trace_, tuple);
  if (!joint) return out;
  out.first = joint->first;
  out.values.reserve(joint->length());
  for (std::size_t t = joint->first; t <= joint->last; ++t) out.values.push_back(value(prop, tuple, t, p));
  return out;
}

}  // namespace rulemon::predicates
