#pragma once

#include <optional>

#include "rulemon/predicates/params.hpp"
#include "rulemon/world/map.hpp"
#include "rulemon/world/trace.hpp"

namespace rulemon::predicates {

using world::AgentId;
using world::AgentState;
using world::MapModel;
using world::Scene;

/// Position of i relative to j, measured in j's lane frame. The regions
/// overlap on purpose: an agent alongside may be behind and left at once.
struct Relation {
  bool behind = false;
  bool front = false;
  bool left = false;
  bool right = false;
};

/*
 * behind: i's front bumper is short of j's front bumper.
 * front:  i's rear bumper is past j's rear bumper.
 * left:   i's lane is in the left-neighbour chain of j's lane and the
 *         longitudinal gap between them is below delta_near (overlap
 *         counts as a negative gap). right is the mirror image.
 * Throws MapError if the agents are on different carriageways.
 */
Relation relational(const AgentState& i, const AgentState& j, const MapModel& map, double delta_near);

/// At least n_dense other agents with centre distance below rho_dense.
bool dense(const Scene& scene, AgentId i, const PredicateParams& p);

/// Closest agent ahead of (behind) i on i's lane; ties go to the lower id.
std::optional<AgentId> predecessor(const Scene& scene, AgentId i);
std::optional<AgentId> follower(const Scene& scene, AgentId i);

/// Minimum gap for the rear vehicle to stop behind the front one.
double required_distance(double v_rear, double v_front, const PredicateParams& p);

/// Gap from rear to front exceeds required_distance for their speeds.
bool safe_following(const AgentState& rear, const AgentState& front, const MapModel& map, const PredicateParams& p);

/// Gap to the predecessor (follower) exceeds the required distance;
/// true without a partner.
bool safe_distance_front(const Scene& scene, AgentId i, const MapModel& map, const PredicateParams& p);
bool safe_distance_rear(const Scene& scene, AgentId i, const MapModel& map, const PredicateParams& p);

/// j is i's predecessor.
bool in_direct_front(const Scene& scene, AgentId i, AgentId j);

/// i's box intersects another agent's box, or a corner leaves the paved
/// area of i's carriageway.
bool colliding(const Scene& scene, AgentId i, const MapModel& map);

bool near(const AgentState& i, const AgentState& j, const PredicateParams& p);
bool lane_end(const AgentState& i, const MapModel& map, const PredicateParams& p);
bool accelerate(const AgentState& i, const PredicateParams& p);
bool speed_diff(const AgentState& i, const AgentState& j, const PredicateParams& p);

/// Position test only; the latch over time lives in the Labeler.
bool past_merge_point(const AgentState& i, const MapModel& map);

const AgentState& agent_in(const Scene& scene, AgentId id);

}  // namespace rulemon::predicates
