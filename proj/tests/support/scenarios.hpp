#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rulemon/world/map.hpp"
#include "rulemon/world/trace.hpp"

namespace rulemon::testing {

/// Closed-form maneuvers sampled at 10 Hz. Agent ids are named per scenario.
struct Scenario {
  std::shared_ptr<const world::MapModel> map;
  std::vector<world::RawSample> samples;

  world::Trace trace() const { return world::build_trace(map, samples); }
};

enum class RightPassVariant { Plain, AccelerationLane, Dense };

/// Agent 1 (25 m/s, right lane) passes agent 2 (20 m/s, left lane) from
/// 20 m behind to 20 m ahead. Dense adds eight escorts moving with agent 1
/// in the two lanes further left.
Scenario right_pass(RightPassVariant variant = RightPassVariant::Plain);

/// Agent 1 in the left lane overtakes agent 2 (20 m/s) with speed 20 + dv,
/// from 12 m behind to 12 m ahead.
Scenario left_pass(double dv);

/// Agent 1 follows agent 2 at 20 m/s with a constant 15 m bumper gap.
Scenario tailgate();

/// Agents 1-4 each change from the right to the left lane once at 10 m/s;
/// agent 5 drives in the left lane 3.5 m behind agent 1's target slot.
Scenario lane_changes();

/*
 * Merge: lane 1 continues (merge point at 200 m), lane 2 to its right ends
 * at 200 m. Agent 1 = i and agent 2 = j on lane 1 with j ahead, agent 3 = k
 * on the ending lane next to i. Compliant: i lets k in between itself and
 * j. Blocking: k has to merge behind i, so j stays i's predecessor.
 * Use delta_rem = 55 with these maps.
 */
Scenario zipper(bool blocking);

/// Agent 2 (20 m/s, left lane) overtakes agent 1 who drives 0.3 m off its
/// lane centre toward agent 2 and accelerates at `accel`. Lanes are 3 m wide.
Scenario being_overtaken(double accel);

/// Two agents 100 m apart in one lane at 20 m/s.
Scenario clean();

/// Writes the map as JSON and the samples as native CSV into `dir`;
/// returns {map path, trajectory path}.
std::pair<std::string, std::string> write_scenario(const Scenario& s, const std::string& dir, const std::string& stem);

}  // namespace rulemon::testing
