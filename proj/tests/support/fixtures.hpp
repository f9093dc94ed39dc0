#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "rulemon/world/map.hpp"
#include "rulemon/world/trace.hpp"

namespace rulemon::testing {

/// Parallel straight lanes along +x from x = 0 to x = `length`. Lane ids run
/// 1..n from right to left; lane k has its centerline at y = (k - 1) * width.
std::vector<world::Lane> straight_lanes(int count, double width = 3.5, double length = 1000.0);

std::shared_ptr<const world::MapModel> make_map(std::vector<world::Lane> lanes, bool built_up = false,
                                                bool motorway = true);

/// Row with timestamp frame * dt (milliseconds rounded).
world::RawSample sample(world::AgentId id, std::int64_t frame, double dt, double x, double y, double heading = 0.0,
                        double length = 4.5, double width = 1.8);

/// Samples of an agent whose centre follows `pos(t)` for frames [first, last].
std::vector<world::RawSample> track(world::AgentId id, std::int64_t first, std::int64_t last, double dt,
                                    const std::function<world::Vec2(double)>& pos, double length = 4.5,
                                    double width = 1.8);

/// Agent heading along +x at (x, y), projected onto `map`; speed along x.
world::AgentState place(const world::MapModel& map, world::AgentId id, double x, double y, double speed = 0.0,
                        double length = 4.5, double width = 1.8);

world::Scene scene_of(const std::vector<world::AgentState>& agents, std::size_t index = 0);

}  // namespace rulemon::testing
