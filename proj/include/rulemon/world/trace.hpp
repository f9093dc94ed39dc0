#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rulemon/world/map.hpp"

namespace rulemon::world {

using AgentId = std::int64_t;

struct AgentState {
  AgentId id = 0;
  double time = 0.0;
  /// Geometric centre.
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double speed = 0.0;
  double heading = 0.0;
  /// Signed longitudinal acceleration (rate of change of speed).
  double acceleration = 0.0;
  double length = 0.0;
  double width = 0.0;
  LaneId lane = 0;
  double s = 0.0;
  double lateral = 0.0;

  double s_front() const { return s + length / 2.0; }
  double s_rear() const { return s - length / 2.0; }
  Vec2 position() const { return {x, y}; }
  OrientedBox box() const { return {{x, y}, heading, length, width}; }
};

struct Scene {
  std::size_t index = 0;
  double time = 0.0;
  /// Ordered by agent id.
  std::map<AgentId, AgentState> agents;

  const AgentState* find(AgentId id) const;
};

/// First and last scene index (inclusive) of an agent.
struct Lifespan {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t length() const { return last - first + 1; }
  bool contains(std::size_t t) const { return first <= t && t <= last; }
};

class TrajectoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time-ordered scenes with a constant period. Immutable once built.
class Trace {
 public:
  Trace() = default;
  Trace(std::shared_ptr<const MapModel> map, double dt, std::vector<Scene> scenes,
        std::vector<std::string> warnings = {});

  const MapModel& map() const { return *map_; }
  std::shared_ptr<const MapModel> map_ptr() const { return map_; }
  double dt() const { return dt_; }
  const std::vector<Scene>& scenes() const { return scenes_; }
  std::size_t size() const { return scenes_.size(); }
  bool empty() const { return scenes_.empty(); }
  const Scene& scene(std::size_t t) const { return scenes_.at(t); }

  /// Agents in id order.
  std::vector<AgentId> agents() const;
  const std::map<AgentId, Lifespan>& lifespans() const { return lifespans_; }
  const Lifespan& lifespan(AgentId id) const;

  /// Ingestion diagnostics that did not abort loading.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::shared_ptr<const MapModel> map_;
  double dt_ = 0.1;
  std::vector<Scene> scenes_;
  std::map<AgentId, Lifespan> lifespans_;
  std::vector<std::string> warnings_;
};

/// One recorded row before lane assignment.
struct RawSample {
  AgentId id = 0;
  std::int64_t frame = 0;
  std::int64_t timestamp_ms = 0;
  double x = 0.0;
  double y = 0.0;
  std::optional<double> vx;
  std::optional<double> vy;
  double heading = 0.0;
  double length = 0.0;
  double width = 0.0;
  /// Where the row came from, for diagnostics ("file:line").
  std::string origin;
};

/*
 * Builds a trace from raw rows:
 *  - scenes cover every frame between the first and last recorded frame;
 *    the period is derived from the timestamps and must be constant;
 *  - speed comes from vx/vy when both are present, else from central
 *    differences of position (one-sided at the ends); acceleration is the
 *    same finite difference applied to speed;
 *  - lane and arc length come from MapModel::project_to_lane. An agent is
 *    kept for its first contiguous on-road run; later re-entries are
 *    dropped with a warning.
 * Throws TrajectoryError on duplicate or non-increasing frames per agent,
 * gaps in an agent's frames, or an irregular period.
 */
Trace build_trace(std::shared_ptr<const MapModel> map, std::vector<RawSample> samples);

/*
 * Gap along j's lane centerline between the bumper extents of i (projected
 * into j's lane frame) and j: positive means clear space, negative means
 * longitudinal overlap. Symmetric in its arguments on a shared straight
 * lane. Throws MapError if the lanes are on different carriageways.
 */
double longitudinal_gap(const AgentState& i, const AgentState& j, const MapModel& map);

/// Arc length of i's centre in j's lane frame.
double s_in_lane_of(const AgentState& i, const AgentState& j, const MapModel& map);

}  // namespace rulemon::world
