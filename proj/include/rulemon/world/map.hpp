#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rulemon/world/geometry.hpp"

namespace rulemon::world {

using LaneId = std::int64_t;

enum class LaneType { Normal, Diverging, Acceleration, Deceleration };

std::string_view to_string(LaneType t);
std::optional<LaneType> lane_type_from_string(std::string_view s);

struct Lane {
  LaneId id = 0;
  Polyline centerline;
  double width = 3.5;
  LaneType type = LaneType::Normal;
  std::optional<LaneId> left;
  std::optional<LaneId> right;
  /// Arc length at which the lane ends; empty if it continues.
  std::optional<double> end_s;
  /// Arc length past which an agent on this lane counts as merged.
  std::optional<double> merge_s;
};

class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result of assigning a point to a lane.
struct LaneProjection {
  LaneId lane = 0;
  double s = 0.0;
  double lateral = 0.0;
};

class MapModel {
 public:
  MapModel() = default;
  /// Validates ids, adjacency symmetry and lane extents; throws MapError.
  MapModel(std::vector<Lane> lanes, bool built_up, bool motorway);

  const std::vector<Lane>& lanes() const { return lanes_; }
  bool built_up() const { return built_up_; }
  bool motorway() const { return motorway_; }

  /// Throws MapError for an unknown id.
  const Lane& lane(LaneId id) const;
  const Lane* find_lane(LaneId id) const;

  /// Lanes reachable from `id` by repeatedly following the left (right)
  /// neighbour, nearest first.
  std::vector<LaneId> left_chain(LaneId id) const;
  std::vector<LaneId> right_chain(LaneId id) const;

  /// True if both lanes belong to the same set of laterally adjacent lanes.
  bool same_carriageway(LaneId a, LaneId b) const;

  /// Lane whose centerline is closest to `p` among those within half a lane
  /// width plus `tolerance`; ties go to the smaller heading difference, then
  /// the lower id. Empty if the point is off the road.
  std::optional<LaneProjection> project_to_lane(Vec2 p, double heading, double tolerance = 0.5) const;

  /// True if `p` lies on the paved area of some lane of `carriageway`'s
  /// carriageway (within half a lane width, inside the lane's extent).
  bool on_road(Vec2 p, LaneId carriageway) const;

 private:
  std::vector<Lane> lanes_;
  std::vector<std::size_t> by_id_order_;
  bool built_up_ = false;
  bool motorway_ = true;
};

/// Parses the JSON map format; errors name `source`.
MapModel parse_map_json(std::string_view text, std::string_view source = "<map>");
MapModel load_map(const std::string& path);
std::string map_to_json(const MapModel& map);

}  // namespace rulemon::world
