#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rulemon/world/trace.hpp"

namespace rulemon::world {

enum class TrajectoryFormat { Native, Interaction };

std::optional<TrajectoryFormat> trajectory_format_from_string(std::string_view s);

/*
 * Native columns:       track_id,frame,timestamp_ms,x,y,vx,vy,psi_rad,length,width
 * INTERACTION columns:  track_id,frame_id,timestamp_ms,agent_type,x,y,vx,vy,psi_rad,length,width
 *
 * Columns are matched by header name in any order; vx/vy may be missing or
 * empty. INTERACTION rows whose agent_type is not "car" are skipped.
 * Errors carry "<source>:<line>:".
 */
std::vector<RawSample> parse_trajectory_csv(std::string_view text, TrajectoryFormat format,
                                            std::string_view source = "<trajectories>");

Trace load_trajectories(const std::string& path, std::shared_ptr<const MapModel> map,
                        TrajectoryFormat format = TrajectoryFormat::Native);

/// Native CSV of every agent state; frame numbers are scene indices.
std::string write_native_csv(const Trace& trace);

}  // namespace rulemon::world
