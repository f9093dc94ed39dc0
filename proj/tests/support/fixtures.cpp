#include "support/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace rulemon::testing {

using namespace world;

std::vector<Lane> straight_lanes(int count, double width, double length) {
  std::vector<Lane> lanes;
  for (int k = 1; k <= count; ++k) {
    Lane l;
    l.id = k;
    const double y = (k - 1) * width;
    l.centerline = Polyline({{0.0, y}, {length, y}});
    l.width = width;
    if (k < count) l.left = k + 1;
    if (k > 1) l.right = k - 1;
    lanes.push_back(std::move(l));
  }
  return lanes;
}

std::shared_ptr<const MapModel> make_map(std::vector<Lane> lanes, bool built_up, bool motorway) {
  return std::make_shared<const MapModel>(std::move(lanes), built_up, motorway);
}

RawSample sample(AgentId id, std::int64_t frame, double dt, double x, double y, double heading, double length,
                 double width) {
  RawSample s;
  s.id = id;
  s.frame = frame;
  s.timestamp_ms = std::llround(static_cast<double>(frame) * dt * 1000.0);
  s.x = x;
  s.y = y;
  s.heading = heading;
  s.length = length;
  s.width = width;
  return s;
}

std::vector<RawSample> track(AgentId id, std::int64_t first, std::int64_t last, double dt,
                             const std::function<Vec2(double)>& pos, double length, double width) {
  std::vector<RawSample> out;
  for (std::int64_t f = first; f <= last; ++f) {
    const double t = static_cast<double>(f) * dt;
    const Vec2 p = pos(t);
    // Heading from the path direction over a small step.
    const Vec2 q = pos(t + 1e-3);
    const double heading = norm(q - p) > 1e-12 ? std::atan2(q.y - p.y, q.x - p.x) : 0.0;
    out.push_back(sample(id, f, dt, p.x, p.y, heading, length, width));
  }
  return out;
}

AgentState place(const MapModel& map, AgentId id, double x, double y, double speed, double length, double width) {
  AgentState a;
  a.id = id;
  a.x = x;
  a.y = y;
  a.vx = speed;
  a.speed = speed;
  a.length = length;
  a.width = width;
  const auto p = map.project_to_lane({x, y}, 0.0);
  if (!p) throw std::invalid_argument("fixture agent placed off the road");
  a.lane = p->lane;
  a.s = p->s;
  a.lateral = p->lateral;
  return a;
}

Scene scene_of(const std::vector<AgentState>& agents, std::size_t index) {
  Scene s;
  s.index = index;
  for (const auto& a : agents) s.agents.emplace(a.id, a);
  return s;
}

}  // namespace rulemon::testing
