#include "rulemon/world/trace.hpp"

#include <algorithm>
#include <cmath>

namespace rulemon::world {

const AgentState* Scene::find(AgentId id) const {
  auto it = agents.find(id);
  return it == agents.end() ? nullptr : &it->second;
}

Trace::Trace(std::shared_ptr<const MapModel> map, double dt, std::vector<Scene> scenes,
             std::vector<std::string> warnings)
    : map_(std::move(map)), dt_(dt), scenes_(std::move(scenes)), warnings_(std::move(warnings)) {
  if (!map_) throw TrajectoryError("trace needs a map");
  if (!(dt_ > 0.0)) throw TrajectoryError("trace period must be positive");
  for (std::size_t t = 0; t < scenes_.size(); ++t) {
    Scene& sc = scenes_[t];
    sc.index = t;
    if (t > 0 && !(sc.time > scenes_[t - 1].time)) throw TrajectoryError("scene times must strictly increase");
    for (const auto& [id, st] : sc.agents) {
      if (st.id != id) throw TrajectoryError("scene " + std::to_string(t) + ": agent key/id mismatch");
      if (!(st.length > 0.0) || !(st.width > 0.0)) {
        throw TrajectoryError("agent " + std::to_string(id) + ": length and width must be positive");
      }
      if (!map_->find_lane(st.lane)) {
        throw TrajectoryError("agent " + std::to_string(id) + ": unknown lane " + std::to_string(st.lane));
      }
      auto [it, inserted] = lifespans_.try_emplace(id, Lifespan{t, t});
      if (!inserted) {
        if (it->second.last + 1 != t) {
          throw TrajectoryError("agent " + std::to_string(id) + ": gap between scenes " +
                                std::to_string(it->second.last) + " and " + std::to_string(t));
        }
        it->second.last = t;
      }
    }
  }
}

std::vector<AgentId> Trace::agents() const {
  std::vector<AgentId> out;
  out.reserve(lifespans_.size());
  for (const auto& [id, _] : lifespans_) out.push_back(id);
  return out;
}

const Lifespan& Trace::lifespan(AgentId id) const {
  auto it = lifespans_.find(id);
  if (it == lifespans_.end()) throw TrajectoryError("unknown agent " + std::to_string(id));
  return it->second;
}

namespace {

// Central differences, one-sided at the ends; zero for a single sample.
std::vector<double> derivative(const std::vector<double>& v, double dt) {
  const std::size_t n = v.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (v[1] - v[0]) / dt;
  d[n - 1] = (v[n - 1] - v[n - 2]) / dt;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * dt);
  return d;
}

std::string where(const RawSample& s) { return s.origin.empty() ? std::string() : s.origin + ": "; }

}  // namespace

Trace build_trace(std::shared_ptr<const MapModel> map, std::vector<RawSample> samples) {
  if (!map) throw TrajectoryError("build_trace needs a map");
  if (samples.empty()) return Trace(std::move(map), 0.1, {});

  // Per-agent rows in file order.
  std::map<AgentId, std::vector<RawSample>> tracks;
  for (auto& s : samples) {
    auto& rows = tracks[s.id];
    if (!rows.empty()) {
      const RawSample& prev = rows.back();
      if (s.frame <= prev.frame || s.timestamp_ms <= prev.timestamp_ms) {
        throw TrajectoryError(where(s) + "agent " + std::to_string(s.id) +
                              ": non-monotonic frames or timestamps (frame " + std::to_string(s.frame) +
                              " after frame " + std::to_string(prev.frame) + ")");
      }
      if (s.frame != prev.frame + 1) {
        throw TrajectoryError(where(s) + "agent " + std::to_string(s.id) + ": gap between frames " +
                              std::to_string(prev.frame) + " and " + std::to_string(s.frame));
      }
    }
    if (!(s.length > 0.0) || !(s.width > 0.0)) {
      throw TrajectoryError(where(s) + "agent " + std::to_string(s.id) + ": length and width must be positive");
    }
    rows.push_back(std::move(s));
  }

  // Global frame range and a constant period from the timestamps.
  const RawSample* first = nullptr;
  std::int64_t max_frame = 0;
  for (const auto& [id, rows] : tracks) {
    if (!first || rows.front().frame < first->frame) first = &rows.front();
    max_frame = std::max(max_frame, rows.back().frame);
  }
  const std::int64_t f0 = first->frame;
  const double t0_ms = static_cast<double>(first->timestamp_ms);
  double dt = 0.0;
  for (const auto& [id, rows] : tracks) {
    for (const auto& r : rows) {
      if (r.frame != f0) {
        dt = (static_cast<double>(r.timestamp_ms) - t0_ms) / static_cast<double>(r.frame - f0) / 1000.0;
        break;
      }
    }
    if (dt != 0.0) break;
  }
  if (dt == 0.0 && max_frame != f0) throw TrajectoryError("cannot derive a positive period from the timestamps");
  if (max_frame == f0) dt = 0.1;
  if (!(dt > 0.0)) throw TrajectoryError("timestamps decrease with increasing frame number");
  for (const auto& [id, rows] : tracks) {
    for (const auto& r : rows) {
      const double expected = t0_ms + static_cast<double>(r.frame - f0) * dt * 1000.0;
      if (std::abs(static_cast<double>(r.timestamp_ms) - expected) > 0.5) {
        throw TrajectoryError(where(r) + "irregular period: frame " + std::to_string(r.frame) + " has timestamp " +
                              std::to_string(r.timestamp_ms) + " ms, expected " +
                              std::to_string(static_cast<long long>(std::llround(expected))) + " ms");
      }
    }
  }

  std::vector<Scene> scenes(static_cast<std::size_t>(max_frame - f0 + 1));
  for (std::size_t t = 0; t < scenes.size(); ++t) {
    scenes[t].index = t;
    scenes[t].time = t0_ms / 1000.0 + static_cast<double>(t) * dt;
  }
  std::vector<std::string> warnings;

  for (const auto& [id, rows] : tracks) {
    const std::size_t n = rows.size();
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = rows[i].x;
      ys[i] = rows[i].y;
    }
    const auto dx = derivative(xs, dt);
    const auto dy = derivative(ys, dt);
    std::vector<double> vx(n), vy(n), speed(n);
    for (std::size_t i = 0; i < n; ++i) {
      const bool measured = rows[i].vx.has_value() && rows[i].vy.has_value();
      vx[i] = measured ? *rows[i].vx : dx[i];
      vy[i] = measured ? *rows[i].vy : dy[i];
      speed[i] = std::hypot(vx[i], vy[i]);
    }
    const auto accel = derivative(speed, dt);

    std::vector<std::optional<LaneProjection>> proj(n);
    for (std::size_t i = 0; i < n; ++i) proj[i] = map->project_to_lane({xs[i], ys[i]}, rows[i].heading);
    std::size_t begin = 0;
    while (begin < n && !proj[begin]) ++begin;
    std::size_t end = begin;
    while (end < n && proj[end]) ++end;
    if (begin > 0) {
      warnings.push_back("agent " + std::to_string(id) + ": " + std::to_string(begin) +
                         " off-road rows before frame " +
                         std::to_string(begin < n ? rows[begin].frame : rows.back().frame) + " dropped");
    }
    if (begin == n) {
      warnings.push_back("agent " + std::to_string(id) + ": never on the road, dropped");
      continue;
    }
    if (end < n) {
      warnings.push_back("agent " + std::to_string(id) + ": left the road at frame " + std::to_string(rows[end].frame) +
                         "; " + std::to_string(n - end) + " later rows dropped");
    }
    for (std::size_t i = begin; i < end; ++i) {
      const RawSample& r = rows[i];
      AgentState st;
      st.id = id;
      st.time = static_cast<double>(r.timestamp_ms) / 1000.0;
      st.x = r.x;
      st.y = r.y;
      st.vx = vx[i];
      st.vy = vy[i];
      st.speed = speed[i];
      st.heading = r.heading;
      st.acceleration = accel[i];
      st.length = r.length;
      st.width = r.width;
      st.lane = proj[i]->lane;
      st.s = proj[i]->s;
      st.lateral = proj[i]->lateral;
      scenes[static_cast<std::size_t>(r.frame - f0)].agents.emplace(id, st);
    }
  }
  return Trace(std::move(map), dt, std::move(scenes), std::move(warnings));
}

double s_in_lane_of(const AgentState& i, const AgentState& j, const MapModel& map) {
  if (i.lane == j.lane) return i.s;
  if (!map.same_carriageway(i.lane, j.lane)) {
    throw MapError("agents " + std::to_string(i.id) + " and " + std::to_string(j.id) +
                   " are on different carriageways (lanes " + std::to_string(i.lane) + ", " +
                   std::to_string(j.lane) + ")");
  }
  // Past either end the lane frame is extended along the end segment.
  const Polyline& line = map.lane(j.lane).centerline;
  const auto pr = line.project(i.position());
  if (pr.overshoot > 0.0) return pr.s <= 0.0 ? -pr.overshoot : line.length() + pr.overshoot;
  return pr.s;
}

double longitudinal_gap(const AgentState& i, const AgentState& j, const MapModel& map) {
  const double si = s_in_lane_of(i, j, map);
  const double i_front = si + i.length / 2.0;
  const double i_rear = si - i.length / 2.0;
  return std::max(i_rear - j.s_front(), j.s_rear() - i_front);
}

}  // namespace rulemon::world
