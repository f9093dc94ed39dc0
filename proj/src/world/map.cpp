#include "rulemon/world/map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rulemon::world {

std::string_view to_string(LaneType t) {
  switch (t) {
    case LaneType::Normal: return "normal";
    case LaneType::Diverging: return "diverging";
    case LaneType::Acceleration: return "acceleration";
    case LaneType::Deceleration: return "deceleration";
  }
  return "?";
}

std::optional<LaneType> lane_type_from_string(std::string_view s) {
  for (auto t : {LaneType::Normal, LaneType::Diverging, LaneType::Acceleration, LaneType::Deceleration}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

MapModel::MapModel(std::vector<Lane> lanes, bool built_up, bool motorway)
    : lanes_(std::move(lanes)), built_up_(built_up), motorway_(motorway) {
  by_id_order_.resize(lanes_.size());
  for (std::size_t i = 0; i < lanes_.size(); ++i) by_id_order_[i] = i;
  std::sort(by_id_order_.begin(), by_id_order_.end(),
            [&](std::size_t a, std::size_t b) { return lanes_[a].id < lanes_[b].id; });
  for (std::size_t i = 1; i < by_id_order_.size(); ++i) {
    if (lanes_[by_id_order_[i]].id == lanes_[by_id_order_[i - 1]].id) {
      throw MapError("duplicate lane id " + std::to_string(lanes_[by_id_order_[i]].id));
    }
  }
  for (const auto& l : lanes_) {
    const std::string name = "lane " + std::to_string(l.id);
    if (l.centerline.points().size() < 2) throw MapError(name + ": centerline needs at least two points");
    if (!(l.width > 0.0)) throw MapError(name + ": width must be positive");
    if (l.end_s && (*l.end_s < 0.0 || *l.end_s > l.centerline.length() + 1e-9)) {
      throw MapError(name + ": end_s outside the centerline");
    }
    if (l.merge_s && (*l.merge_s < 0.0 || *l.merge_s > l.centerline.length() + 1e-9)) {
      throw MapError(name + ": merge_s outside the centerline");
    }
    if (l.left) {
      const Lane* o = find_lane(*l.left);
      if (!o) throw MapError(name + ": unknown left neighbour " + std::to_string(*l.left));
      if (o->right != l.id) throw MapError(name + ": left neighbour " + std::to_string(o->id) + " does not point back");
    }
    if (l.right) {
      const Lane* o = find_lane(*l.right);
      if (!o) throw MapError(name + ": unknown right neighbour " + std::to_string(*l.right));
      if (o->left != l.id) throw MapError(name + ": right neighbour " + std::to_string(o->id) + " does not point back");
    }
  }
}

const Lane* MapModel::find_lane(LaneId id) const {
  auto it = std::lower_bound(by_id_order_.begin(), by_id_order_.end(), id,
                             [&](std::size_t i, LaneId v) { return lanes_[i].id < v; });
  if (it == by_id_order_.end() || lanes_[*it].id != id) return nullptr;
  return &lanes_[*it];
}

const Lane& MapModel::lane(LaneId id) const {
  const Lane* l = find_lane(id);
  if (!l) throw MapError("unknown lane id " + std::to_string(id));
  return *l;
}

namespace {

template <typename Next>
std::vector<LaneId> chain(const MapModel& m, LaneId start, Next next) {
  std::vector<LaneId> out;
  std::optional<LaneId> cur = next(m.lane(start));
  while (cur && *cur != start && std::find(out.begin(), out.end(), *cur) == out.end()) {
    out.push_back(*cur);
    cur = next(m.lane(*cur));
  }
  return out;
}

}  // namespace

std::vector<LaneId> MapModel::left_chain(LaneId id) const {
  return chain(*this, id, [](const Lane& l) { return l.left; });
}

std::vector<LaneId> MapModel::right_chain(LaneId id) const {
  return chain(*this, id, [](const Lane& l) { return l.right; });
}

bool MapModel::same_carriageway(LaneId a, LaneId b) const {
  if (a == b) return find_lane(a) != nullptr;
  const auto l = left_chain(a);
  const auto r = right_chain(a);
  return std::find(l.begin(), l.end(), b) != l.end() || std::find(r.begin(), r.end(), b) != r.end();
}

std::optional<LaneProjection> MapModel::project_to_lane(Vec2 p, double heading, double tolerance) const {
  struct Candidate {
    LaneProjection proj;
    double abs_lateral;
    double heading_diff;
  };
  std::optional<Candidate> best;
  constexpr double kTie = 1e-9;
  for (std::size_t idx : by_id_order_) {
    const Lane& l = lanes_[idx];
    const auto pr = l.centerline.project(p);
    if (pr.overshoot > tolerance) continue;
    const double limit = l.width / 2.0 + tolerance;
    const double abs_lat = std::abs(pr.lateral);
    if (abs_lat > limit) continue;
    Candidate c{{l.id, pr.s, pr.lateral}, abs_lat, std::abs(wrap_angle(heading - pr.heading))};
    if (!best) {
      best = c;
      continue;
    }
    // Lanes are visited in id order, so an exact tie keeps the lower id.
    if (c.abs_lateral < best->abs_lateral - kTie) {
      best = c;
    } else if (std::abs(c.abs_lateral - best->abs_lateral) <= kTie && c.heading_diff < best->heading_diff - kTie) {
      best = c;
    }
  }
  if (!best) return std::nullopt;
  return best->proj;
}

bool MapModel::on_road(Vec2 p, LaneId carriageway) const {
  std::vector<LaneId> ids{carriageway};
  for (LaneId id : left_chain(carriageway)) ids.push_back(id);
  for (LaneId id : right_chain(carriageway)) ids.push_back(id);
  for (LaneId id : ids) {
    const Lane& l = lane(id);
    const auto pr = l.centerline.project(p);
    if (pr.overshoot > 0.0) continue;
    if (std::abs(pr.lateral) <= l.width / 2.0) return true;
  }
  return false;
}

namespace {

using nlohmann::json;

std::optional<double> optional_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw MapError(where + ": '" + key + "' must be a number or null");
  return j.at(key).get<double>();
}

std::optional<LaneId> optional_id(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number_integer()) throw MapError(where + ": '" + key + "' must be an integer or null");
  return j.at(key).get<LaneId>();
}

}  // namespace

MapModel parse_map_json(std::string_view text, std::string_view source) {
  const std::string src(source);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MapError(src + ": byte " + std::to_string(e.byte) + ": invalid JSON");
  }
  if (!doc.is_object()) throw MapError(src + ": top level must be an object");
  auto flag = [&](const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_boolean()) throw MapError(src + ": missing boolean '" + key + "'");
    return doc.at(key).get<bool>();
  };
  const bool built_up = flag("built_up");
  const bool motorway = flag("motorway");
  if (!doc.contains("lanes") || !doc.at("lanes").is_array()) throw MapError(src + ": missing array 'lanes'");
  std::vector<Lane> lanes;
  std::size_t index = 0;
  for (const auto& jl : doc.at("lanes")) {
    const std::string where = src + ": lanes[" + std::to_string(index++) + "]";
    if (!jl.is_object()) throw MapError(where + ": lane must be an object");
    Lane l;
    if (!jl.contains("id") || !jl.at("id").is_number_integer()) throw MapError(where + ": missing integer 'id'");
    l.id = jl.at("id").get<LaneId>();
    const std::string type = jl.value("type", std::string("normal"));
    const auto t = lane_type_from_string(type);
    if (!t) throw MapError(where + ": unknown lane type '" + type + "'");
    l.type = *t;
    if (auto w = optional_number(jl, "width", where)) l.width = *w;
    l.left = optional_id(jl, "left", where);
    l.right = optional_id(jl, "right", where);
    l.end_s = optional_number(jl, "end_s", where);
    l.merge_s = optional_number(jl, "merge_s", where);
    if (!jl.contains("centerline") || !jl.at("centerline").is_array()) {
      throw MapError(where + ": missing array 'centerline'");
    }
    std::vector<Vec2> pts;
    for (const auto& jp : jl.at("centerline")) {
      if (!jp.is_array() || jp.size() != 2 || !jp[0].is_number() || !jp[1].is_number()) {
        throw MapError(where + ": centerline points must be [x, y] pairs");
      }
      pts.push_back({jp[0].get<double>(), jp[1].get<double>()});
    }
    try {
      l.centerline = Polyline(std::move(pts));
    } catch (const std::invalid_argument& e) {
      throw MapError(where + ": " + e.what());
    }
    lanes.push_back(std::move(l));
  }
  try {
    return MapModel(std::move(lanes), built_up, motorway);
  } catch (const MapError& e) {
    throw MapError(src + ": " + e.what());
  }
}

MapModel load_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MapError(path + ": cannot open map file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map_json(buf.str(), path);
}

std::string map_to_json(const MapModel& map) {
  json doc;
  doc["built_up"] = map.built_up();
  doc["motorway"] = map.motorway();
  doc["lanes"] = json::array();
  for (const auto& l : map.lanes()) {
    json jl;
    jl["id"] = l.id;
    jl["type"] = std::string(to_string(l.type));
    jl["width"] = l.width;
    jl["left"] = l.left ? json(*l.left) : json(nullptr);
    jl["right"] = l.right ? json(*l.right) : json(nullptr);
    jl["end_s"] = l.end_s ? json(*l.end_s) : json(nullptr);
    jl["merge_s"] = l.merge_s ? json(*l.merge_s) : json(nullptr);
    jl["centerline"] = json::array();
    for (const auto& p : l.centerline.points()) jl["centerline"].push_back({p.x, p.y});
    doc["lanes"].push_back(std::move(jl));
  }
  return doc.dump(2) + "\n";
}

}  // namespace rulemon::world
