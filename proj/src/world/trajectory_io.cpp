#include "rulemon/world/trajectory_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace rulemon::world {

std::optional<TrajectoryFormat> trajectory_format_from_string(std::string_view s) {
  if (s == "native" || s == "native-csv") return TrajectoryFormat::Native;
  if (s == "interaction" || s == "interaction-csv") return TrajectoryFormat::Interaction;
  return std::nullopt;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view cell = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '"')) cell.remove_prefix(1);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '"')) cell.remove_suffix(1);
    out.push_back(cell);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<RawSample> parse_trajectory_csv(std::string_view text, TrajectoryFormat format, std::string_view source) {
  const std::string src(source);
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) nl = text.size();
      std::string_view line = text.substr(start, nl - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      start = nl + 1;
    }
  }
  if (lines.empty() || lines[0].empty()) throw TrajectoryError(src + ":1: missing header row");

  const auto header = split(lines[0]);
  std::map<std::string, std::size_t, std::less<>> column;
  for (std::size_t c = 0; c < header.size(); ++c) column.emplace(std::string(header[c]), c);
  const bool interaction = format == TrajectoryFormat::Interaction;
  const char* frame_name = interaction ? "frame_id" : "frame";
  std::vector<const char*> required{"track_id", frame_name, "timestamp_ms", "x", "y", "psi_rad", "length", "width"};
  if (interaction) required.push_back("agent_type");
  for (const char* name : required) {
    if (!column.count(name)) throw TrajectoryError(src + ":1: missing column '" + std::string(name) + "'");
  }
  auto col = [&](const char* name) -> std::optional<std::size_t> {
    auto it = column.find(name);
    if (it == column.end()) return std::nullopt;
    return it->second;
  };
  const auto c_vx = col("vx");
  const auto c_vy = col("vy");

  std::vector<RawSample> out;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    const std::string origin = src + ":" + std::to_string(ln + 1);
    const auto cells = split(lines[ln]);
    if (cells.size() != header.size()) {
      throw TrajectoryError(origin + ": expected " + std::to_string(header.size()) + " fields, found " +
                            std::to_string(cells.size()));
    }
    auto number = [&](std::size_t c) {
      double v = 0.0;
      const auto cell = cells[c];
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw TrajectoryError(origin + ": column '" + std::string(header[c]) + "': invalid number '" +
                              std::string(cell) + "'");
      }
      return v;
    };
    auto integer = [&](std::size_t c) {
      const double v = number(c);
      if (v != std::floor(v)) {
        throw TrajectoryError(origin + ": column '" + std::string(header[c]) + "': expected an integer");
      }
      return static_cast<std::int64_t>(v);
    };
    if (interaction && cells[column.at("agent_type")] != "car") continue;
    RawSample s;
    s.origin = origin;
    s.id = integer(column.at("track_id"));
    s.frame = integer(column.at(frame_name));
    s.timestamp_ms = integer(column.at("timestamp_ms"));
    s.x = number(column.at("x"));
    s.y = number(column.at("y"));
    if (c_vx && c_vy && !cells[*c_vx].empty() && !cells[*c_vy].empty()) {
      s.vx = number(*c_vx);
      s.vy = number(*c_vy);
    }
    s.heading = number(column.at("psi_rad"));
    s.length = number(column.at("length"));
    s.width = number(column.at("width"));
    out.push_back(std::move(s));
  }
  return out;
}

Trace load_trajectories(const std::string& path, std::shared_ptr<const MapModel> map, TrajectoryFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TrajectoryError(path + ": cannot open trajectory file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return build_trace(std::move(map), parse_trajectory_csv(buf.str(), format, path));
}

std::string write_native_csv(const Trace& trace) {
  std::ostringstream out;
  out << "track_id,frame,timestamp_ms,x,y,vx,vy,psi_rad,length,width\n";
  for (const auto& scene : trace.scenes()) {
    for (const auto& [id, st] : scene.agents) {
      out << id << ',' << scene.index << ',' << std::llround(st.time * 1000.0) << ',' << fmt(st.x) << ','
          << fmt(st.y) << ',' << fmt(st.vx) << ',' << fmt(st.vy) << ',' << fmt(st.heading) << ','
          << fmt(st.length) << ',' << fmt(st.width) << '\n';
    }
  }
  return out.str();
}

}  // namespace rulemon::world
