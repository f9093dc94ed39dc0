#include "rulemon/engine/report_io.hpp"

#include <charconv>

#include <json.hpp>

namespace rulemon::engine {

namespace {

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool reportable(const InstanceResult& r) {
  return !r.error && (r.verdict == monitor::VerdictValue::Violated || !r.violation_frames.empty());
}

std::string with_header(const std::optional<std::string>& header) {
  return header && !header->empty() ? "# " + *header + "\n" : std::string();
}

}  // namespace

std::string report_json(const ViolationReport& report) {
  using nlohmann::ordered_json;
  ordered_json root = ordered_json::object();
  for (const auto& rule : report.rules) {
    ordered_json entry;
    entry["flagged_agents"] = rule.flagged;
    entry["once_per_agent"] = rule.once_per_agent();
    entry["per_time_total"] = rule.per_time_total();
    const auto premise = rule.per_time_premise();
    entry["per_time_premise"] = premise ? ordered_json(*premise) : ordered_json(nullptr);
    ordered_json violations = ordered_json::array();
    for (std::size_t n : rule.instances) {
      const InstanceResult& r = report.instances[n];
      if (!reportable(r)) continue;
      ordered_json v;
      v["tuple"] = tuple_string(r.tuple);
      v["frames"] = r.violation_frames;
      v["verdict_frame"] = r.violated_at ? ordered_json(*r.violated_at) : ordered_json(nullptr);
      violations.push_back(std::move(v));
    }
    entry["violations"] = std::move(violations);
    root[rule.name] = std::move(entry);
  }
  return root.dump(2) + "\n";
}

std::string metrics_csv(const ViolationReport& report, const std::optional<std::string>& header) {
  std::string out = with_header(header) + "rule,metric,value\n";
  for (const auto& rule : report.rules) {
    const auto premise = rule.per_time_premise();
    out += rule.name + ",once_per_agent," + number(rule.once_per_agent()) + "\n";
    out += rule.name + ",per_time_total," + number(rule.per_time_total()) + "\n";
    out += rule.name + ",per_time_premise," + (premise ? number(*premise) : "NA") + "\n";
  }
  return out;
}

std::string violations_csv(const ViolationReport& report, const std::optional<std::string>& header) {
  std::string out = with_header(header) + "rule,tuple,frame\n";
  for (const auto& rule : report.rules) {
    for (std::size_t n : rule.instances) {
      const InstanceResult& r = report.instances[n];
      if (r.error) continue;
      for (std::size_t f : r.violation_frames) out += rule.name + "," + tuple_string(r.tuple) + "," + std::to_string(f) + "\n";
    }
  }
  return out;
}

}  // namespace rulemon::engine
