#pragma once

#include <optional>
#include <string>

#include "rulemon/engine/engine.hpp"

namespace rulemon::engine {

/*
 * {"<rule>": {"flagged_agents": [...], "once_per_agent": f, "per_time_total": f,
 *             "per_time_premise": f | null,
 *             "violations": [{"tuple": "3:7", "frames": [...], "verdict_frame": n | null}]}}
 * Rules appear in run order. `frames` are the scenes violated pointwise;
 * `verdict_frame` is where the monitor's violated verdict became final.
 */
std::string report_json(const ViolationReport& report);

/// `rule,metric,value`; an undefined metric is written as NA. A non-empty
/// `header` is written first as a `#` comment line.
std::string metrics_csv(const ViolationReport& report, const std::optional<std::string>& header = std::nullopt);

/// `rule,tuple,frame`, one row per pointwise violation.
std::string violations_csv(const ViolationReport& report, const std::optional<std::string>& header = std::nullopt);

}  // namespace rulemon::engine
