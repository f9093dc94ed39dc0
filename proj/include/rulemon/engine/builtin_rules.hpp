#pragma once

#include <string_view>
#include <vector>

#include "rulemon/ltl/rule.hpp"

namespace rulemon::engine {

/// Rule library text of the six highway rules, in rule-file format.
std::string_view builtin_rule_text();

/// no_right_passing, safe_lane_change, speed_advantage, safe_distance,
/// being_overtaken, zipper_merge, in that order.
std::vector<ltl::Rule> builtin_rules();

}  // namespace rulemon::engine
