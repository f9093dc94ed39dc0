#include "rulemon/engine/builtin_rules.hpp"

namespace rulemon::engine {

std::string_view builtin_rule_text() {
  static constexpr std::string_view kText = R"(# Highway rules in premise/conclusion form: G (premise -> conclusion).
# Slot i is the ego vehicle, j and k are the other participants.

rule no_right_passing arity 2
premise: !diverging_lane_i & !acceleration_lane_i & !dense_i & (!built_up_i | motorway_i)
conclusion: !(behind_ij & X (behind_ij U right_ij U front_ij))

rule safe_lane_change arity 1
premise: lane_change_i
conclusion: sd_rear_i

rule speed_advantage arity 2
premise: behind_ij & X (behind_ij U left_ij U front_ij)
conclusion: speed_diff_ij U front_ij

rule safe_distance arity 1
premise: true
conclusion: sd_front_i

rule being_overtaken arity 2
param delta_near = 3
premise: right_ij & near_ij
conclusion: !accelerate_i

rule zipper_merge arity 3
param delta_near = 5
premise: left_ik & !front_ik & near_ik & lane_end_k & in_direct_front_ij & !merged_i & (in_direct_front_ij | merged_j) U merged_i
conclusion: G (merged_i & merged_j -> !in_direct_front_ij)
)";
  return kText;
}

std::vector<ltl::Rule> builtin_rules() {
  static const std::vector<ltl::Rule> kRules = ltl::parse_rule_library(builtin_rule_text(), "<builtin>");
  return kRules;
}

}  // namespace rulemon::engine
