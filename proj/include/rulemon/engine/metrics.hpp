#pragma once

#include <vector>

#include "rulemon/engine/engine.hpp"

namespace rulemon::engine {

/*
 * Aggregates instance results per rule. Per-time counts are taken over
 * (ego, scene) pairs so that an ego with several partners contributes at
 * most one step per scene; errored instances are left out.
 */
std::vector<RuleSummary> summarize(const Trace& trace, const std::vector<CompiledRule>& rules,
                                   const std::vector<InstanceResult>& results, AgentDenominator denominator);

}  // namespace rulemon::engine
