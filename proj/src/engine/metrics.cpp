#include "rulemon/engine/metrics.hpp"

namespace rulemon::engine {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double RuleSummary::once_per_agent() const { return ratio(flagged.size(), agent_count); }

double RuleSummary::per_time_total() const { return ratio(violation_steps, lifespan_steps); }

std::optional<double> RuleSummary::per_time_premise() const {
  if (premise_steps == 0) return std::nullopt;
  return ratio(violation_steps, premise_steps);
}

std::vector<RuleSummary> summarize(const Trace& trace, const std::vector<CompiledRule>& rules,
                                   const std::vector<InstanceResult>& results, AgentDenominator denominator) {
  std::vector<RuleSummary> out(rules.size());
  // Per rule and ego: scene flags relative to the ego's first scene.
  std::vector<std::map<AgentId, std::vector<char>>> premise(rules.size()), violation(rules.size());
  std::vector<std::set<AgentId>> egos(rules.size());

  for (std::size_t n = 0; n < results.size(); ++n) {
    const InstanceResult& r = results[n];
    RuleSummary& s = out.at(r.rule);
    s.instances.push_back(n);
    if (r.error) continue;
    const AgentId ego = r.tuple.front();
    egos[r.rule].insert(ego);
    if (r.verdict == monitor::VerdictValue::Violated) s.flagged.insert(ego);
    const Lifespan& life = trace.lifespan(ego);
    auto& p = premise[r.rule][ego];
    auto& v = violation[r.rule][ego];
    p.resize(life.length(), 0);
    v.resize(life.length(), 0);
    for (std::size_t t : r.premise_frames) p[t - life.first] = 1;
    for (std::size_t t : r.violation_frames) v[t - life.first] = 1;
  }

  for (std::size_t r = 0; r < rules.size(); ++r) {
    RuleSummary& s = out[r];
    s.name = rules[r].rule.name;
    const auto count = [&](AgentId id) {
      ++s.agent_count;
      s.lifespan_steps += trace.lifespan(id).length();
    };
    if (denominator == AgentDenominator::AllAgents) {
      for (const auto& [id, life] : trace.lifespans()) count(id);
    } else {
      for (AgentId id : egos[r]) count(id);
    }
    for (const auto& [id, flags] : premise[r]) {
      for (char f : flags) s.premise_steps += f;
    }
    for (const auto& [id, flags] : violation[r]) {
      for (char f : flags) s.violation_steps += f;
    }
  }
  return out;
}

}  // namespace rulemon::engine
