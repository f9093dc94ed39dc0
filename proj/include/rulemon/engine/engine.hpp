#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rulemon/ltl/rule.hpp"
#include "rulemon/monitor/automaton.hpp"
#include "rulemon/predicates/labeler.hpp"
#include "rulemon/predicates/params.hpp"
#include "rulemon/predicates/proposition.hpp"
#include "rulemon/world/trace.hpp"

namespace rulemon::engine {

using predicates::PredicateParams;
using world::AgentId;
using world::Lifespan;
using world::Trace;

/// A rule ready to run: its monitor, resolved propositions and effective
/// parameters (global values with the rule's overrides applied).
struct CompiledRule {
  ltl::Rule rule;
  monitor::MonitorAutomaton monitor;
  std::vector<predicates::PropositionRef> propositions;
  PredicateParams params;
  /// Premise is the constant true.
  bool unconditional = false;
};

struct RuleInstance {
  std::size_t rule = 0;
  std::vector<AgentId> tuple;
  /// Joint lifespan of the tuple.
  Lifespan active;
};

struct InstanceResult {
  std::size_t rule = 0;
  std::vector<AgentId> tuple;
  std::size_t first = 0;
  /// Monitor verdict; partner exit ends the trace.
  monitor::VerdictValue verdict = monitor::VerdictValue::Inconclusive;
  /// Scene index at which the violated verdict became final.
  std::optional<std::size_t> violated_at;
  /// Scene indices with the premise holding on the suffix, and those where
  /// additionally the conclusion does not.
  std::vector<std::size_t> premise_frames;
  std::vector<std::size_t> violation_frames;
  /// Whether the direct evaluation of G(premise -> conclusion) agrees with
  /// the monitor.
  bool oracle_agrees = true;
  /// Set if the instance could not be evaluated; the other fields are then
  /// meaningless.
  std::optional<std::string> error;
};

enum class AgentDenominator { AllAgents, InstantiatedAgents };

struct RuleSummary {
  std::string name;
  /// Slot-i agents of instances whose monitor reported a violation.
  std::set<AgentId> flagged;
  std::size_t agent_count = 0;
  /// Sums over agents of (ego, scene) pairs: all lifespan scenes, scenes
  /// where some instance of that ego had an active premise, and scenes where
  /// some instance was violated pointwise.
  std::size_t lifespan_steps = 0;
  std::size_t premise_steps = 0;
  std::size_t violation_steps = 0;
  /// Indices into ViolationReport::instances, in instance order.
  std::vector<std::size_t> instances;

  double once_per_agent() const;
  double per_time_total() const;
  /// Empty when the premise was never active.
  std::optional<double> per_time_premise() const;
};

struct ViolationReport {
  std::size_t trace_length = 0;
  std::map<AgentId, Lifespan> lifespans;
  std::vector<RuleSummary> rules;
  std::vector<InstanceResult> instances;
  std::vector<std::string> diagnostics;
};

struct EngineOptions {
  PredicateParams params;
  std::size_t workers = 1;
  /// Skip tuples that cannot trigger a rule (see instantiate()).
  bool prune = true;
  bool minimize = true;
  AgentDenominator denominator = AgentDenominator::AllAgents;
  monitor::CompileOptions compile;
};

class Engine {
 public:
  /// Validates and compiles the rules; throws std::invalid_argument for an
  /// invalid rule or unknown proposition, MonitorError if a monitor exceeds
  /// the caps.
  Engine(std::vector<ltl::Rule> rules, EngineOptions options);

  const std::vector<CompiledRule>& rules() const { return rules_; }
  const EngineOptions& options() const { return options_; }

  /*
   * Agent tuples per rule, in rule order then lexicographic tuple order:
   *  - arity 1: every agent;
   *  - arity 2: ordered pairs that coexist and, when pruning, come within
   *    2 * rho_dense of each other (centre distance) at some shared scene;
   *  - arity 3: when pruning, (i, j, k) such that at some shared scene j is
   *    i's predecessor and k is on an ending lane to the right of i's lane
   *    within 2 * rho_dense; otherwise all coexisting ordered triples.
   */
  std::vector<RuleInstance> instantiate(const Trace& trace, const predicates::Labeler& labeler) const;

  ViolationReport run(const Trace& trace) const;
  ViolationReport run(const Trace& trace, const predicates::Labeler& labeler,
                      const std::vector<RuleInstance>& instances) const;

  /// Evaluates one instance; never throws (errors go into the result).
  InstanceResult evaluate(const predicates::Labeler& labeler, const RuleInstance& instance) const;

 private:
  EngineOptions options_;
  std::vector<CompiledRule> rules_;
};

/// "3:7" for the tuple (3, 7).
std::string tuple_string(const std::vector<AgentId>& tuple);

/// Names of the rules in `rules`; throws std::invalid_argument naming the
/// first unknown entry of `selection`. "all" selects every rule.
std::vector<ltl::Rule> select_rules(const std::vector<ltl::Rule>& rules, const std::vector<std::string>& selection);

}  // namespace rulemon::engine
