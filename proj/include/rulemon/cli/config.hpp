#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rulemon/engine/engine.hpp"
#include "rulemon/world/trajectory_io.hpp"

namespace rulemon::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
 * Settings of a `check` run. The config file is a JSON object with the
 * same fields (all optional):
 *
 *   {"map": "m.json", "trajectories": "t.csv", "format": "native",
 *    "rules": ["all"], "rule_file": null,
 *    "params": {"rho_dense": 20}, "rule_params": {"zipper_merge": {"delta_near": 5}},
 *    "dt": 0.1, "output_dir": "out", "workers": 4,
 *    "report_formats": ["json", "csv"], "agent_denominator": "all"}
 */
struct RunConfig {
  std::string map_path;
  std::string trajectory_path;
  world::TrajectoryFormat format = world::TrajectoryFormat::Native;
  std::vector<std::string> rules{"all"};
  /// Rule library replacing the built-in rules.
  std::string rule_file;
  std::map<std::string, double> params;
  std::map<std::string, std::map<std::string, double>> rule_params;
  /// Expected sampling period; the trajectories must match it.
  std::optional<double> dt;
  std::string output_dir = ".";
  std::size_t workers = 1;
  std::vector<std::string> report_formats{"json", "csv"};
  engine::AgentDenominator denominator = engine::AgentDenominator::AllAgents;
  bool prune = true;
};

/// Parses a config file; unknown keys and ill-typed values are errors
/// naming `source`.
RunConfig parse_config_json(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::string& path);

/// Global predicate parameters with the overrides applied; throws
/// ConfigError for an unknown name or invalid value.
predicates::PredicateParams effective_params(const RunConfig& config);

/// Parses `key=value` or `rule.key=value` into the config.
void apply_param_override(RunConfig& config, std::string_view assignment);

/// Selected rules with their scoped overrides merged in. Unknown rule
/// names (in the selection or in rule_params) throw ConfigError.
std::vector<ltl::Rule> resolve_rules(const RunConfig& config);

std::size_t parse_worker_count(std::string_view text, std::string_view source);

}  // namespace rulemon::cli
