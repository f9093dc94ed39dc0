#include "rulemon/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rulemon/engine/builtin_rules.hpp"

namespace rulemon::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ConfigError(where + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::map<std::string, double> number_map(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object of numbers");
  std::map<std::string, double> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ConfigError(where + "." + k + ": expected a number");
    out[k] = v.get<double>();
  }
  return out;
}

void check_param_names(const std::map<std::string, double>& params, const std::string& where) {
  predicates::PredicateParams probe;
  for (const auto& [k, v] : params) {
    try {
      probe.set(k, v);
    } catch (const predicates::ParamError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
}

}  // namespace

RunConfig parse_config_json(std::string_view text, std::string_view source) {
  const std::string src(source);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(src + ": byte " + std::to_string(e.byte) + ": invalid JSON");
  }
  if (!root.is_object()) throw ConfigError(src + ": expected a JSON object");

  RunConfig c;
  const auto string_field = [&](const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError(src + ": '" + key + "': expected a string");
    return v.get<std::string>();
  };
  for (const auto& [key, v] : root.items()) {
    const std::string where = src + ": '" + key + "'";
    if (key == "map") c.map_path = string_field(v, key);
    else if (key == "trajectories") c.trajectory_path = string_field(v, key);
    else if (key == "format") {
      const auto f = world::trajectory_format_from_string(string_field(v, key));
      if (!f) throw ConfigError(where + ": unknown trajectory format '" + v.get<std::string>() + "'");
      c.format = *f;
    } else if (key == "rules") c.rules = string_list(v, where);
    else if (key == "rule_file") c.rule_file = v.is_null() ? std::string() : string_field(v, key);
    else if (key == "params") {
      c.params = number_map(v, where);
      check_param_names(c.params, where);
    } else if (key == "rule_params") {
      if (!v.is_object()) throw ConfigError(where + ": expected an object");
      for (const auto& [rule, params] : v.items()) {
        c.rule_params[rule] = number_map(params, where + "." + rule);
        check_param_names(c.rule_params[rule], where + "." + rule);
      }
    } else if (key == "dt") {
      if (v.is_null()) continue;
      if (!v.is_number() || !(v.get<double>() > 0.0)) throw ConfigError(where + ": expected a positive number");
      c.dt = v.get<double>();
    } else if (key == "output_dir") c.output_dir = string_field(v, key);
    else if (key == "workers") {
      if (!v.is_number_integer() || v.get<long long>() < 1) throw ConfigError(where + ": expected a positive integer");
      c.workers = v.get<std::size_t>();
    } else if (key == "report_formats") {
      c.report_formats = string_list(v, where);
      for (const auto& f : c.report_formats) {
        if (f != "json" && f != "csv") throw ConfigError(where + ": unknown report format '" + f + "'");
      }
    } else if (key == "agent_denominator") {
      const auto d = string_field(v, key);
      if (d == "all") c.denominator = engine::AgentDenominator::AllAgents;
      else if (d == "instantiated") c.denominator = engine::AgentDenominator::InstantiatedAgents;
      else throw ConfigError(where + ": expected \"all\" or \"instantiated\"");
    } else if (key == "prune") {
      if (!v.is_boolean()) throw ConfigError(where + ": expected a boolean");
      c.prune = v.get<bool>();
    } else {
      throw ConfigError(src + ": unknown key '" + key + "'");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) { return parse_config_json(read_file(path), path); }

predicates::PredicateParams effective_params(const RunConfig& config) {
  try {
    return predicates::PredicateParams{}.with(config.params);
  } catch (const predicates::ParamError& e) {
    throw ConfigError(std::string("parameters: ") + e.what());
  }
}

void apply_param_override(RunConfig& config, std::string_view assignment) {
  const std::string text(assignment);
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ConfigError("--param '" + text + "': expected key=value");
  std::string key(assignment.substr(0, eq));
  const std::string_view value_text = assignment.substr(eq + 1);
  double value = 0.0;
  const auto res = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
  if (res.ec != std::errc() || res.ptr != value_text.data() + value_text.size()) {
    throw ConfigError("--param '" + text + "': invalid number '" + std::string(value_text) + "'");
  }
  const auto dot = key.find('.');
  std::map<std::string, double> one{{dot == std::string::npos ? key : key.substr(dot + 1), value}};
  check_param_names(one, "--param '" + text + "'");
  if (dot == std::string::npos) config.params[key] = value;
  else config.rule_params[key.substr(0, dot)][key.substr(dot + 1)] = value;
}

std::vector<ltl::Rule> resolve_rules(const RunConfig& config) {
  std::vector<ltl::Rule> library;
  if (config.rule_file.empty()) {
    library = engine::builtin_rules();
  } else {
    try {
      library = ltl::parse_rule_library(read_file(config.rule_file), config.rule_file);
    } catch (const ltl::RuleFileError& e) {
      throw ConfigError(e.what());
    }
  }
  for (const auto& [name, params] : config.rule_params) {
    auto it = std::find_if(library.begin(), library.end(), [&](const auto& r) { return r.name == name; });
    if (it == library.end()) throw ConfigError("parameters for unknown rule '" + name + "'");
    for (const auto& [k, v] : params) it->params[k] = v;
  }
  try {
    return engine::select_rules(library, config.rules);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::size_t parse_worker_count(std::string_view text, std::string_view source) {
  std::size_t n = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), n);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || n == 0) {
    throw ConfigError(std::string(source) + ": expected a positive integer, got '" + std::string(text) + "'");
  }
  return n;
}

}  // namespace rulemon::cli
