#include "rulemon/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rulemon/cli/config.hpp"
#include "rulemon/engine/builtin_rules.hpp"
#include "rulemon/engine/engine.hpp"
#include "rulemon/engine/report_io.hpp"
#include "rulemon/ltl/parser.hpp"
#include "rulemon/ltl/transform.hpp"
#include "rulemon/monitor/automaton.hpp"
#include "rulemon/monitor/dump.hpp"
#include "rulemon/predicates/labeler.hpp"
#include "rulemon/world/trajectory_io.hpp"

namespace rulemon::cli {

namespace {

// Errors that are reported as "error: <message>" with exit code 1.
class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CommandError(path + ": cannot write file");
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ltl::Formula parse_formula(const std::string& text, const std::string& source) {
  try {
    return ltl::parse(text);
  } catch (const ltl::ParseError& e) {
    throw CommandError(source + ": " + e.what());
  }
}

std::vector<ltl::Rule> rule_library(const std::string& rule_file) {
  if (rule_file.empty()) return engine::builtin_rules();
  try {
    return ltl::parse_rule_library(read_file(rule_file), rule_file);
  } catch (const ltl::RuleFileError& e) {
    throw CommandError(e.what());
  }
}

ltl::Rule find_rule(const std::string& name, const std::string& rule_file) {
  try {
    return engine::select_rules(rule_library(rule_file), {name}).front();
  } catch (const std::invalid_argument& e) {
    throw CommandError(e.what());
  }
}

// Formula given inline or as a rule name (the rule's G(premise -> conclusion)).
ltl::Formula formula_argument(const std::string& formula, const std::string& rule, const std::string& rule_file) {
  if (!formula.empty() && !rule.empty()) throw CommandError("give either a formula or --rule, not both");
  if (!rule.empty()) return find_rule(rule, rule_file).as_formula();
  if (formula.empty()) throw CommandError("missing formula (or --rule NAME)");
  return parse_formula(formula, "<formula>");
}

std::shared_ptr<const world::MapModel> load_map(const std::string& path) {
  if (path.empty()) throw CommandError("missing --map");
  return std::make_shared<const world::MapModel>(world::load_map(path));
}

world::Trace load_trace(const std::string& path, std::shared_ptr<const world::MapModel> map,
                        world::TrajectoryFormat format) {
  if (path.empty()) throw CommandError("missing --traj");
  return world::load_trajectories(path, std::move(map), format);
}

world::TrajectoryFormat parse_format(const std::string& text) {
  const auto f = world::trajectory_format_from_string(text);
  if (!f) throw CommandError("unknown trajectory format '" + text + "'");
  return *f;
}

// ---- check ---------------------------------------------------------------

struct CheckArgs {
  std::string config;
  std::string map, traj, format, rule_file, out_dir, denominator;
  std::vector<std::string> rules, params, report_formats;
  std::optional<double> dt;
  std::optional<std::size_t> workers;
  bool deterministic = false;
  bool fail_on_violation = false;
  bool no_prune = false;
};

RunConfig check_config(const CheckArgs& a, const EnvLookup& env) {
  RunConfig c;
  if (!a.config.empty()) c = load_config(a.config);
  if (const char* w = env("RULEMON_WORKERS"); w != nullptr && *w != '\0') {
    c.workers = parse_worker_count(w, "RULEMON_WORKERS");
  }
  if (!a.map.empty()) c.map_path = a.map;
  if (!a.traj.empty()) c.trajectory_path = a.traj;
  if (!a.format.empty()) c.format = parse_format(a.format);
  if (!a.rules.empty()) c.rules = a.rules;
  if (!a.rule_file.empty()) c.rule_file = a.rule_file;
  for (const auto& p : a.params) apply_param_override(c, p);
  if (a.dt) c.dt = *a.dt;
  if (!a.out_dir.empty()) c.output_dir = a.out_dir;
  if (a.workers) c.workers = *a.workers;
  if (!a.report_formats.empty()) c.report_formats = a.report_formats;
  if (a.denominator == "all") c.denominator = engine::AgentDenominator::AllAgents;
  else if (a.denominator == "instantiated") c.denominator = engine::AgentDenominator::InstantiatedAgents;
  if (a.no_prune) c.prune = false;
  return c;
}

std::string fraction(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << v;
  return ss.str();
}

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  const RunConfig c = check_config(a, env);
  // Rules and parameters are checked before any data is read.
  const auto rules = resolve_rules(c);
  engine::EngineOptions options;
  options.params = effective_params(c);
  options.workers = c.workers;
  options.prune = c.prune;
  options.denominator = c.denominator;
  const engine::Engine eng(rules, options);

  const world::Trace trace = load_trace(c.trajectory_path, load_map(c.map_path), c.format);
  if (c.dt && !trace.empty() && std::abs(trace.dt() - *c.dt) > 1e-6) {
    throw CommandError(c.trajectory_path + ": sampling period " + std::to_string(trace.dt()) +
                       " s does not match the configured dt " + std::to_string(*c.dt) + " s");
  }
  for (const auto& w : trace.warnings()) err << "warning: " << w << "\n";

  const engine::ViolationReport report = eng.run(trace);
  for (const auto& d : report.diagnostics) err << "warning: " << d << "\n";

  std::filesystem::create_directories(c.output_dir);
  const std::optional<std::string> header =
      a.deterministic ? std::nullopt : std::optional<std::string>("generated " + utc_timestamp());
  const auto wants = [&](const char* f) {
    return std::find(c.report_formats.begin(), c.report_formats.end(), f) != c.report_formats.end();
  };
  if (wants("json")) write_file(c.output_dir + "/report.json", engine::report_json(report));
  if (wants("csv")) {
    write_file(c.output_dir + "/metrics.csv", engine::metrics_csv(report, header));
    write_file(c.output_dir + "/violations.csv", engine::violations_csv(report, header));
  }

  bool violated = false;
  out << std::left << std::setw(18) << "rule" << std::setw(10) << "flagged" << std::setw(16) << "once_per_agent"
      << std::setw(16) << "per_time_total" << "per_time_premise\n";
  for (const auto& r : report.rules) {
    violated = violated || !r.flagged.empty() || r.violation_steps > 0;
    const auto premise = r.per_time_premise();
    out << std::setw(18) << r.name << std::setw(10) << r.flagged.size() << std::setw(16)
        << fraction(r.once_per_agent()) << std::setw(16) << fraction(r.per_time_total())
        << (premise ? fraction(*premise) : "n/a") << "\n";
  }
  return violated && a.fail_on_violation ? 2 : 0;
}

// ---- compile -------------------------------------------------------------

struct CompileArgs {
  std::string formula, rule, rule_file, dump, output;
  bool no_minimize = false;
  std::size_t max_states = monitor::CompileOptions{}.max_states;
};

int cmd_compile(const CompileArgs& a, std::ostream& out, std::ostream& err) {
  const ltl::Formula f = formula_argument(a.formula, a.rule, a.rule_file);
  monitor::CompileOptions options;
  options.max_states = a.max_states;
  monitor::MonitorAutomaton m = monitor::compile(f, options);
  if (!a.no_minimize) m = monitor::minimize(m);
  const std::string count = std::to_string(m.state_count()) + " states\n";
  if (a.dump.empty()) {
    out << count;
    return 0;
  }
  const std::string graph = a.rule.empty() ? "monitor" : a.rule;
  const std::string text = a.dump == "dot" ? monitor::dump_dot(m, graph) : monitor::dump_text(m);
  if (a.output.empty()) {
    out << text;
    err << count;
  } else {
    write_file(a.output, text);
    out << count;
  }
  return 0;
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string formula, rule, rule_file, trace;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

monitor::PropositionTrace read_assignment_csv(const std::string& path, const std::vector<std::string>& needed) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) header = split_csv_line(line);
  }
  if (header.empty()) throw CommandError(path + ":1: missing header row");
  std::vector<std::vector<bool>> columns(header.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw CommandError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                         " fields, found " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string& v = cells[c];
      if (v == "1" || v == "true" || v == "T") columns[c].push_back(true);
      else if (v == "0" || v == "false" || v == "F") columns[c].push_back(false);
      else {
        throw CommandError(path + ":" + std::to_string(line_no) + ": column '" + header[c] + "': expected 0 or 1, got '" +
                           v + "'");
      }
    }
  }
  const std::size_t length = columns.front().size();
  monitor::PropositionTrace trace(length);
  for (const auto& name : needed) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw CommandError(path + ":1: missing column '" + name + "'");
    trace.set(name, columns[static_cast<std::size_t>(it - header.begin())]);
  }
  return trace;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const ltl::Formula f = formula_argument(a.formula, a.rule, a.rule_file);
  const monitor::MonitorAutomaton m = monitor::minimize(monitor::compile(f));
  const monitor::PropositionTrace trace = read_assignment_csv(a.trace, m.alphabet());
  // Atoms that simplify away still need their column.
  for (const auto& name : ltl::atoms(f)) {
    if (trace.find(name) == nullptr) (void)read_assignment_csv(a.trace, {name});
  }
  monitor::MonitorRun run(m);
  monitor::Verdict v;
  for (std::size_t t = 0; t < trace.length() && v.value == monitor::VerdictValue::Inconclusive; ++t) {
    monitor::Letter letter = 0;
    for (std::size_t b = 0; b < m.alphabet().size(); ++b) {
      if (trace.column(m.alphabet()[b])[t]) letter |= monitor::Letter{1} << b;
    }
    v = run.step(letter);
  }
  if (v.value == monitor::VerdictValue::Inconclusive) v = run.finalize();
  if (v.value == monitor::VerdictValue::Satisfied) {
    out << "satisfied\n";
  } else if (v.position) {
    out << "violated at position " << *v.position << "\n";
  } else {
    out << "violated (empty trace)\n";
  }
  return 0;
}

// ---- labels --------------------------------------------------------------

struct LabelArgs {
  std::string config, map, traj, format, agents, rule, rule_file, output;
  std::vector<std::string> props, params;
};

std::vector<world::AgentId> parse_tuple(const std::string& text) {
  std::vector<world::AgentId> ids;
  std::istringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) {
    world::AgentId id = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), id);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size()) {
      throw CommandError("--agents '" + text + "': expected ids separated by ':'");
    }
    ids.push_back(id);
  }
  if (ids.empty() || ids.size() > 3) throw CommandError("--agents '" + text + "': expected 1 to 3 agent ids");
  return ids;
}

int cmd_labels(const LabelArgs& a, std::ostream& out) {
  RunConfig c;
  if (!a.config.empty()) c = load_config(a.config);
  if (!a.map.empty()) c.map_path = a.map;
  if (!a.traj.empty()) c.trajectory_path = a.traj;
  if (!a.format.empty()) c.format = parse_format(a.format);
  for (const auto& p : a.params) apply_param_override(c, p);
  predicates::PredicateParams params = effective_params(c);

  std::vector<std::string> names = a.props;
  int arity = 0;
  if (!a.rule.empty()) {
    const ltl::Rule r = find_rule(a.rule, a.rule_file.empty() ? c.rule_file : a.rule_file);
    params = params.with(r.params);
    if (names.empty()) names = ltl::atoms(r.as_formula());
    arity = r.arity;
  }
  std::vector<predicates::PropositionRef> props;
  for (const auto& n : names) {
    try {
      props.push_back(predicates::resolve_proposition(n));
    } catch (const predicates::UnknownProposition& e) {
      throw CommandError(e.what());
    }
  }

  const world::Trace trace = load_trace(c.trajectory_path, load_map(c.map_path), c.format);
  std::vector<std::vector<world::AgentId>> tuples;
  if (!a.agents.empty()) {
    tuples.push_back(parse_tuple(a.agents));
    for (world::AgentId id : tuples.front()) {
      if (!trace.lifespans().contains(id)) throw CommandError(c.trajectory_path + ": unknown agent " + std::to_string(id));
    }
  } else {
    if (arity > 1) throw CommandError("--agents is required for rule '" + a.rule + "' of arity " + std::to_string(arity));
    for (world::AgentId id : trace.agents()) tuples.push_back({id});
  }
  const std::size_t width = tuples.front().size();
  if (props.empty()) {
    for (predicates::Predicate p : predicates::all_predicates()) {
      if (predicates::predicate_arity(p) == 1) props.push_back(predicates::resolve_proposition(std::string(predicates::base_name(p)) + "_i"));
      else if (width >= 2) props.push_back(predicates::resolve_proposition(std::string(predicates::base_name(p)) + "_ij"));
    }
  }
  for (const auto& p : props) {
    for (int slot : p.slots) {
      if (static_cast<std::size_t>(slot) >= width) {
        throw CommandError("proposition '" + p.name + "' needs " + std::to_string(slot + 1) + " agents");
      }
    }
  }

  const predicates::Labeler labeler(trace, params);
  std::ostringstream csv;
  csv << "frame,tuple,proposition,value\n";
  for (const auto& tuple : tuples) {
    const std::string key = engine::tuple_string(tuple);
    for (const auto& p : props) {
      const auto lt = labeler.label(p, tuple, params);
      for (std::size_t n = 0; n < lt.values.size(); ++n) {
        csv << lt.first + n << ',' << key << ',' << p.name << ',' << (lt.values[n] ? 1 : 0) << '\n';
      }
    }
  }
  if (a.output.empty()) out << csv.str();
  else write_file(a.output, csv.str());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"Traffic-rule compliance checking for recorded multi-agent trajectories", "rulemon"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Evaluate rules on a trajectory file and write reports");
  c->add_option("--config", check.config, "JSON config file");
  c->add_option("--map", check.map, "Map JSON file");
  c->add_option("--traj", check.traj, "Trajectory CSV file");
  c->add_option("--format", check.format, "Trajectory format: native or interaction");
  c->add_option("--rules", check.rules, "Rule names or 'all'")->delimiter(',');
  c->add_option("--rule-file", check.rule_file, "Rule library replacing the built-in rules");
  c->add_option("--param", check.params, "Parameter override key=value or rule.key=value");
  c->add_option("--dt", check.dt, "Expected sampling period in seconds");
  c->add_option("--out", check.out_dir, "Output directory");
  c->add_option("--workers", check.workers, "Worker threads")->check(CLI::PositiveNumber);
  c->add_option("--report-format", check.report_formats, "json and/or csv")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "csv"}));
  c->add_option("--agent-denominator", check.denominator, "all or instantiated")
      ->check(CLI::IsMember({"all", "instantiated"}));
  c->add_flag("--deterministic", check.deterministic, "Omit the timestamp header from reports");
  c->add_flag("--fail-on-violation", check.fail_on_violation, "Exit with code 2 if any rule is violated");
  c->add_flag("--no-prune", check.no_prune, "Instantiate every coexisting agent tuple");

  CompileArgs compile;
  auto* k = app.add_subcommand("compile", "Build the monitor automaton of a formula or rule");
  k->add_option("formula", compile.formula, "LTL formula");
  k->add_option("--rule", compile.rule, "Rule name");
  k->add_option("--rule-file", compile.rule_file, "Rule library");
  k->add_option("--dump", compile.dump, "Dump format: text or dot")->check(CLI::IsMember({"text", "dot"}));
  k->add_option("-o,--output", compile.output, "Dump file (default: standard output)");
  k->add_flag("--no-minimize", compile.no_minimize, "Skip state minimization");
  k->add_option("--max-states", compile.max_states, "State cap")->check(CLI::PositiveNumber);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Evaluate a formula on a CSV of proposition values");
  e->add_option("formula", eval.formula, "LTL formula");
  e->add_option("--rule", eval.rule, "Rule name");
  e->add_option("--rule-file", eval.rule_file, "Rule library");
  e->add_option("--trace", eval.trace, "CSV with one 0/1 column per proposition")->required();

  LabelArgs labels;
  auto* l = app.add_subcommand("labels", "Dump proposition values per scene as CSV");
  l->add_option("--config", labels.config, "JSON config file");
  l->add_option("--map", labels.map, "Map JSON file");
  l->add_option("--traj", labels.traj, "Trajectory CSV file");
  l->add_option("--format", labels.format, "Trajectory format: native or interaction");
  l->add_option("--agents", labels.agents, "Agent tuple, e.g. 3:7 (default: every agent alone)");
  l->add_option("--rule", labels.rule, "Label the propositions of this rule with its parameters");
  l->add_option("--rule-file", labels.rule_file, "Rule library");
  l->add_option("--props", labels.props, "Proposition names")->delimiter(',');
  l->add_option("--param", labels.params, "Parameter override key=value");
  l->add_option("-o,--output", labels.output, "Output file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err);
  }

  try {
    if (c->parsed()) return cmd_check(check, out, err, env);
    if (k->parsed()) return cmd_compile(compile, out, err);
    if (e->parsed()) return cmd_eval(eval, out);
    if (l->parsed()) return cmd_labels(labels, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace rulemon::cli
