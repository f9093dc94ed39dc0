#include "rulemon/ltl/rule.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "rulemon/ltl/parser.hpp"
#include "rulemon/ltl/transform.hpp"

namespace rulemon::ltl {

SlottedName split_agent_slots(std::string_view name) {
  const auto cut = name.rfind('_');
  if (cut == std::string_view::npos || cut == 0 || cut + 1 >= name.size()) {
    return {std::string(name), {}};
  }
  const auto suffix = name.substr(cut + 1);
  if (suffix.size() > 3) return {std::string(name), {}};
  std::vector<int> slots;
  for (char c : suffix) {
    if (c < 'i' || c > 'k') return {std::string(name), {}};
    slots.push_back(c - 'i');
  }
  return {std::string(name.substr(0, cut)), std::move(slots)};
}

Formula Rule::as_formula() const { return Formula::globally(Formula::implication(premise, conclusion)); }

void Rule::validate() const {
  if (arity < 1 || arity > 3) {
    throw std::invalid_argument("rule '" + name + "': arity must be 1, 2 or 3");
  }
  for (const auto& atom : atoms(as_formula())) {
    for (int slot : split_agent_slots(atom).slots) {
      if (slot >= arity) {
        throw std::invalid_argument("rule '" + name + "': proposition '" + atom +
                                    "' references an agent slot beyond arity " + std::to_string(arity));
      }
    }
  }
}

RuleFileError::RuleFileError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Pending {
  Rule rule;
  std::size_t line = 0;
  bool has_premise = false;
  bool has_conclusion = false;
};

}  // namespace

std::vector<Rule> parse_rule_library(std::string_view text, std::string_view source) {
  const std::string src(source);
  std::vector<Rule> rules;
  std::optional<Pending> current;

  auto flush = [&](std::size_t line) {
    if (!current) return;
    if (!current->has_premise) throw RuleFileError(src, line, "rule '" + current->rule.name + "' has no premise");
    if (!current->has_conclusion) {
      throw RuleFileError(src, line, "rule '" + current->rule.name + "' has no conclusion");
    }
    try {
      current->rule.validate();
    } catch (const std::invalid_argument& e) {
      throw RuleFileError(src, current->line, e.what());
    }
    for (const auto& r : rules) {
      if (r.name == current->rule.name) throw RuleFileError(src, current->line, "duplicate rule '" + r.name + "'");
    }
    rules.push_back(std::move(current->rule));
    current.reset();
  };

  auto parse_formula_at = [&](std::string_view body, std::size_t line, std::size_t column) {
    try {
      return parse(body);
    } catch (const ParseError& e) {
      throw RuleFileError(src, line, "column " + std::to_string(column + e.offset() + 1) + ": " + e.what());
    }
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty()) {
      flush(line_no);
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '#') continue;

    if (line.starts_with("rule ")) {
      flush(line_no);
      std::istringstream in{std::string(line)};
      std::string kw, name, arity_kw;
      int arity = 0;
      if (!(in >> kw >> name >> arity_kw >> arity) || arity_kw != "arity") {
        throw RuleFileError(src, line_no, "expected 'rule <name> arity <n>'");
      }
      std::string rest;
      if (in >> rest) throw RuleFileError(src, line_no, "unexpected trailing text '" + rest + "'");
      current = Pending{};
      current->rule.name = name;
      current->rule.arity = arity;
      current->line = line_no;
    } else if (!current) {
      throw RuleFileError(src, line_no, "statement outside of a 'rule' stanza");
    } else if (line.starts_with("premise:") || line.starts_with("conclusion:")) {
      const bool premise = line.starts_with("premise:");
      const auto colon = raw.find(':');
      const std::string_view body = raw.substr(colon + 1);
      Formula f = parse_formula_at(body, line_no, colon + 1);
      if (premise) {
        if (current->has_premise) throw RuleFileError(src, line_no, "duplicate premise");
        current->rule.premise = f;
        current->has_premise = true;
      } else {
        if (current->has_conclusion) throw RuleFileError(src, line_no, "duplicate conclusion");
        current->rule.conclusion = f;
        current->has_conclusion = true;
      }
    } else if (line.starts_with("param ")) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw RuleFileError(src, line_no, "expected 'param <key> = <float>'");
      const std::string key(trim(line.substr(6, eq - 6)));
      const std::string_view value_text = trim(line.substr(eq + 1));
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
      if (key.empty() || ec != std::errc() || ptr != value_text.data() + value_text.size() || !std::isfinite(value)) {
        throw RuleFileError(src, line_no, "expected 'param <key> = <float>'");
      }
      current->rule.params[key] = value;
    } else {
      throw RuleFileError(src, line_no, "unrecognized statement '" + std::string(line) + "'");
    }
    if (end == text.size()) break;
  }
  flush(line_no);
  return rules;
}

std::string print_rule_library(std::span<const Rule> rules) {
  std::ostringstream out;
  bool first = true;
  for (const auto& r : rules) {
    if (!first) out << '\n';
    first = false;
    out << "rule " << r.name << " arity " << r.arity << '\n';
    for (const auto& [key, value] : r.params) {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, value);
      out << "param " << key << " = " << std::string_view(buf, res.ptr - buf) << '\n';
    }
    out << "premise: " << print(r.premise) << '\n';
    out << "conclusion: " << print(r.conclusion) << '\n';
  }
  return out.str();
}

}  // namespace rulemon::ltl
