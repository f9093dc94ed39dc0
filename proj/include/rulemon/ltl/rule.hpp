#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rulemon/ltl/formula.hpp"

namespace rulemon::ltl {

/// A proposition name split into its base and agent-slot suffix:
/// `behind_ij` -> {"behind", {0, 1}}, `lane_end_k` -> {"lane_end", {2}},
/// `a` -> {"a", {}}. Slots i, j, k map to 0, 1, 2.
struct SlottedName {
  std::string base;
  std::vector<int> slots;
};

SlottedName split_agent_slots(std::string_view name);

/// Traffic rule in premise/conclusion shape: G(premise -> conclusion).
struct Rule {
  std::string name;
  Formula premise;
  Formula conclusion;
  int arity = 1;
  /// Scalar thresholds that override the global predicate parameters
  /// when this rule's labels are evaluated.
  std::map<std::string, double> params;

  Formula as_formula() const;

  /// Throws std::invalid_argument on arity outside {1,2,3} or a slot >= arity.
  void validate() const;
};

class RuleFileError : public std::runtime_error {
 public:
  RuleFileError(std::string source, std::size_t line, const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/*
 * Rule library text format, one stanza per rule:
 *
 *   rule <name> arity <n>
 *   param <key> = <float>        (zero or more)
 *   premise: <formula>
 *   conclusion: <formula>
 *
 * Blank lines separate stanzas; `#` starts a comment line.
 */
std::vector<Rule> parse_rule_library(std::string_view text, std::string_view source = "<rules>");
std::string print_rule_library(std::span<const Rule> rules);

}  // namespace rulemon::ltl
