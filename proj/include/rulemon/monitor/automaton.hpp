#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rulemon/ltl/formula.hpp"
#include "rulemon/monitor/evaluate.hpp"

namespace rulemon::monitor {

enum class VerdictValue : std::uint8_t { Inconclusive, Satisfied, Violated };

std::string_view to_string(VerdictValue v);
std::optional<VerdictValue> verdict_from_string(std::string_view s);

struct Verdict {
  VerdictValue value = VerdictValue::Inconclusive;
  /// Trace position at which the verdict became final; empty while
  /// inconclusive (and for a final verdict on the empty trace).
  std::optional<std::size_t> position;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

using StateId = std::uint32_t;
/// Assignment over the automaton alphabet; bit b holds alphabet()[b].
using Letter = std::uint32_t;

struct MonitorState {
  Formula residual;
  VerdictValue tag = VerdictValue::Inconclusive;
  /// Verdict if the trace ends in this state.
  bool accepting = false;
};

class MonitorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepResult {
  StateId state;
  VerdictValue verdict;
};

/// Deterministic, total monitor over complete assignments. Satisfied and
/// violated states are absorbing.
class MonitorAutomaton {
 public:
  /// Validates totality, tag/acceptance consistency and absorption;
  /// throws MonitorError otherwise.
  MonitorAutomaton(std::vector<std::string> alphabet, std::vector<MonitorState> states, StateId initial,
                   std::vector<StateId> transitions);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t letter_count() const { return std::size_t{1} << alphabet_.size(); }
  std::size_t state_count() const { return states_.size(); }
  StateId initial() const { return initial_; }
  const MonitorState& state(StateId s) const;
  const std::vector<MonitorState>& states() const { return states_; }
  StateId successor(StateId s, Letter a) const;

  /// Throws EvaluationError if a proposition of the alphabet is unassigned.
  Letter encode(const Valuation& letter) const;

  /// Throws MonitorError on an invalid state.
  StepResult step(StateId s, Letter a) const;
  /// End-of-trace verdict; never inconclusive.
  VerdictValue finalize(StateId s) const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<MonitorState> states_;
  StateId initial_;
  std::vector<StateId> transitions_;
};

struct CompileOptions {
  std::size_t max_states = 10000;
  /// Transition tables hold 2^|alphabet| letters per state.
  std::size_t max_alphabet = 16;
};

/// Builds the monitor by progression from the normalized NNF of `f`.
/// Satisfied/violated tags mark states from which no rejecting/accepting
/// end can be reached, so verdicts fire on the shortest decisive prefix.
MonitorAutomaton compile(const Formula& f, const CompileOptions& options = {});

/// Moore partition refinement over (tag, acceptance).
MonitorAutomaton minimize(const MonitorAutomaton& m);

/// Run state of one monitor over one trace.
class MonitorRun {
 public:
  explicit MonitorRun(const MonitorAutomaton& m) : m_(&m), state_(m.initial()) {}

  Verdict step(Letter a);
  Verdict step(const Valuation& letter) { return step(m_->encode(letter)); }
  /// Verdict if the trace ended now.
  Verdict finalize() const;
  Verdict current() const;

  StateId state() const { return state_; }
  std::size_t consumed() const { return consumed_; }

 private:
  const MonitorAutomaton* m_;
  StateId state_;
  std::size_t consumed_ = 0;
  std::optional<Verdict> decided_;
};

}  // namespace rulemon::monitor
