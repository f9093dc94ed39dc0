#include "rulemon/monitor/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "rulemon/ltl/parser.hpp"
#include "rulemon/ltl/transform.hpp"
#include "rulemon/monitor/progression.hpp"

namespace rulemon::monitor {

std::string_view to_string(VerdictValue v) {
  switch (v) {
    case VerdictValue::Inconclusive: return "inconclusive";
    case VerdictValue::Satisfied: return "satisfied";
    case VerdictValue::Violated: return "violated";
  }
  return "?";
}

std::optional<VerdictValue> verdict_from_string(std::string_view s) {
  for (auto v : {VerdictValue::Inconclusive, VerdictValue::Satisfied, VerdictValue::Violated}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

MonitorAutomaton::MonitorAutomaton(std::vector<std::string> alphabet, std::vector<MonitorState> states,
                                   StateId initial, std::vector<StateId> transitions)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      initial_(initial),
      transitions_(std::move(transitions)) {
  if (alphabet_.size() > 24) throw MonitorError("alphabet too large");
  if (std::set<std::string>(alphabet_.begin(), alphabet_.end()).size() != alphabet_.size()) {
    throw MonitorError("alphabet contains duplicate propositions");
  }
  if (states_.empty()) throw MonitorError("automaton has no states");
  if (initial_ >= states_.size()) throw MonitorError("initial state out of range");
  const std::size_t letters = letter_count();
  if (transitions_.size() != states_.size() * letters) {
    throw MonitorError("transition table is not total: expected " + std::to_string(states_.size() * letters) +
                       " entries, got " + std::to_string(transitions_.size()));
  }
  for (StateId s = 0; s < states_.size(); ++s) {
    const auto& st = states_[s];
    for (std::size_t a = 0; a < letters; ++a) {
      const StateId t = transitions_[s * letters + a];
      if (t >= states_.size()) throw MonitorError("transition target out of range in state " + std::to_string(s));
      if (st.tag != VerdictValue::Inconclusive && t != s) {
        throw MonitorError("state " + std::to_string(s) + " is tagged " + std::string(to_string(st.tag)) +
                           " but is not absorbing");
      }
    }
    if ((st.tag == VerdictValue::Satisfied && !st.accepting) ||
        (st.tag == VerdictValue::Violated && st.accepting)) {
      throw MonitorError("state " + std::to_string(s) + " has a verdict tag inconsistent with its acceptance");
    }
  }
}

const MonitorState& MonitorAutomaton::state(StateId s) const {
  if (s >= states_.size()) throw MonitorError("invalid state " + std::to_string(s));
  return states_[s];
}

StateId MonitorAutomaton::successor(StateId s, Letter a) const {
  if (s >= states_.size()) throw MonitorError("invalid state " + std::to_string(s));
  if (a >= letter_count()) throw MonitorError("letter out of range for alphabet");
  return transitions_[s * letter_count() + a];
}

Letter MonitorAutomaton::encode(const Valuation& letter) const {
  Letter out = 0;
  for (std::size_t b = 0; b < alphabet_.size(); ++b) {
    auto it = letter.find(alphabet_[b]);
    if (it == letter.end()) throw EvaluationError("unassigned proposition '" + alphabet_[b] + "'");
    if (it->second) out |= Letter{1} << b;
  }
  return out;
}

StepResult MonitorAutomaton::step(StateId s, Letter a) const {
  const StateId next = successor(s, a);
  return {next, states_[next].tag};
}

VerdictValue MonitorAutomaton::finalize(StateId s) const {
  return state(s).accepting ? VerdictValue::Satisfied : VerdictValue::Violated;
}

namespace {

// Renumbers states in breadth-first order from the initial state, mapping
// each old state through `cls` first. States sharing a class collapse.
MonitorAutomaton rebuild(const std::vector<std::string>& alphabet, const std::vector<MonitorState>& states,
                         StateId initial, const std::vector<StateId>& transitions, const std::vector<StateId>& cls,
                         const std::vector<MonitorState>& class_states) {
  const std::size_t letters = std::size_t{1} << alphabet.size();
  // First member of each class acts as representative for its successors.
  std::vector<StateId> rep(class_states.size(), static_cast<StateId>(-1));
  for (StateId s = 0; s < states.size(); ++s) {
    if (rep[cls[s]] == static_cast<StateId>(-1)) rep[cls[s]] = s;
  }
  std::vector<StateId> order(class_states.size(), static_cast<StateId>(-1));
  std::vector<StateId> visit;
  std::deque<StateId> queue{cls[initial]};
  order[cls[initial]] = 0;
  visit.push_back(cls[initial]);
  while (!queue.empty()) {
    const StateId c = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < letters; ++a) {
      const StateId t = cls[transitions[rep[c] * letters + a]];
      if (order[t] == static_cast<StateId>(-1)) {
        order[t] = static_cast<StateId>(visit.size());
        visit.push_back(t);
        queue.push_back(t);
      }
    }
  }
  std::vector<MonitorState> out_states;
  std::vector<StateId> out_trans(visit.size() * letters);
  for (StateId n = 0; n < visit.size(); ++n) {
    const StateId c = visit[n];
    out_states.push_back(class_states[c]);
    for (std::size_t a = 0; a < letters; ++a) {
      out_trans[n * letters + a] = order[cls[transitions[rep[c] * letters + a]]];
    }
  }
  return MonitorAutomaton(alphabet, std::move(out_states), 0, std::move(out_trans));
}

}  // namespace

MonitorAutomaton compile(const Formula& f, const CompileOptions& options) {
  const Formula start = normalize(ltl::to_nnf(f));
  std::vector<std::string> alphabet = ltl::atoms(start);
  if (alphabet.size() > options.max_alphabet) {
    throw MonitorError("formula has " + std::to_string(alphabet.size()) + " propositions, limit is " +
                       std::to_string(options.max_alphabet));
  }
  const std::size_t letters = std::size_t{1} << alphabet.size();
  std::unordered_map<std::string, std::size_t> bit;
  for (std::size_t b = 0; b < alphabet.size(); ++b) bit.emplace(alphabet[b], b);

  std::vector<Formula> residuals{start};
  std::unordered_map<Formula, StateId, ltl::FormulaHash> index{{start, 0}};
  std::vector<StateId> transitions;

  for (StateId s = 0; s < residuals.size(); ++s) {
    for (Letter a = 0; a < letters; ++a) {
      const Formula next =
          progress(residuals[s], [&](const std::string& name) { return ((a >> bit.at(name)) & 1U) != 0; });
      auto [it, inserted] = index.try_emplace(next, static_cast<StateId>(residuals.size()));
      if (inserted) {
        residuals.push_back(next);
        if (residuals.size() > options.max_states) {
          throw MonitorError("state explosion: more than " + std::to_string(options.max_states) +
                             " states while compiling " + ltl::print(f));
        }
      }
      transitions.push_back(it->second);
    }
  }

  const std::size_t n = residuals.size();
  std::vector<bool> accepting(n);
  for (std::size_t s = 0; s < n; ++s) accepting[s] = holds_on_empty(residuals[s]);

  // Backward reachability of accepting / rejecting states.
  std::vector<std::vector<StateId>> preds(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < letters; ++a) preds[transitions[s * letters + a]].push_back(static_cast<StateId>(s));
  }
  auto reach = [&](bool target) {
    std::vector<bool> seen(n, false);
    std::vector<StateId> stack;
    for (std::size_t s = 0; s < n; ++s) {
      if (accepting[s] == target) {
        seen[s] = true;
        stack.push_back(static_cast<StateId>(s));
      }
    }
    while (!stack.empty()) {
      const StateId s = stack.back();
      stack.pop_back();
      for (StateId p : preds[s]) {
        if (!seen[p]) {
          seen[p] = true;
          stack.push_back(p);
        }
      }
    }
    return seen;
  };
  const auto can_accept = reach(true);
  const auto can_reject = reach(false);

  // Class 0 = violated sink, class 1 = satisfied sink, then one class per
  // remaining state.
  std::vector<MonitorState> class_states{{Formula::make_false(), VerdictValue::Violated, false},
                                         {Formula::make_true(), VerdictValue::Satisfied, true}};
  std::vector<StateId> cls(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (!can_accept[s]) {
      cls[s] = 0;
    } else if (!can_reject[s]) {
      cls[s] = 1;
    } else {
      cls[s] = static_cast<StateId>(class_states.size());
      class_states.push_back({residuals[s], VerdictValue::Inconclusive, accepting[s]});
    }
  }
  // Sinks self-loop; point their representative rows at themselves.
  std::vector<StateId> trans = transitions;
  for (std::size_t s = 0; s < n; ++s) {
    if (cls[s] <= 1) {
      for (std::size_t a = 0; a < letters; ++a) trans[s * letters + a] = static_cast<StateId>(s);
    }
  }
  std::vector<MonitorState> plain(n);
  return rebuild(alphabet, plain, 0, trans, cls, class_states);
}

MonitorAutomaton minimize(const MonitorAutomaton& m) {
  const std::size_t n = m.state_count();
  const std::size_t letters = m.letter_count();

  std::vector<StateId> block(n);
  {
    std::map<std::pair<VerdictValue, bool>, StateId> initial;
    for (StateId s = 0; s < n; ++s) {
      const auto key = std::make_pair(m.state(s).tag, m.state(s).accepting);
      block[s] = initial.try_emplace(key, static_cast<StateId>(initial.size())).first->second;
    }
  }
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<StateId>, StateId> signatures;
    std::vector<StateId> next(n);
    for (StateId s = 0; s < n; ++s) {
      std::vector<StateId> sig;
      sig.reserve(letters + 1);
      sig.push_back(block[s]);
      for (Letter a = 0; a < letters; ++a) sig.push_back(block[m.successor(s, a)]);
      next[s] = signatures.try_emplace(std::move(sig), static_cast<StateId>(signatures.size())).first->second;
    }
    block = std::move(next);
    if (signatures.size() == count) break;
    count = signatures.size();
  }

  std::vector<MonitorState> class_states(count);
  std::vector<bool> filled(count, false);
  for (StateId s = 0; s < n; ++s) {
    if (!filled[block[s]]) {
      class_states[block[s]] = m.state(s);
      filled[block[s]] = true;
    }
  }
  std::vector<StateId> trans(n * letters);
  for (StateId s = 0; s < n; ++s) {
    for (Letter a = 0; a < letters; ++a) trans[s * letters + a] = m.successor(s, a);
  }
  return rebuild(m.alphabet(), m.states(), m.initial(), trans, block, class_states);
}

Verdict MonitorRun::step(Letter a) {
  const auto result = m_->step(state_, a);
  state_ = result.state;
  if (!decided_ && result.verdict != VerdictValue::Inconclusive) decided_ = Verdict{result.verdict, consumed_};
  ++consumed_;
  return current();
}

Verdict MonitorRun::current() const { return decided_ ? *decided_ : Verdict{}; }

Verdict MonitorRun::finalize() const {
  if (decided_) return *decided_;
  Verdict v{m_->finalize(state_), std::nullopt};
  if (consumed_ > 0) v.position = consumed_ - 1;
  return v;
}

}  // namespace rulemon::monitor
