#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rulemon/ltl/formula.hpp"

namespace rulemon::monitor {

using ltl::Formula;

/// One trace letter: truth value per proposition name.
using Valuation = std::map<std::string, bool, std::less<>>;

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite boolean trace stored column-wise, one column per proposition.
class PropositionTrace {
 public:
  explicit PropositionTrace(std::size_t length = 0) : length_(length) {}

  static PropositionTrace from_valuations(std::span<const Valuation> letters);

  std::size_t length() const { return length_; }

  /// Throws std::invalid_argument if `values.size() != length()`.
  void set(std::string name, std::vector<bool> values);
  const std::vector<bool>* find(std::string_view name) const;
  /// Throws EvaluationError if the proposition has no column.
  const std::vector<bool>& column(std::string_view name) const;

  Valuation at(std::size_t position) const;

 private:
  std::size_t length_;
  std::map<std::string, std::vector<bool>, std::less<>> columns_;
};

/// Truth of `f` at every position of the trace under finite-trace
/// semantics (X is strong next: false at the last position). Computed
/// backwards over the subformulas in topological order.
std::vector<bool> evaluate_all(const Formula& f, const PropositionTrace& trace);
std::vector<bool> evaluate_all(const Formula& f, std::span<const Valuation> trace);

/// Truth of `f` at `position`; throws EvaluationError when out of range.
bool evaluate_naive(const Formula& f, std::span<const Valuation> trace, std::size_t position);

}  // namespace rulemon::monitor
