#pragma once

#include <functional>
#include <string>

#include "rulemon/ltl/formula.hpp"
#include "rulemon/monitor/evaluate.hpp"

namespace rulemon::monitor {

/*
 * Formula progression over finite traces.
 *
 * A residual is an obligation on the remaining suffix, which may be empty.
 * On the empty suffix: literals, X, U and F are false; W, R and G are true;
 * and/or are compositional. Progression is exact with respect to that
 * reading: for every suffix s (empty included), s |= progress(f, a) iff
 * a.s |= f. Strong next needs a non-empty suffix, which is expressed as
 * `F true`; its dual for weak next is `G false`.
 */

using AtomLookup = std::function<bool(const std::string&)>;

/// Residual of `f` (in NNF) after consuming one letter. The result is
/// normalized. Throws EvaluationError for an unassigned proposition and
/// std::invalid_argument if `f` is not in NNF.
Formula progress(const Formula& f, const Valuation& letter);
Formula progress(const Formula& f, const AtomLookup& lookup);

/// Truth of `f` on the empty suffix (end of trace).
bool holds_on_empty(const Formula& f);

/// Canonical conjunction/disjunction: a minimal disjunctive normal form
/// over literals and temporal nodes, with constants folded, clauses and
/// operands sorted, absorbed clauses removed and `x & !x` folded to false.
Formula normalized_and(const Formula& a, const Formula& b);
Formula normalized_or(const Formula& a, const Formula& b);

/// Rebuilds an NNF formula bottom-up with the canonical constructors.
Formula normalize(const Formula& f);

}  // namespace rulemon::monitor
