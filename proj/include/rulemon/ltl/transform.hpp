#pragma once

#include <string>
#include <vector>

#include "rulemon/ltl/formula.hpp"

namespace rulemon::ltl {

/// Negation normal form: `!` only directly above atoms, no `->`.
/// The result may contain weak-next and release nodes (duals of X and U).
Formula to_nnf(const Formula& f);

bool is_nnf(const Formula& f);

/// Distinct subformulas, children before parents; the last element is `f`.
std::vector<Formula> subformulas(const Formula& f);

/// Sorted, distinct proposition names occurring in `f`.
std::vector<std::string> atoms(const Formula& f);

}  // namespace rulemon::ltl
