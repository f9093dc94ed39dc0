#include "rulemon/ltl/transform.hpp"

#include <set>
#include <unordered_set>

namespace rulemon::ltl {

namespace {

Formula nnf(const Formula& f, bool negated) {
  using K = Kind;
  switch (f.kind()) {
    case K::True:
    case K::False:
      return Formula::constant((f.kind() == K::True) != negated);
    case K::Atom:
      return negated ? Formula::negation(f) : f;
    case K::Not:
      return nnf(f.child(), !negated);
    case K::And:
      return negated ? Formula::disjunction(nnf(f.left(), true), nnf(f.right(), true))
                     : Formula::conjunction(nnf(f.left(), false), nnf(f.right(), false));
    case K::Or:
      return negated ? Formula::conjunction(nnf(f.left(), true), nnf(f.right(), true))
                     : Formula::disjunction(nnf(f.left(), false), nnf(f.right(), false));
    case K::Implies:
      // a -> b  ==  !a | b
      return negated ? Formula::conjunction(nnf(f.left(), false), nnf(f.right(), true))
                     : Formula::disjunction(nnf(f.left(), true), nnf(f.right(), false));
    case K::Next:
      return negated ? Formula::weak_next(nnf(f.child(), true)) : Formula::next(nnf(f.child(), false));
    case K::WeakNext:
      return negated ? Formula::next(nnf(f.child(), true)) : Formula::weak_next(nnf(f.child(), false));
    case K::Until:
      return negated ? Formula::release(nnf(f.left(), true), nnf(f.right(), true))
                     : Formula::until(nnf(f.left(), false), nnf(f.right(), false));
    case K::Release:
      return negated ? Formula::until(nnf(f.left(), true), nnf(f.right(), true))
                     : Formula::release(nnf(f.left(), false), nnf(f.right(), false));
    case K::Globally:
      return negated ? Formula::finally(nnf(f.child(), true)) : Formula::globally(nnf(f.child(), false));
    case K::Finally:
      return negated ? Formula::globally(nnf(f.child(), true)) : Formula::finally(nnf(f.child(), false));
  }
  return f;
}

void collect(const Formula& f, std::unordered_set<Formula, FormulaHash>& seen, std::vector<Formula>& out) {
  if (seen.count(f)) return;
  if (is_unary(f.kind())) {
    collect(f.child(), seen, out);
  } else if (is_binary(f.kind())) {
    collect(f.left(), seen, out);
    collect(f.right(), seen, out);
  }
  seen.insert(f);
  out.push_back(f);
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::Not:
      return f.child().kind() == Kind::Atom;
    case Kind::Implies:
      return false;
    default:
      break;
  }
  if (is_unary(f.kind())) return is_nnf(f.child());
  if (is_binary(f.kind())) return is_nnf(f.left()) && is_nnf(f.right());
  return true;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> out;
  collect(f, seen, out);
  return out;
}

std::vector<std::string> atoms(const Formula& f) {
  std::set<std::string> names;
  for (const auto& sub : subformulas(f)) {
    if (sub.is_atom()) names.insert(sub.name());
  }
  return {names.begin(), names.end()};
}

}  // namespace rulemon::ltl
