#include "rulemon/monitor/progression.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <vector>

#include "rulemon/ltl/parser.hpp"
#include "rulemon/ltl/transform.hpp"

namespace rulemon::monitor {

using ltl::Kind;

namespace {

const Formula& non_empty() {
  static const Formula f = Formula::finally(Formula::make_true());
  return f;
}

const Formula& empty_only() {
  static const Formula f = Formula::globally(Formula::make_false());
  return f;
}

// Boolean structure is kept in a minimal disjunctive normal form over
// "leaves" (literals and temporal nodes). Absorption (A | A & B == A) is
// what bounds the number of distinct residuals: every state is an
// antichain of clauses over the finite set of leaves of the start formula.
using Clause = std::vector<Formula>;
using Dnf = std::vector<Clause>;

bool complementary(const Clause& c) {
  // x & !x is false on every suffix, the empty one included. The dual
  // x | !x is not true on the empty suffix, so it is never folded.
  for (const auto& f : c) {
    if (f.kind() == Kind::Not && std::binary_search(c.begin(), c.end(), f.child())) return true;
  }
  return false;
}

Dnf minimal(Dnf d) {
  std::sort(d.begin(), d.end(), [](const Clause& x, const Clause& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  Dnf out;
  for (auto& c : d) {
    const bool subsumed = std::any_of(out.begin(), out.end(), [&](const Clause& kept) {
      return std::includes(c.begin(), c.end(), kept.begin(), kept.end());
    });
    if (!subsumed) out.push_back(std::move(c));
  }
  return out;
}

Dnf to_dnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
      return {Clause{}};
    case Kind::False:
      return {};
    case Kind::Or: {
      Dnf l = to_dnf(f.left());
      Dnf r = to_dnf(f.right());
      l.insert(l.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
      return minimal(std::move(l));
    }
    case Kind::And: {
      const Dnf l = to_dnf(f.left());
      const Dnf r = to_dnf(f.right());
      Dnf out;
      out.reserve(l.size() * r.size());
      for (const auto& x : l) {
        for (const auto& y : r) {
          Clause c;
          c.reserve(x.size() + y.size());
          std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
          if (!complementary(c)) out.push_back(std::move(c));
        }
      }
      return minimal(std::move(out));
    }
    default:
      return {Clause{f}};
  }
}

Formula from_dnf(const Dnf& d) {
  if (d.empty()) return Formula::make_false();
  std::vector<Formula> terms;
  terms.reserve(d.size());
  for (const auto& c : d) {
    if (c.empty()) return Formula::make_true();
    Formula t = c.front();
    for (std::size_t i = 1; i < c.size(); ++i) t = Formula::conjunction(t, c[i]);
    terms.push_back(std::move(t));
  }
  std::sort(terms.begin(), terms.end());
  Formula out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) out = Formula::disjunction(out, terms[i]);
  return out;
}

Formula combine(const Formula& a, const Formula& b, Kind op) {
  const Kind absorbing = op == Kind::And ? Kind::False : Kind::True;
  const Kind neutral = op == Kind::And ? Kind::True : Kind::False;
  if (a.kind() == absorbing || b.kind() == absorbing) return Formula::constant(op == Kind::Or);
  if (a.kind() == neutral) return b;
  if (b.kind() == neutral) return a;
  return from_dnf(to_dnf(Formula::binary(op, a, b)));
}

Formula progress_impl(const Formula& f, const AtomLookup& lookup) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Atom:
      return Formula::constant(lookup(f.name()));
    case Kind::Not:
      if (f.child().kind() != Kind::Atom) break;
      return Formula::constant(!lookup(f.child().name()));
    case Kind::And:
      return normalized_and(progress_impl(f.left(), lookup), progress_impl(f.right(), lookup));
    case Kind::Or:
      return normalized_or(progress_impl(f.left(), lookup), progress_impl(f.right(), lookup));
    case Kind::Next:
      return holds_on_empty(f.child()) ? normalized_and(f.child(), non_empty()) : f.child();
    case Kind::WeakNext:
      return holds_on_empty(f.child()) ? f.child() : normalized_or(f.child(), empty_only());
    case Kind::Until:
      return normalized_or(progress_impl(f.right(), lookup),
                           normalized_and(progress_impl(f.left(), lookup), f));
    case Kind::Release:
      return normalized_and(progress_impl(f.right(), lookup),
                            normalized_or(progress_impl(f.left(), lookup), f));
    case Kind::Globally:
      return normalized_and(progress_impl(f.child(), lookup), f);
    case Kind::Finally:
      return normalized_or(progress_impl(f.child(), lookup), f);
    case Kind::Implies:
      break;
  }
  throw std::invalid_argument("progress: formula is not in negation normal form: " + ltl::print(f));
}

}  // namespace

Formula normalized_and(const Formula& a, const Formula& b) { return combine(a, b, Kind::And); }
Formula normalized_or(const Formula& a, const Formula& b) { return combine(a, b, Kind::Or); }

bool holds_on_empty(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
      return true;
    case Kind::False:
    case Kind::Atom:
    case Kind::Next:
    case Kind::Until:
    case Kind::Finally:
      return false;
    case Kind::WeakNext:
    case Kind::Release:
    case Kind::Globally:
      return true;
    case Kind::And:
      return holds_on_empty(f.left()) && holds_on_empty(f.right());
    case Kind::Or:
      return holds_on_empty(f.left()) || holds_on_empty(f.right());
    case Kind::Not:
      if (f.child().kind() == Kind::Atom) return false;
      return holds_on_empty(ltl::to_nnf(f));
    case Kind::Implies:
      return holds_on_empty(ltl::to_nnf(f));
  }
  return false;
}

Formula progress(const Formula& f, const AtomLookup& lookup) { return progress_impl(f, lookup); }

Formula progress(const Formula& f, const Valuation& letter) {
  return progress_impl(f, [&letter](const std::string& name) {
    auto it = letter.find(name);
    if (it == letter.end()) throw EvaluationError("unassigned proposition '" + name + "'");
    return it->second;
  });
}

Formula normalize(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
      return f;
    case Kind::Not:
      if (f.child().kind() != Kind::Atom) break;
      return f;
    case Kind::And:
      return normalized_and(normalize(f.left()), normalize(f.right()));
    case Kind::Or:
      return normalized_or(normalize(f.left()), normalize(f.right()));
    case Kind::Next: {
      Formula c = normalize(f.child());
      if (c.kind() == Kind::False) return c;
      return Formula::next(c);
    }
    case Kind::WeakNext: {
      Formula c = normalize(f.child());
      if (c.kind() == Kind::True) return c;
      return Formula::weak_next(c);
    }
    case Kind::Globally: {
      Formula c = normalize(f.child());
      if (c.kind() == Kind::True) return c;
      return Formula::globally(c);
    }
    case Kind::Finally: {
      Formula c = normalize(f.child());
      if (c.kind() == Kind::False) return c;
      return Formula::finally(c);
    }
    case Kind::Until: {
      Formula r = normalize(f.right());
      if (r.kind() == Kind::False) return r;
      return Formula::until(normalize(f.left()), r);
    }
    case Kind::Release: {
      Formula r = normalize(f.right());
      if (r.kind() == Kind::True) return r;
      return Formula::release(normalize(f.left()), r);
    }
    case Kind::Implies:
      break;
  }
  throw std::invalid_argument("normalize: formula is not in negation normal form: " + ltl::print(f));
}

}  // namespace rulemon::monitor
