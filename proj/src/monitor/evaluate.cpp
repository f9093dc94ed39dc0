#include "rulemon/monitor/evaluate.hpp"

#include <unordered_map>

#include "rulemon/ltl/transform.hpp"

namespace rulemon::monitor {

using ltl::Kind;

PropositionTrace PropositionTrace::from_valuations(std::span<const Valuation> letters) {
  PropositionTrace out(letters.size());
  std::map<std::string, std::vector<bool>, std::less<>> columns;
  for (std::size_t t = 0; t < letters.size(); ++t) {
    for (const auto& [name, value] : letters[t]) {
      auto [it, inserted] = columns.try_emplace(name);
      if (inserted) it->second.assign(letters.size(), false);
      it->second[t] = value;
    }
  }
  // A proposition missing from some letter is unassigned there; the
  // evaluator only sees columns present in every letter.
  for (auto& [name, values] : columns) {
    bool complete = true;
    for (const auto& letter : letters) {
      if (!letter.contains(name)) {
        complete = false;
        break;
      }
    }
    if (complete) out.set(name, std::move(values));
  }
  return out;
}

void PropositionTrace::set(std::string name, std::vector<bool> values) {
  if (values.size() != length_) {
    throw std::invalid_argument("column '" + name + "' has " + std::to_string(values.size()) +
                                " values, trace length is " + std::to_string(length_));
  }
  columns_[std::move(name)] = std::move(values);
}

const std::vector<bool>* PropositionTrace::find(std::string_view name) const {
  auto it = columns_.find(name);
  return it == columns_.end() ? nullptr : &it->second;
}

const std::vector<bool>& PropositionTrace::column(std::string_view name) const {
  if (const auto* c = find(name)) return *c;
  throw EvaluationError("unassigned proposition '" + std::string(name) + "'");
}

Valuation PropositionTrace::at(std::size_t position) const {
  Valuation v;
  for (const auto& [name, values] : columns_) v.emplace(name, values.at(position));
  return v;
}

std::vector<bool> evaluate_all(const Formula& f, const PropositionTrace& trace) {
  const std::size_t n = trace.length();
  const auto order = ltl::subformulas(f);
  std::unordered_map<Formula, std::size_t, ltl::FormulaHash> index;
  std::vector<std::vector<bool>> truth(order.size());

  auto of = [&](const Formula& sub) -> const std::vector<bool>& { return truth[index.at(sub)]; };

  for (std::size_t k = 0; k < order.size(); ++k) {
    const Formula& g = order[k];
    std::vector<bool> v(n, false);
    switch (g.kind()) {
      case Kind::True:
        v.assign(n, true);
        break;
      case Kind::False:
        break;
      case Kind::Atom:
        v = trace.column(g.name());
        break;
      case Kind::Not: {
        const auto& a = of(g.child());
        for (std::size_t t = 0; t < n; ++t) v[t] = !a[t];
        break;
      }
      case Kind::And:
      case Kind::Or:
      case Kind::Implies: {
        const auto& a = of(g.left());
        const auto& b = of(g.right());
        for (std::size_t t = 0; t < n; ++t) {
          if (g.kind() == Kind::And) v[t] = a[t] && b[t];
          else if (g.kind() == Kind::Or) v[t] = a[t] || b[t];
          else v[t] = !a[t] || b[t];
        }
        break;
      }
      case Kind::Next:
      case Kind::WeakNext: {
        const auto& a = of(g.child());
        for (std::size_t t = 0; t < n; ++t) v[t] = (t + 1 < n) ? a[t + 1] : g.kind() == Kind::WeakNext;
        break;
      }
      case Kind::Until: {
        // U(t) = b(t) | (a(t) & U(t+1)), U(n) = false
        const auto& a = of(g.left());
        const auto& b = of(g.right());
        bool later = false;
        for (std::size_t t = n; t-- > 0;) v[t] = later = b[t] || (a[t] && later);
        break;
      }
      case Kind::Release: {
        // R(t) = b(t) & (a(t) | R(t+1)), R(n) = true
        const auto& a = of(g.left());
        const auto& b = of(g.right());
        bool later = true;
        for (std::size_t t = n; t-- > 0;) v[t] = later = b[t] && (a[t] || later);
        break;
      }
      case Kind::Globally: {
        const auto& a = of(g.child());
        bool later = true;
        for (std::size_t t = n; t-- > 0;) v[t] = later = a[t] && later;
        break;
      }
      case Kind::Finally: {
        const auto& a = of(g.child());
        bool later = false;
        for (std::size_t t = n; t-- > 0;) v[t] = later = a[t] || later;
        break;
      }
    }
    truth[k] = std::move(v);
    index.emplace(g, k);
  }
  return std::move(truth.back());
}

std::vector<bool> evaluate_all(const Formula& f, std::span<const Valuation> trace) {
  return evaluate_all(f, PropositionTrace::from_valuations(trace));
}

bool evaluate_naive(const Formula& f, std::span<const Valuation> trace, std::size_t position) {
  if (position >= trace.size()) {
    throw EvaluationError("position " + std::to_string(position) + " out of range for trace of length " +
                          std::to_string(trace.size()));
  }
  return evaluate_all(f, trace)[position];
}

}  // namespace rulemon::monitor
