#include "rulemon/engine/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "rulemon/engine/metrics.hpp"
#include "rulemon/ltl/parser.hpp"
#include "rulemon/ltl/transform.hpp"
#include "rulemon/monitor/evaluate.hpp"
#include "rulemon/predicates/predicates.hpp"

namespace rulemon::engine {

namespace {

bool coexist(const Trace& trace, std::span<const AgentId> tuple) {
  return predicates::joint_lifespan(trace, tuple).has_value();
}

}  // namespace

Engine::Engine(std::vector<ltl::Rule> rules, EngineOptions options) : options_(std::move(options)) {
  options_.params.validate();
  if (options_.workers == 0) options_.workers = 1;
  for (auto& rule : rules) {
    rule.validate();
    CompiledRule c{rule, monitor::compile(rule.as_formula(), options_.compile), {}, options_.params.with(rule.params),
                   rule.premise.kind() == ltl::Kind::True};
    if (options_.minimize) c.monitor = monitor::minimize(c.monitor);
    for (const auto& atom : ltl::atoms(rule.as_formula())) {
      try {
        c.propositions.push_back(predicates::resolve_proposition(atom));
      } catch (const predicates::UnknownProposition& e) {
        throw std::invalid_argument("rule '" + rule.name + "': " + e.what());
      }
    }
    rules_.push_back(std::move(c));
  }
}

std::vector<RuleInstance> Engine::instantiate(const Trace& trace, const predicates::Labeler& labeler) const {
  const std::vector<AgentId> agents = trace.agents();
  const double reach = 2.0 * options_.params.rho_dense;

  std::set<std::vector<AgentId>> pairs;
  std::set<std::vector<AgentId>> triples;
  const bool need_pairs = std::any_of(rules_.begin(), rules_.end(), [](const auto& r) { return r.rule.arity == 2; });
  const bool need_triples = std::any_of(rules_.begin(), rules_.end(), [](const auto& r) { return r.rule.arity == 3; });

  if (options_.prune) {
    for (std::size_t t = 0; t < trace.size(); ++t) {
      const auto& scene = trace.scene(t);
      for (const auto& [i, a] : scene.agents) {
        if (need_pairs) {
          for (const auto& [j, b] : scene.agents) {
            if (i != j && world::norm(a.position() - b.position()) < reach) pairs.insert({i, j});
          }
        }
        if (!need_triples) continue;
        const auto j = labeler.predecessor(i, t);
        if (!j) continue;
        const auto rights = trace.map().right_chain(a.lane);
        for (const auto& [k, c] : scene.agents) {
          if (k == i || k == *j) continue;
          if (std::find(rights.begin(), rights.end(), c.lane) == rights.end()) continue;
          if (!trace.map().lane(c.lane).end_s) continue;
          if (world::norm(a.position() - c.position()) < reach) triples.insert({i, *j, k});
        }
      }
    }
  } else {
    for (AgentId i : agents) {
      for (AgentId j : agents) {
        if (i == j) continue;
        const std::vector<AgentId> ij{i, j};
        if (!coexist(trace, ij)) continue;
        if (need_pairs) pairs.insert(ij);
        if (!need_triples) continue;
        for (AgentId k : agents) {
          const std::vector<AgentId> ijk{i, j, k};
          if (k != i && k != j && coexist(trace, ijk)) triples.insert(ijk);
        }
      }
    }
  }

  std::vector<RuleInstance> out;
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const auto add = [&](const std::vector<AgentId>& tuple) {
      if (auto joint = predicates::joint_lifespan(trace, tuple)) out.push_back({r, tuple, *joint});
    };
    switch (rules_[r].rule.arity) {
      case 1:
        for (AgentId i : agents) add({i});
        break;
      case 2:
        for (const auto& p : pairs) add(p);
        break;
      default:
        for (const auto& p : triples) add(p);
        break;
    }
  }
  return out;
}

InstanceResult Engine::evaluate(const predicates::Labeler& labeler, const RuleInstance& instance) const {
  const CompiledRule& rule = rules_.at(instance.rule);
  InstanceResult out;
  out.rule = instance.rule;
  out.tuple = instance.tuple;
  out.first = instance.active.first;
  try {
    const std::size_t length = instance.active.length();
    monitor::PropositionTrace labels(length);
    for (const auto& prop : rule.propositions) {
      auto lt = labeler.label(prop, instance.tuple, rule.params);
      if (lt.first != instance.active.first || lt.values.size() != length) {
        throw std::logic_error("label trace does not cover the instance lifespan");
      }
      labels.set(prop.name, std::move(lt.values));
    }

    const auto& alphabet = rule.monitor.alphabet();
    std::vector<const std::vector<bool>*> columns;
    for (const auto& name : alphabet) columns.push_back(&labels.column(name));
    monitor::MonitorRun run(rule.monitor);
    monitor::Verdict verdict;
    for (std::size_t t = 0; t < length && verdict.value == monitor::VerdictValue::Inconclusive; ++t) {
      monitor::Letter letter = 0;
      for (std::size_t b = 0; b < columns.size(); ++b) {
        if ((*columns[b])[t]) letter |= monitor::Letter{1} << b;
      }
      verdict = run.step(letter);
    }
    // The tuple's joint lifespan ends here: a partner leaving ends the trace.
    if (verdict.value == monitor::VerdictValue::Inconclusive) verdict = run.finalize();
    out.verdict = verdict.value;
    if (verdict.value == monitor::VerdictValue::Violated && verdict.position) {
      out.violated_at = out.first + *verdict.position;
    }

    const auto premise = monitor::evaluate_all(rule.rule.premise, labels);
    const auto conclusion = monitor::evaluate_all(rule.rule.conclusion, labels);
    for (std::size_t t = 0; t < length; ++t) {
      if (!premise[t]) continue;
      out.premise_frames.push_back(out.first + t);
      if (!conclusion[t]) out.violation_frames.push_back(out.first + t);
    }
    const bool holds = length == 0 || monitor::evaluate_all(rule.rule.as_formula(), labels).front();
    out.oracle_agrees = holds == (verdict.value == monitor::VerdictValue::Satisfied);
  } catch (const std::exception& e) {
    out.error = "rule '" + rule.rule.name + "', agents " + tuple_string(instance.tuple) + ": " + e.what();
  }
  return out;
}

ViolationReport Engine::run(const Trace& trace) const {
  const predicates::Labeler labeler(trace, options_.params);
  return run(trace, labeler, instantiate(trace, labeler));
}

ViolationReport Engine::run(const Trace& trace, const predicates::Labeler& labeler,
                            const std::vector<RuleInstance>& instances) const {
  ViolationReport report;
  report.trace_length = trace.size();
  report.lifespans = trace.lifespans();
  report.instances.resize(instances.size());

  // Each worker writes only its own result slots, so the merged report does
  // not depend on scheduling.
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t n = next++; n < instances.size(); n = next++) {
      report.instances[n] = evaluate(labeler, instances[n]);
    }
  };
  const std::size_t workers = std::min(options_.workers, std::max<std::size_t>(instances.size(), 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  for (const auto& r : report.instances) {
    if (r.error) report.diagnostics.push_back(*r.error);
    else if (!r.oracle_agrees) {
      report.diagnostics.push_back("rule '" + rules_[r.rule].rule.name + "', agents " + tuple_string(r.tuple) +
                                   ": monitor verdict disagrees with direct evaluation");
    }
  }
  report.rules = summarize(trace, rules_, report.instances, options_.denominator);
  return report;
}

std::string tuple_string(const std::vector<AgentId>& tuple) {
  std::string s;
  for (AgentId id : tuple) s += (s.empty() ? "" : ":") + std::to_string(id);
  return s;
}

std::vector<ltl::Rule> select_rules(const std::vector<ltl::Rule>& rules, const std::vector<std::string>& selection) {
  if (selection.empty() || std::find(selection.begin(), selection.end(), "all") != selection.end()) return rules;
  std::vector<ltl::Rule> out;
  for (const auto& name : selection) {
    auto it = std::find_if(rules.begin(), rules.end(), [&](const auto& r) { return r.name == name; });
    if (it == rules.end()) throw std::invalid_argument("unknown rule '" + name + "'");
    if (std::none_of(out.begin(), out.end(), [&](const auto& r) { return r.name == name; })) out.push_back(*it);
  }
  return out;
}

}  // namespace rulemon::engine
