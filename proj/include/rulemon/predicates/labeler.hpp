#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rulemon/predicates/params.hpp"
#include "rulemon/predicates/proposition.hpp"
#include "rulemon/world/trace.hpp"

namespace rulemon::predicates {

using world::AgentId;
using world::Lifespan;
using world::Trace;

/// Values of one proposition for one agent tuple over the tuple's joint
/// lifespan; values[n] belongs to scene `first + n`.
struct LabelTrace {
  std::string proposition;
  std::vector<AgentId> tuple;
  std::size_t first = 0;
  std::vector<bool> values;
};

/// Scene indices during which every agent of the tuple is present; empty
/// if they never coexist.
std::optional<Lifespan> joint_lifespan(const Trace& trace, std::span<const AgentId> tuple);

/*
 * Evaluates propositions on a trace. Construction precomputes the
 * parameter-independent structure (lane neighbours per scene, the merged
 * latch, lane changes); everything else is computed on demand. The object
 * is read-only afterwards and may be shared between threads.
 */
class Labeler {
 public:
  Labeler(const Trace& trace, PredicateParams params);

  const Trace& trace() const { return *trace_; }
  const PredicateParams& params() const { return params_; }

  /// Throws std::out_of_range if an agent is absent at t or a slot is
  /// beyond the tuple.
  bool value(const PropositionRef& prop, std::span<const AgentId> tuple, std::size_t t,
             const PredicateParams& p) const;
  bool value(const PropositionRef& prop, std::span<const AgentId> tuple, std::size_t t) const {
    return value(prop, tuple, t, params_);
  }

  /// Labels over the joint lifespan (empty values if the agents never meet).
  LabelTrace label(const PropositionRef& prop, std::span<const AgentId> tuple, const PredicateParams& p) const;
  LabelTrace label(const PropositionRef& prop, std::span<const AgentId> tuple) const {
    return label(prop, tuple, params_);
  }

  std::optional<AgentId> predecessor(AgentId i, std::size_t t) const;
  std::optional<AgentId> follower(AgentId i, std::size_t t) const;
  /// True from the first scene in which i is past its lane's merge point.
  bool merged(AgentId i, std::size_t t) const;
  /// False at the agent's first scene.
  bool lane_change(AgentId i, std::size_t t) const;

 private:
  struct Neighbours {
    std::optional<AgentId> ahead;
    std::optional<AgentId> behind;
  };

  const Neighbours& neighbours(AgentId i, std::size_t t) const;

  const Trace* trace_;
  PredicateParams params_;
  std::vector<std::map<AgentId, Neighbours>> neighbours_;
  std::map<AgentId, std::size_t> merged_from_;
};

}  // namespace rulemon::predicates
