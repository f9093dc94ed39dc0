#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rulemon::predicates {

enum class Predicate {
  // ego-only
  Dense,
  Merged,
  SafeDistanceFront,
  SafeDistanceRear,
  Colliding,
  LaneChange,
  LaneEnd,
  Accelerate,
  BuiltUp,
  Motorway,
  DivergingLane,
  AccelerationLane,
  // ego relative to another agent
  InDirectFront,
  Right,
  Left,
  Front,
  Behind,
  Near,
  SpeedDiff,
};

std::string_view base_name(Predicate p);
std::optional<Predicate> predicate_from_base(std::string_view base);
/// 1 for ego-only predicates, 2 for relational ones.
int predicate_arity(Predicate p);
const std::vector<Predicate>& all_predicates();

class UnknownProposition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A proposition name such as `behind_ij` resolved to its predicate and the
/// rule slots (0 = i, 1 = j, 2 = k) it applies to.
struct PropositionRef {
  Predicate predicate;
  std::vector<int> slots;
  std::string name;
};

/// Ego-only predicates without a slot suffix refer to slot i. Throws
/// UnknownProposition for an unknown base or a wrong number of slots.
PropositionRef resolve_proposition(std::string_view name);

}  // namespace rulemon::predicates
