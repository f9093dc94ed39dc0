#include "rulemon/predicates/proposition.hpp"

#include "rulemon/ltl/rule.hpp"

namespace rulemon::predicates {

const std::vector<Predicate>& all_predicates() {
  static const std::vector<Predicate> kAll{
      Predicate::Dense,         Predicate::Merged,           Predicate::SafeDistanceFront,
      Predicate::SafeDistanceRear, Predicate::Colliding,     Predicate::LaneChange,
      Predicate::LaneEnd,       Predicate::Accelerate,       Predicate::BuiltUp,
      Predicate::Motorway,      Predicate::DivergingLane,    Predicate::AccelerationLane,
      Predicate::InDirectFront, Predicate::Right,            Predicate::Left,
      Predicate::Front,         Predicate::Behind,           Predicate::Near,
      Predicate::SpeedDiff};
  return kAll;
}

std::string_view base_name(Predicate p) {
  switch (p) {
    case Predicate::Dense: return "dense";
    case Predicate::Merged: return "merged";
    case Predicate::SafeDistanceFront: return "sd_front";
    case Predicate::SafeDistanceRear: return "sd_rear";
    case Predicate::Colliding: return "colliding";
    case Predicate::LaneChange: return "lane_change";
    case Predicate::LaneEnd: return "lane_end";
    case Predicate::Accelerate: return "accelerate";
    case Predicate::BuiltUp: return "built_up";
    case Predicate::Motorway: return "motorway";
    case Predicate::DivergingLane: return "diverging_lane";
    case Predicate::AccelerationLane: return "acceleration_lane";
    case Predicate::InDirectFront: return "in_direct_front";
    case Predicate::Right: return "right";
    case Predicate::Left: return "left";
    case Predicate::Front: return "front";
    case Predicate::Behind: return "behind";
    case Predicate::Near: return "near";
    case Predicate::SpeedDiff: return "speed_diff";
  }
  return "?";
}

std::optional<Predicate> predicate_from_base(std::string_view base) {
  for (Predicate p : all_predicates()) {
    if (base_name(p) == base) return p;
  }
  return std::nullopt;
}

int predicate_arity(Predicate p) { return p >= Predicate::InDirectFront ? 2 : 1; }

PropositionRef resolve_proposition(std::string_view name) {
  const auto split = ltl::split_agent_slots(name);
  auto p = predicate_from_base(split.base);
  std::vector<int> slots = split.slots;
  if (!p) {
    // A base that itself ends in a slot-like suffix is not ambiguous here:
    // try the full name as a suffix-free ego predicate.
    p = predicate_from_base(name);
    if (!p) throw UnknownProposition("unknown proposition '" + std::string(name) + "'");
    slots.clear();
  }
  const int arity = predicate_arity(*p);
  if (arity == 1 && slots.empty()) slots.push_back(0);
  if (static_cast<int>(slots.size()) != arity) {
    throw UnknownProposition("proposition '" + std::string(name) + "' needs " + std::to_string(arity) +
                             " agent slot(s), e.g. '" + std::string(base_name(*p)) + (arity == 1 ? "_i'" : "_ij'"));
  }
  return {*p, std::move(slots), std::string(name)};
}

}  // namespace rulemon::predicates
