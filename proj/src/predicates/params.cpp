#include "rulemon/predicates/params.hpp"

#include <cmath>

namespace rulemon::predicates {

const std::vector<std::string>& PredicateParams::names() {
  static const std::vector<std::string> kNames{"rho_dense",     "n_dense",       "delta_near",
                                               "delta_rem",     "a_limit",       "v_thresh",
                                               "reaction_time", "decel_max_front", "decel_max_rear"};
  return kNames;
}

void PredicateParams::set(std::string_view name, double value) {
  if (!std::isfinite(value)) throw ParamError("parameter '" + std::string(name) + "' must be finite");
  if (name == "rho_dense") rho_dense = value;
  else if (name == "n_dense") {
    if (value != std::floor(value)) throw ParamError("parameter 'n_dense' must be an integer");
    n_dense = static_cast<int>(value);
  } else if (name == "delta_near") delta_near = value;
  else if (name == "delta_rem") delta_rem = value;
  else if (name == "a_limit") a_limit = value;
  else if (name == "v_thresh") v_thresh = value;
  else if (name == "reaction_time") reaction_time = value;
  else if (name == "decel_max_front") decel_max_front = value;
  else if (name == "decel_max_rear") decel_max_rear = value;
  else throw ParamError("unknown parameter '" + std::string(name) + "'");
}

double PredicateParams::get(std::string_view name) const {
  if (name == "rho_dense") return rho_dense;
  if (name == "n_dense") return n_dense;
  if (name == "delta_near") return delta_near;
  if (name == "delta_rem") return delta_rem;
  if (name == "a_limit") return a_limit;
  if (name == "v_thresh") return v_thresh;
  if (name == "reaction_time") return reaction_time;
  if (name == "decel_max_front") return decel_max_front;
  if (name == "decel_max_rear") return decel_max_rear;
  throw ParamError("unknown parameter '" + std::string(name) + "'");
}

void PredicateParams::validate() const {
  for (const auto& name : names()) {
    if (!(get(name) > 0.0)) throw ParamError("parameter '" + name + "' must be strictly positive");
  }
}

PredicateParams PredicateParams::with(const std::map<std::string, double>& overrides) const {
  PredicateParams p = *this;
  for (const auto& [k, v] : overrides) p.set(k, v);
  p.validate();
  return p;
}

}  // namespace rulemon::predicates
