#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rulemon::predicates {

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thresholds consumed by the predicates. Defaults are the evaluation
/// settings for the highway merge scenarios; braking magnitudes are a
/// configurable assumption.
struct PredicateParams {
  double rho_dense = 20.0;        // m
  int n_dense = 8;                // agents
  double delta_near = 5.0;        // m
  double delta_rem = 20.0;        // m
  double a_limit = 0.5;           // m/s^2
  double v_thresh = 10.0 / 3.6;   // m/s
  double reaction_time = 1.0;     // s
  double decel_max_front = 6.0;   // m/s^2
  double decel_max_rear = 6.0;    // m/s^2

  /// Throws ParamError unless every value is strictly positive and n_dense >= 1.
  void validate() const;

  /// Sets a parameter by name; throws ParamError for an unknown name or a
  /// non-integral n_dense.
  void set(std::string_view name, double value);
  double get(std::string_view name) const;

  /// Copy with `overrides` applied and validated.
  PredicateParams with(const std::map<std::string, double>& overrides) const;

  static const std::vector<std::string>& names();

  friend bool operator==(const PredicateParams&, const PredicateParams&) = default;
};

}  // namespace rulemon::predicates
