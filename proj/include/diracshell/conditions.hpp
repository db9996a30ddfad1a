#pragma once

#include <string>
#include <vector>

#include "diracshell/bem2d.hpp"

namespace dshell {

// One sufficient condition for self-adjointness, with the numbers compared.
struct ConditionCheck {
  std::string name;       // "i" .. "vi", "lambda0_small_d", "lambda0_large_d"
  std::string statement;  // the inequality in words
  bool applicable = true; // false when a side condition (lambda != 0, ...) fails
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ConditionReport {
  double omega_min = 0.0;
  double omega_max = 0.0;
  double norm_c = 0.0;  // ||C_z^N|| at the caller's reference z only
  std::vector<ConditionCheck> conditions;
  bool certified = false;  // some condition holds
  std::string verdict;
};

ConditionReport check_selfadjointness_conditions(const InteractionStrengths& s, const OmegaBounds& bounds,
                                                 double norm_c);

}  // namespace dshell
