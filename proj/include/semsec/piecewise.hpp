#pragma once

#include <span>
#include <string>

namespace semsec {

// f(r) = a + b r - [c + d r]^+, required f(r) >= -tol. Concave in r, so each
// constraint's feasible set on r >= 0 is an interval.
struct PiecewiseConstraint {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  bool bracket = false;
  std::string name;

  double operator()(double r) const;
};

struct MinRate {
  bool feasible = true;
  double r = 0.0;
  std::string reason;  // failing constraint when infeasible
  bool capped = false; // converse only: an entropy clamp fires at r
};

// Infimum of {r >= 0 : every constraint holds}. Candidates are r = 0 and the
// roots of every linear piece; the infimum of an intersection of closed
// intervals is one of them.
MinRate min_feasible_r(std::span<const PiecewiseConstraint> constraints, double tol = 1e-9);

}  // namespace semsec
