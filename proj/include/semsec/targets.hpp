#pragma once

#include <limits>
#include <string>

namespace semsec {

// Secrecy thresholds in bits (differential for the Gaussian model). A target
// of -inf is disabled.
struct EquivocationTargets {
  static constexpr double kOff = -std::numeric_limits<double>::infinity();

  double delta_s = kOff;
  double delta_u = kOff;
  double delta_su = kOff;
  double R_k = 0.0;

  static bool active(double t) { return t != kOff; }
  void validate() const;  // throws ValidationError
};

struct Cap {
  double raw = 0.0;    // bound as written, before the entropy clamp
  double value = 0.0;  // min(raw, entropy of the component)
  bool capped = false;
};

struct EquivocationCaps {
  bool feasible = true;
  std::string reason;
  Cap s, u, su;
};

}  // namespace semsec
