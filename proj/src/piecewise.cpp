#include "semsec/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace semsec {

double PiecewiseConstraint::operator()(double r) const {
  double v = a + b * r;
  if (bracket) v -= std::max(0.0, c + d * r);
  return v;
}

namespace {

void push_root(std::vector<double>& out, double a, double b) {
  if (b == 0.0) return;
  const double r = -a / b;
  if (std::isfinite(r) && r > 0.0) out.push_back(r);
}

bool holds(std::span<const PiecewiseConstraint> cs, double r, double tol) {
  return std::all_of(cs.begin(), cs.end(), [&](const auto& c) { return c(r) >= -tol; });
}

}  // namespace

MinRate min_feasible_r(std::span<const PiecewiseConstraint> constraints, double tol) {
  std::vector<double> cand{0.0};
  for (const auto& c : constraints) {
    push_root(cand, c.a, c.b);
    if (c.bracket) {
      push_root(cand, c.c, c.d);                      // breakpoint
      push_root(cand, c.a - c.c, c.b - c.d);          // root of the active piece
    }
  }
  std::sort(cand.begin(), cand.end());
  for (double r : cand) {
    if (holds(constraints, r, tol)) return {true, r, {}};
  }

  // Report the first constraint that fails on its own, else the conflict.
  MinRate out{false, 0.0, "incompatible constraints"};
  for (const auto& c : constraints) {
    std::vector<double> own{0.0};
    push_root(own, c.a, c.b);
    if (c.bracket) {
      push_root(own, c.c, c.d);
      push_root(own, c.a - c.c, c.b - c.d);
    }
    const bool ok = std::any_of(own.begin(), own.end(), [&](double r) { return c(r) >= -tol; });
    if (!ok) {
      out.reason = c.name;
      break;
    }
  }
  return out;
}

}  // namespace semsec
