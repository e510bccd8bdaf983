#pragma once

// Doubly symmetric binary source (S ~ Bern(1/2), U = S through BSC(alpha))
// over a binary symmetric degraded wiretap channel.

#include <optional>
#include <vector>

#include "semsec/discrete_rdf.hpp"
#include "semsec/piecewise.hpp"
#include "semsec/targets.hpp"

namespace semsec {

struct BinarySource {
  double alpha = 0.25;

  double h_s() const { return 1.0; }
  double h_u() const { return 1.0; }  // U is uniform for this source
  double h_su() const;                // 1 + H_b(alpha)
  void validate() const;
};

struct BinaryChannel {
  double eps1 = 0.1;
  double eps2 = 0.3;

  void validate() const;
};

// H_b(gamma * eps1 * eps2) - H_b(gamma * eps1)
double binary_secrecy_term(const BinaryChannel& ch, double gamma);
// 1 - H_b(eps1)
double binary_main_capacity(const BinaryChannel& ch);

// Semantic, observation and joint RDFs as used by the binary converse. The
// observation RDF of the bound's Delta_u line keeps the closed form
// binary_rdf_obs(alpha, D_u); the joint RDF uses U's actual (uniform) marginal.
double binary_converse_rdf_s(const BinarySource& src, double D_s, int encoder_case);
double binary_converse_rdf_u(const BinarySource& src, double D_u);
double binary_converse_rdf_joint(const BinarySource& src, double D_s, double D_u, int encoder_case);

// Case 1 forces gamma2 = 0. Delta_s is clamped at H(S) = 1, Delta_u at
// H(U) = 1, Delta_su at H(S,U) = 1 + H_b(alpha).
EquivocationCaps binary_converse_caps(const BinarySource& src, const BinaryChannel& ch, double D_s, double D_u,
                                      double r, double R_k, double gamma1, double gamma2, int encoder_case);

MinRate binary_min_r(const BinarySource& src, const BinaryChannel& ch, double D_s, double D_u,
                     const EquivocationTargets& targets, double gamma1, double gamma2, int encoder_case);

struct CurvePoint {
  double D_s = 0.0;
  double raw = 0.0;    // Delta_s bound before the entropy clamp
  double value = 0.0;  // after the clamp
  bool capped = false;
};

struct DeltaSCurve {
  std::vector<CurvePoint> points;
  std::optional<double> saturation;  // smallest grid D_s where the clamp fires
};

// Grid points where the Case-1 semantic RDF is infinite are dropped; an empty
// result throws std::invalid_argument.
DeltaSCurve delta_s_curve(const BinarySource& src, const BinaryChannel& ch, double r, double D_u, double R_k,
                          const std::vector<double>& D_s_grid, int encoder_case, double gamma1 = 0.0);

}  // namespace semsec
