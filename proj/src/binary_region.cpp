#include "semsec/binary_region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "semsec/errors.hpp"

namespace semsec {
namespace {

constexpr double kTargetTol = 1e-9;

void check_case(int c) {
  if (c != 1 && c != 2) throw std::invalid_argument("encoder case must be 1 or 2");
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error(std::string(name) + " must lie in [0, 1]");
}

Cap make_cap(double raw, double entropy) {
  Cap c;
  c.raw = raw;
  c.capped = raw > entropy;
  c.value = c.capped ? entropy : raw;
  return c;
}

}  // namespace

double BinarySource::h_su() const { return 1.0 + binary_entropy(alpha); }

void BinarySource::validate() const {
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw ValidationError("source.alpha", "must lie in [0, 0.5]");
}

void BinaryChannel::validate() const {
  if (!(eps1 >= 0.0 && eps1 <= 0.5)) throw ValidationError("channel.eps1", "must lie in [0, 0.5]");
  if (!(eps2 >= 0.0 && eps2 <= 0.5)) throw ValidationError("channel.eps2", "must lie in [0, 0.5]");
}

double binary_secrecy_term(const BinaryChannel& ch, double gamma) {
  check_unit(gamma, "gamma");
  const double ge = star(gamma, ch.eps1);
  return std::max(binary_entropy(star(ge, ch.eps2)) - binary_entropy(ge), 0.0);
}

double binary_main_capacity(const BinaryChannel& ch) { return 1.0 - binary_entropy(ch.eps1); }

double binary_converse_rdf_s(const BinarySource& src, double D_s, int encoder_case) {
  return binary_rdf_sem(src.alpha, D_s, encoder_case);
}

double binary_converse_rdf_u(const BinarySource& src, double D_u) { return binary_rdf_obs(src.alpha, D_u); }

double binary_converse_rdf_joint(const BinarySource& src, double D_s, double D_u, int encoder_case) {
  return binary_rdf_joint(src.alpha, D_s, D_u, encoder_case);
}

EquivocationCaps binary_converse_caps(const BinarySource& src, const BinaryChannel& ch, double D_s, double D_u,
                                      double r, double R_k, double gamma1, double gamma2, int encoder_case) {
  check_case(encoder_case);
  check_unit(gamma1, "gamma1");
  check_unit(gamma2, "gamma2");
  if (!(r >= 0.0)) throw std::domain_error("r must be nonnegative");
  if (encoder_case == 1) gamma2 = 0.0;

  EquivocationCaps caps;
  const double rs = binary_converse_rdf_s(src, D_s, encoder_case);
  if (std::isinf(rs)) {
    caps.feasible = false;
    caps.reason = "D_s below the Case-1 floor alpha";
    return caps;
  }
  const double rj = binary_converse_rdf_joint(src, D_s, D_u, encoder_case);
  const double hb = binary_entropy(src.alpha);
  caps.s = make_cap(R_k + r * binary_secrecy_term(ch, gamma1) + 1.0 - rs, src.h_s());
  caps.u = make_cap(R_k + r * binary_secrecy_term(ch, gamma2) + hb - binary_converse_rdf_u(src, D_u), src.h_u());
  caps.su = make_cap(R_k + r * binary_secrecy_term(ch, 0.0) + hb + 1.0 - rj, src.h_su());
  return caps;
}

MinRate binary_min_r(const BinarySource& src, const BinaryChannel& ch, double D_s, double D_u,
                     const EquivocationTargets& targets, double gamma1, double gamma2, int encoder_case) {
  check_case(encoder_case);
  check_unit(gamma1, "gamma1");
  check_unit(gamma2, "gamma2");
  if (encoder_case == 1) gamma2 = 0.0;

  const double rs = binary_converse_rdf_s(src, D_s, encoder_case);
  if (std::isinf(rs)) return {false, 0.0, "D_s below the Case-1 floor alpha"};
  const double rj = binary_converse_rdf_joint(src, D_s, D_u, encoder_case);
  const double cap = binary_main_capacity(ch);
  if (cap <= 0.0) {
    if (rj > kTargetTol) return {false, 0.0, "main channel has zero capacity"};
  }
  const double hb = binary_entropy(src.alpha);

  MinRate out{true, cap > 0.0 ? rj / cap : 0.0, {}};
  // `offset` is the r-free part of the bound (H term minus RDF), `entropy` the clamp.
  auto secrecy = [&](double target, double offset, double entropy, double slope, const char* name) {
    if (!out.feasible || !EquivocationTargets::active(target)) return;
    if (target > entropy + kTargetTol) {
      out = {false, 0.0, std::string(name) + " target exceeds the source entropy"};
      return;
    }
    const double need = target - targets.R_k - offset;
    if (need <= kTargetTol) return;
    if (slope <= 0.0) {
      out = {false, 0.0, std::string(name) + " target needs a positive secrecy capacity"};
      return;
    }
    out.r = std::max(out.r, need / slope);
  };
  secrecy(targets.delta_s, 1.0 - rs, src.h_s(), binary_secrecy_term(ch, gamma1), "delta_s");
  secrecy(targets.delta_u, hb - binary_converse_rdf_u(src, D_u), src.h_u(), binary_secrecy_term(ch, gamma2),
          "delta_u");
  secrecy(targets.delta_su, hb + 1.0 - rj, src.h_su(), binary_secrecy_term(ch, 0.0), "delta_su");
  if (out.feasible) {
    auto fires = [&](double target, double offset, double entropy, double slope) {
      return EquivocationTargets::active(target) && targets.R_k + out.r * slope + offset > entropy;
    };
    out.capped = fires(targets.delta_s, 1.0 - rs, src.h_s(), binary_secrecy_term(ch, gamma1)) ||
                 fires(targets.delta_u, hb - binary_converse_rdf_u(src, D_u), src.h_u(),
                       binary_secrecy_term(ch, gamma2)) ||
                 fires(targets.delta_su, hb + 1.0 - rj, src.h_su(), binary_secrecy_term(ch, 0.0));
  }
  return out;
}

DeltaSCurve delta_s_curve(const BinarySource& src, const BinaryChannel& ch, double r, double D_u, double R_k,
                          const std::vector<double>& D_s_grid, int encoder_case, double gamma1) {
  check_case(encoder_case);
  if (!(r >= 0.0)) throw std::domain_error("r must be nonnegative");
  (void)D_u;  // the semantic bound does not involve the observation distortion
  const double slope = binary_secrecy_term(ch, gamma1);
  DeltaSCurve curve;
  for (double ds : D_s_grid) {
    const double rs = binary_converse_rdf_s(src, ds, encoder_case);
    if (std::isinf(rs)) continue;
    const Cap c = make_cap(R_k + r * slope + 1.0 - rs, src.h_s());
    curve.points.push_back({ds, c.raw, c.value, c.capped});
    if (c.capped && !curve.saturation) curve.saturation = ds;
  }
  if (curve.points.empty()) throw std::invalid_argument("delta_s_curve: no feasible D_s in the grid");
  return curve;
}

}  // namespace semsec
