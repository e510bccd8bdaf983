#include "semsec/gaussian_region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "semsec/errors.hpp"

namespace semsec {
namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;
constexpr double kTargetTol = 1e-9;

double half_log2_plus(double ratio) { return ratio > 1.0 ? 0.5 * std::log2(ratio) : 0.0; }

void check_case(int c) {
  if (c != 1 && c != 2) throw std::invalid_argument("encoder case must be 1 or 2");
}

void check_beta(double b, const char* name) {
  if (!(b >= 0.0 && b <= 1.0)) throw std::domain_error(std::string(name) + " must lie in [0, 1]");
}

Cap make_cap(double raw, double entropy) {
  Cap c;
  c.raw = raw;
  c.capped = raw > entropy;
  c.value = c.capped ? entropy : raw;
  return c;
}

}  // namespace

void EquivocationTargets::validate() const {
  auto check = [](double v, const char* path) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw ValidationError(path, "target must be finite or disabled");
    }
  };
  check(delta_s, "targets.delta_s");
  check(delta_u, "targets.delta_u");
  check(delta_su, "targets.delta_su");
  if (!(R_k >= 0.0) || !std::isfinite(R_k)) throw ValidationError("targets.R_k", "key rate must be finite and >= 0");
}

CovMatrix GaussianSource::K() const {
  Eigen::MatrixXd k(2, 2);
  k << P_s, P_su, P_su, P_u;
  return CovMatrix(k, {"S", "U"});
}

double GaussianSource::h_s() const { return 0.5 * std::log2(kTwoPiE * P_s); }
double GaussianSource::h_u() const { return 0.5 * std::log2(kTwoPiE * P_u); }
double GaussianSource::h_su() const { return std::log2(kTwoPiE) + 0.5 * std::log2(det()); }

void GaussianSource::validate() const {
  if (!(P_s > 0.0) || !std::isfinite(P_s)) throw ValidationError("source.P_s", "must be positive");
  if (!(P_u > 0.0) || !std::isfinite(P_u)) throw ValidationError("source.P_u", "must be positive");
  if (!std::isfinite(P_su)) throw ValidationError("source.P_su", "must be finite");
  if (det() < 0.0) throw ValidationError("source.P_su", "covariance block K is not positive semidefinite");
}

CovMatrix GaussianChannel::xyz() const {
  Eigen::MatrixXd m(3, 3);
  m << P, P, P, P, P + P_N1, P + P_N1, P, P + P_N1, P + P_N();
  return CovMatrix(m, {"X", "Y", "Z"});
}

void GaussianChannel::validate() const {
  if (!(P > 0.0) || !std::isfinite(P)) throw ValidationError("channel.P", "must be positive");
  if (!(P_N1 > 0.0) || !std::isfinite(P_N1)) throw ValidationError("channel.P_N1", "must be positive");
  if (!(P_N2 >= 0.0) || !std::isfinite(P_N2)) throw ValidationError("channel.P_N2", "must be nonnegative");
}

double gaussian_rdf_obs(const GaussianSource& src, double D_u) {
  if (!(D_u > 0.0)) throw std::domain_error("D_u must be positive");
  return half_log2_plus(src.P_u / D_u);
}

double gaussian_rdf_sem(const GaussianSource& src, double D_s, int encoder_case) {
  check_case(encoder_case);
  if (!(D_s > 0.0)) throw std::domain_error("D_s must be positive");
  if (encoder_case == 2) return half_log2_plus(src.P_s / D_s);
  const double floor = src.case1_floor();
  if (D_s <= floor) return std::numeric_limits<double>::infinity();
  return half_log2_plus(src.rho2() * src.P_s / (D_s - floor));
}

double gaussian_rdf_joint(const GaussianSource& src, double D_s, double D_u, int encoder_case) {
  check_case(encoder_case);
  if (!(D_s > 0.0) || !(D_u > 0.0)) throw std::domain_error("distortions must be positive");
  if (encoder_case == 1) {
    const double rs = gaussian_rdf_sem(src, D_s, 1);
    if (std::isinf(rs)) return rs;
    return std::max(gaussian_rdf_obs(src, D_u), rs);
  }
  const double hs = std::max(src.P_s - D_s, 0.0);
  const double hu = std::max(src.P_u - D_u, 0.0);
  if (hs == 0.0 && hu == 0.0) return 0.0;
  if (hs == 0.0) return gaussian_rdf_obs(src, D_u);
  if (hu == 0.0) return gaussian_rdf_sem(src, D_s, 2);
  const double rho2 = src.rho2();
  // Only the semantic constraint binds; the observation estimate comes for free.
  if (rho2 * hs * src.P_u > hu * src.P_s) return 0.5 * std::log2(src.P_s / D_s);
  // Mirror regime (only the observation constraint binds).
  if (rho2 * hu * src.P_s > hs * src.P_u) return 0.5 * std::log2(src.P_u / D_u);
  if (rho2 * src.P_s * src.P_u < hs * hu) return 0.5 * std::log2(src.det() / (D_s * D_u));
  const double corr = std::sqrt(rho2 * src.P_s * src.P_u) - std::sqrt(hs * hu);
  return 0.5 * std::log2(src.det() / (D_s * D_u - corr * corr));
}

double secrecy_term(const GaussianChannel& ch, double beta) {
  check_beta(beta, "beta");
  const double v = 0.5 * (std::log2(1.0 + beta * ch.P / ch.P_N1) - std::log2(1.0 + beta * ch.P / ch.P_N()));
  return std::max(v, 0.0);
}

double main_capacity(const GaussianChannel& ch) { return 0.5 * std::log2(1.0 + ch.P / ch.P_N1); }

EquivocationCaps converse_equivocation_caps(const GaussianSource& src, const GaussianChannel& ch, double D_s,
                                            double D_u, double r, double R_k, double beta1, double beta2,
                                            int encoder_case) {
  check_case(encoder_case);
  check_beta(beta1, "beta1");
  check_beta(beta2, "beta2");
  if (!(r >= 0.0)) throw std::domain_error("r must be nonnegative");
  if (encoder_case == 1) beta2 = 1.0;

  EquivocationCaps caps;
  const double rs = gaussian_rdf_sem(src, D_s, encoder_case);
  const double ru = gaussian_rdf_obs(src, D_u);
  const double rj = gaussian_rdf_joint(src, D_s, D_u, encoder_case);
  if (std::isinf(rs) || std::isinf(rj)) {
    caps.feasible = false;
    caps.reason = "D_s below the Case-1 floor";
    return caps;
  }
  caps.s = make_cap(R_k + r * secrecy_term(ch, beta1) + src.h_s() - rs, src.h_s());
  caps.u = make_cap(R_k + r * secrecy_term(ch, beta2) + src.h_u() - ru, src.h_u());
  caps.su = make_cap(R_k + r * secrecy_term(ch, 1.0) + src.h_su() - rj, src.h_su());
  return caps;
}

MinRate converse_min_r(const GaussianSource& src, const GaussianChannel& ch, double D_s, double D_u,
                       const EquivocationTargets& targets, double beta1, double beta2, int encoder_case) {
  check_case(encoder_case);
  check_beta(beta1, "beta1");
  check_beta(beta2, "beta2");
  if (encoder_case == 1) beta2 = 1.0;

  const double rs = gaussian_rdf_sem(src, D_s, encoder_case);
  const double rj = gaussian_rdf_joint(src, D_s, D_u, encoder_case);
  if (std::isinf(rs) || std::isinf(rj)) return {false, 0.0, "D_s below the Case-1 floor"};
  const double ru = gaussian_rdf_obs(src, D_u);

  MinRate out{true, rj / main_capacity(ch), {}};
  auto secrecy = [&](double target, double entropy, double rdf, double slope, const char* name) {
    if (!out.feasible || !EquivocationTargets::active(target)) return;
    if (target > entropy + kTargetTol) {
      out = {false, 0.0, std::string(name) + " target exceeds the source entropy"};
      return;
    }
    const double need = target - targets.R_k - entropy + rdf;
    if (need <= kTargetTol) return;
    if (slope <= 0.0) {
      out = {false, 0.0, std::string(name) + " target needs a positive secrecy capacity"};
      return;
    }
    out.r = std::max(out.r, need / slope);
  };
  secrecy(targets.delta_s, src.h_s(), rs, secrecy_term(ch, beta1), "delta_s");
  secrecy(targets.delta_u, src.h_u(), ru, secrecy_term(ch, beta2), "delta_u");
  secrecy(targets.delta_su, src.h_su(), rj, secrecy_term(ch, 1.0), "delta_su");
  if (out.feasible) {
    // The clamp at h fires when R_k + r C_s exceeds the RDF.
    auto fires = [&](double target, double rdf, double slope) {
      return EquivocationTargets::active(target) && targets.R_k + out.r * slope > rdf;
    };
    out.capped = fires(targets.delta_s, rs, secrecy_term(ch, beta1)) ||
                 fires(targets.delta_u, ru, secrecy_term(ch, beta2)) ||
                 fires(targets.delta_su, rj, secrecy_term(ch, 1.0));
  }
  return out;
}

}  // namespace semsec
