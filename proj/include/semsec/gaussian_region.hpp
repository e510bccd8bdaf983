#pragma once

// Gaussian semantic source over a degraded Gaussian wiretap channel:
// closed-form RDFs, the converse bound and the Monte Carlo inner bound.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "semsec/cov_matrix.hpp"
#include "semsec/piecewise.hpp"
#include "semsec/targets.hpp"

namespace semsec {

struct GaussianSource {
  double P_s = 0.7;
  double P_u = 1.0;
  double P_su = 0.6;

  double rho2() const { return P_su * P_su / (P_s * P_u); }
  double det() const { return P_s * P_u - P_su * P_su; }
  CovMatrix K() const;
  double h_s() const;
  double h_u() const;
  double h_su() const;
  double case1_floor() const { return (1.0 - rho2()) * P_s; }
  void validate() const;
};

struct GaussianChannel {
  double P = 1.0;
  double P_N1 = 0.1;
  double P_N2 = 0.4;

  double P_N() const { return P_N1 + P_N2; }
  CovMatrix xyz() const;  // fixed (X, Y, Z) covariance block
  void validate() const;
};

double gaussian_rdf_obs(const GaussianSource& src, double D_u);
// +inf at or below the Case-1 floor.
double gaussian_rdf_sem(const GaussianSource& src, double D_s, int encoder_case);
double gaussian_rdf_joint(const GaussianSource& src, double D_s, double D_u, int encoder_case);

// 1/2 [log(1 + bP/P_N1) - log(1 + bP/P_N)]
double secrecy_term(const GaussianChannel& ch, double beta);
// 1/2 log(1 + P/P_N1)
double main_capacity(const GaussianChannel& ch);

// Case 1 forces beta2 = 1.
EquivocationCaps converse_equivocation_caps(const GaussianSource& src, const GaussianChannel& ch, double D_s,
                                            double D_u, double r, double R_k, double beta1, double beta2,
                                            int encoder_case);

MinRate converse_min_r(const GaussianSource& src, const GaussianChannel& ch, double D_s, double D_u,
                       const EquivocationTargets& targets, double beta1, double beta2, int encoder_case);

// --- Monte Carlo inner bound -------------------------------------------------

// Linear-Gaussian design of the source-side auxiliaries. With V = U (Case 1)
// or V = (S, U) (Case 2) and unit-variance independent noises n_*:
//   Sc = lc.V + n_c
//   Sp = lp.V + mp Sc + n_p
//   Uc = lu.V + mu Sc + n_uc
//   Up = lw.V + mw1 Sc + mw2 Uc + n_up
// Gains on S are ignored in Case 1, which keeps S - U - auxiliaries Markov.
struct SourceDesign {
  double lc[2]{}, lp[2]{}, lu[2]{}, lw[2]{};  // coefficients on (S, U)
  double mp = 0.0, mu = 0.0, mw1 = 0.0, mw2 = 0.0;
};

// Channel-side auxiliaries (g_* unit-variance, independent):
//   Wc = g_c,  Qs = a Wc + g_s,  Wu = b Wc + g_u,  Qu = c Wc + d Wu + g_q
//   X  = scale * (w . (Wc, Wu, Qs, Qu) + w5 g_x), scaled to power P
// so that Qs is independent of (Wu, Qu) given Wc.
struct ChannelDesign {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double w[4]{};
  double w5 = 1.0;
};

// Labels (S, U, Sc, Sp, Uc, Up).
CovMatrix build_sigma1(const GaussianSource& src, const SourceDesign& design, int encoder_case);
// Labels (Wc, Wu, Qs, Qu, X, Y, Z).
CovMatrix build_sigma2(const GaussianChannel& ch, const ChannelDesign& design);

inline constexpr int kRejectionBudget = 100000;

// Random draws of the designs above; every draw is PSD-checked and the
// sampler throws SamplerStarvation after kRejectionBudget rejections.
CovMatrix sample_sigma1(const GaussianSource& src, std::mt19937_64& rng, int encoder_case = 2);
CovMatrix sample_sigma2(const GaussianChannel& ch, std::mt19937_64& rng);

// Mutual-information terms of the achievability system.
struct InnerTerms {
  double a0 = 0.0;    // I(Sc;V)
  double A = 0.0;     // I(Sc,Sp;V)
  double Bv = 0.0;    // I(Uc,Up;V|Sc)
  double cWc = 0.0;   // I(Wc;Y)
  double cS = 0.0;    // I(Wc,Qs;Y)
  double cU = 0.0;    // I(Wu,Qu;Y|Wc)
  double ksY = 0.0;   // I(Qs;Y|Wc)
  double ksZ = 0.0;   // I(Qs;Z|Wc)
  double kuY = 0.0;   // I(Qu;Y|Wc,Wu)
  double kuZ = 0.0;   // I(Qu;Z|Wc,Wu)
  double kjZ = 0.0;   // I(Qs,Qu;Z|Wc,Wu)
  double h_s = 0.0, h_u = 0.0, h_su = 0.0;
};

struct InnerSample {
  CovMatrix sigma1;
  CovMatrix sigma2;
  int encoder_case = 2;
  double D_s = 0.0;  // Var(S | Sc, Sp)
  double D_u = 0.0;  // Var(U | Sc, Uc, Up)
  InnerTerms terms;
};

InnerSample make_inner_sample(CovMatrix sigma1, CovMatrix sigma2, int encoder_case);

// Minimal r satisfying the achievability system at R_k = 0. The r-free
// constraint I(Sc;V) < I(Wc;Y) is reported as reason "first-rate" when violated.
MinRate inner_min_r(const InnerSample& sample, const EquivocationTargets& targets);

// Per-sample RNG substream: mt19937_64 seeded with splitmix64(seed + (i+1) * golden).
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

InnerSample draw_inner_sample(const GaussianSource& src, const GaussianChannel& ch, int encoder_case,
                              std::uint64_t master_seed, std::uint64_t index);

}  // namespace semsec
