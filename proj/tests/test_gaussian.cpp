#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "semsec/errors.hpp"
#include "semsec/gaussian_region.hpp"
#include "semsec/run.hpp"

using namespace semsec;
using doctest::Approx;

namespace {

const GaussianSource kSrc;
const GaussianChannel kCh;

EquivocationTargets semantic() {
  EquivocationTargets t;
  t.delta_s = kSrc.h_s();
  t.delta_su = kSrc.h_s();
  return t;
}

}  // namespace

TEST_CASE("source and channel validation") {
  CHECK_THROWS_AS((GaussianSource{0.7, 1.0, 0.9}.validate()), ValidationError);
  CHECK_THROWS_AS((GaussianSource{-1.0, 1.0, 0.0}.validate()), ValidationError);
  CHECK_THROWS_AS((GaussianChannel{1.0, 0.0, 0.4}.validate()), ValidationError);
  CHECK_NOTHROW(kSrc.validate());
  CHECK_NOTHROW(kCh.validate());
}

TEST_CASE("marginal RDFs") {
  CHECK(gaussian_rdf_obs(kSrc, 1.0) == 0.0);
  CHECK(gaussian_rdf_obs(kSrc, 0.6) == Approx(oracle::R_u_06).epsilon(1e-12));
  CHECK(gaussian_rdf_obs(kSrc, 2.0) == 0.0);
  CHECK_THROWS(gaussian_rdf_obs(kSrc, 0.0));
  CHECK(gaussian_rdf_sem(kSrc, 0.7, 2) == 0.0);
  CHECK(kSrc.case1_floor() == Approx(oracle::case1_floor).epsilon(1e-14));
  CHECK(gaussian_rdf_sem(kSrc, 0.5, 1) == Approx(oracle::R_s_case1_05).epsilon(1e-12));
  CHECK(gaussian_rdf_sem(kSrc, 0.5, 2) == Approx(oracle::R_s_case2_05).epsilon(1e-12));
  CHECK(std::isinf(gaussian_rdf_sem(kSrc, 0.3, 1)));
}

TEST_CASE("joint RDF") {
  CHECK(gaussian_rdf_joint(kSrc, 0.5, 0.6, 2) == Approx(oracle::joint_case2_05_06).epsilon(1e-12));
  // One distortion at its variance: the other marginal alone.
  CHECK(gaussian_rdf_joint(kSrc, 0.7, 0.6, 2) == Approx(gaussian_rdf_obs(kSrc, 0.6)).epsilon(1e-12));
  CHECK(gaussian_rdf_joint(kSrc, 0.5, 1.0, 2) == Approx(gaussian_rdf_sem(kSrc, 0.5, 2)).epsilon(1e-12));
  CHECK(gaussian_rdf_joint(kSrc, 0.5, 0.6, 1) ==
        std::max(gaussian_rdf_obs(kSrc, 0.6), gaussian_rdf_sem(kSrc, 0.5, 1)));

  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double ds = 0.7 * i / 20.0, du = 1.0 * j / 20.0;
      const double c1 = gaussian_rdf_joint(kSrc, ds, du, 1);
      const double c2 = gaussian_rdf_joint(kSrc, ds, du, 2);
      if (std::isfinite(c1)) CHECK(c2 <= c1 + 1e-12);
    }
  }
}

TEST_CASE("joint RDF is continuous across regimes") {
  // Scan D_s finely at fixed D_u; adjacent values never jump.
  for (double du : {0.2, 0.45, 0.6, 0.85}) {
    double prev = gaussian_rdf_joint(kSrc, 0.01, du, 2);
    for (int k = 1001; k <= 70000; ++k) {
      const double v = gaussian_rdf_joint(kSrc, k * 1e-5, du, 2);
      REQUIRE(std::abs(v - prev) < 1e-3);
      prev = v;
    }
  }
  // Regime boundary of the middle form, located by bisection on the test.
  const double du = 0.6;
  auto excess = [&](double ds) {
    return kSrc.rho2() - (kSrc.P_u - du) * kSrc.P_s / ((kSrc.P_s - ds) * kSrc.P_u);
  };
  double lo = 0.01, hi = 0.69;
  REQUIRE(excess(lo) * excess(hi) < 0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) * excess(lo) > 0 ? lo : hi) = mid;
  }
  CHECK(std::abs(gaussian_rdf_joint(kSrc, lo, du, 2) - gaussian_rdf_joint(kSrc, hi, du, 2)) < 1e-6);
}

TEST_CASE("secrecy term") {
  CHECK(secrecy_term(kCh, 0.0) == 0.0);
  CHECK(secrecy_term(GaussianChannel{1.0, 0.1, 0.0}, 0.7) == 0.0);
  CHECK(secrecy_term(kCh, 1.0) == Approx(oracle::C_s1).epsilon(1e-12));
  CHECK(main_capacity(kCh) == Approx(oracle::C_main).epsilon(1e-12));
  double prev = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double v = secrecy_term(kCh, k / 100.0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(secrecy_term(kCh, 0.3) + secrecy_term(kCh, 0.9) <= 2 * secrecy_term(kCh, 1.0));
}

TEST_CASE("converse equivocation caps") {
  const EquivocationCaps none = converse_equivocation_caps(kSrc, kCh, 0.5, 0.6, 0.0, 0.0, 1, 1, 2);
  CHECK(none.s.raw == Approx(kSrc.h_s() - gaussian_rdf_sem(kSrc, 0.5, 2)).epsilon(1e-12));
  CHECK(none.u.raw == Approx(kSrc.h_u() - gaussian_rdf_obs(kSrc, 0.6)).epsilon(1e-12));
  CHECK(none.su.raw == Approx(kSrc.h_su() - gaussian_rdf_joint(kSrc, 0.5, 0.6, 2)).epsilon(1e-12));

  const EquivocationCaps c = converse_equivocation_caps(kSrc, kCh, 0.5, 0.6, 1.0, 0.0, 1, 1, 2);
  CHECK(c.s.raw == Approx(oracle::delta_s_cap_case2).epsilon(1e-12));
  CHECK(c.s.capped);
  CHECK(c.s.value == Approx(kSrc.h_s()).epsilon(1e-12));

  const EquivocationCaps k = converse_equivocation_caps(kSrc, kCh, 0.5, 0.6, 1.0, 0.3, 1, 1, 2);
  CHECK(k.s.raw - c.s.raw == Approx(0.3).epsilon(1e-12));
  CHECK(k.u.raw - c.u.raw == Approx(0.3).epsilon(1e-12));
  CHECK(k.su.raw - c.su.raw == Approx(0.3).epsilon(1e-12));

  // Case 1 ignores beta2.
  const auto a = converse_equivocation_caps(kSrc, kCh, 0.5, 0.6, 1.0, 0.0, 1, 0.2, 1);
  const auto b = converse_equivocation_caps(kSrc, kCh, 0.5, 0.6, 1.0, 0.0, 1, 1.0, 1);
  CHECK(a.u.raw == b.u.raw);
}

TEST_CASE("converse min r") {
  const MinRate none = converse_min_r(kSrc, kCh, 0.5, 0.6, {}, 1, 1, 2);
  REQUIRE(none.feasible);
  CHECK(none.r == Approx(oracle::min_r_none).epsilon(1e-9));
  const MinRate sem = converse_min_r(kSrc, kCh, 0.5, 0.6, semantic(), 1, 1, 2);
  REQUIRE(sem.feasible);
  CHECK(sem.r == Approx(oracle::min_r_semantic).epsilon(1e-9));
  const MinRate dead = converse_min_r(kSrc, GaussianChannel{1.0, 0.1, 0.0}, 0.5, 0.6, semantic(), 1, 1, 2);
  CHECK_FALSE(dead.feasible);
  CHECK_FALSE(converse_min_r(kSrc, kCh, 0.3, 0.6, {}, 1, 1, 1).feasible);
}

TEST_CASE("converse min r monotonicity") {
  const EquivocationTargets base = semantic();
  for (double ds : {0.35, 0.45, 0.55, 0.65}) {
    for (double du : {0.3, 0.5, 0.7, 0.9}) {
      for (int c : {1, 2}) {
        const MinRate m = converse_min_r(kSrc, kCh, ds, du, base, 1, 1, c);
        if (!m.feasible) continue;
        CHECK(converse_min_r(kSrc, kCh, ds + 0.02, du, base, 1, 1, c).r <= m.r + 1e-12);
        CHECK(converse_min_r(kSrc, kCh, ds, du + 0.05, base, 1, 1, c).r <= m.r + 1e-12);
        EquivocationTargets key = base;
        key.R_k = 0.2;
        CHECK(converse_min_r(kSrc, kCh, ds, du, key, 1, 1, c).r <= m.r + 1e-12);
        EquivocationTargets more = base;
        more.delta_s += 0.1;
        const MinRate mm = converse_min_r(kSrc, kCh, ds, du, more, 1, 1, c);
        if (mm.feasible) CHECK(mm.r >= m.r - 1e-12);
        if (c == 2) {
          const MinRate one = converse_min_r(kSrc, kCh, ds, du, base, 1, 1, 1);
          if (one.feasible) CHECK(m.r <= one.r + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("sigma1 construction") {
  std::mt19937_64 rng(5);
  for (int c : {1, 2}) {
    for (int i = 0; i < 50; ++i) {
      const CovMatrix s1 = sample_sigma1(kSrc, rng, c);
      CHECK(s1.min_eigenvalue() >= -1e-9);
      CHECK(s1(0, 0) == kSrc.P_s);
      CHECK(s1(1, 1) == kSrc.P_u);
      CHECK(s1(0, 1) == kSrc.P_su);
      CHECK(s1.labels()[2] == "Sc");
    }
  }
  // Auxiliaries that reveal U: Var(S | Sc, Sp) -> Var(S | U).
  SourceDesign d;
  d.lc[1] = 1e6;
  d.lp[1] = 1e6;
  const CovMatrix s1 = build_sigma1(kSrc, d, 1);
  CHECK(schur_conditional(s1, s1.axes({"S"}), s1.axes({"Sc", "Sp"}))(0, 0) ==
        Approx(oracle::case1_floor).epsilon(1e-6));
}

TEST_CASE("sigma2 construction") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const CovMatrix s2 = sample_sigma2(kCh, rng);
    const Axes X = s2.axes({"X"}), Y = s2.axes({"Y"}), Z = s2.axes({"Z"});
    CHECK(gaussian_mi(s2, X, Y) == Approx(oracle::C_main).epsilon(1e-9));
    for (const char* aux : {"Wc", "Wu", "Qs", "Qu"}) {
      const std::size_t a = s2.index_of(aux);
      CHECK(s2(a, Z[0]) == s2(a, X[0]));
      CHECK(s2(a, Y[0]) == s2(a, X[0]));
    }
    const Eigen::MatrixXd xyz = s2.block({X[0], Y[0], Z[0]}).entries();
    CHECK(xyz == kCh.xyz().entries());
  }
  ChannelDesign off;  // every w is zero: X is pure noise
  const CovMatrix s2 = build_sigma2(kCh, off);
  CHECK(gaussian_mi(s2, s2.axes({"Wc", "Wu", "Qs", "Qu"}), s2.axes({"Y", "Z"})) == 0.0);
}

TEST_CASE("inner sample distortions and targets") {
  for (int c : {1, 2}) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      const InnerSample s = draw_inner_sample(kSrc, kCh, c, 42, i);
      CHECK(s.D_s <= kSrc.P_s + 1e-12);
      CHECK(s.D_u <= kSrc.P_u + 1e-12);
    }
  }
  // Without secrecy targets only the rate constraints matter; adding a
  // target never lowers r.
  const InnerSample s = draw_inner_sample(kSrc, kCh, 2, 42, 3);
  const MinRate free = inner_min_r(s, {});
  const MinRate sec = inner_min_r(s, semantic());
  if (free.feasible && sec.feasible) CHECK(sec.r >= free.r - 1e-12);

  // Uninformative auxiliaries: prior distortions, zero rate.
  const InnerSample blank = make_inner_sample(build_sigma1(kSrc, {}, 2), build_sigma2(kCh, {}), 2);
  CHECK(blank.D_s == Approx(kSrc.P_s));
  CHECK(blank.D_u == Approx(kSrc.P_u));
  const MinRate z = inner_min_r(blank, {});
  REQUIRE(z.feasible);
  CHECK(z.r == Approx(0.0));
}

TEST_CASE("inner bound sits above the converse") {
  const std::vector<EquivocationTargets> fams{{}, semantic()};
  for (int c : {1, 2}) {
    const auto recs = inner_records(kSrc, kCh, c, fams, 3000, 77, 1);
    for (const InnerRecord& r : recs) {
      if (!r.ok) continue;
      for (std::size_t k = 0; k < fams.size(); ++k) {
        if (!r.per_series[k].feasible) continue;
        const MinRate conv = converse_min_r(kSrc, kCh, r.D_s, r.D_u, fams[k], 1, 1, c);
        REQUIRE(conv.feasible);
        CHECK(r.per_series[k].r >= conv.r - 1e-6);
      }
    }
  }
}

TEST_CASE("inner records are reproducible and thread independent") {
  const std::vector<EquivocationTargets> fams{semantic()};
  const auto a = inner_records(kSrc, kCh, 2, fams, 400, 5, 1);
  const auto b = inner_records(kSrc, kCh, 2, fams, 400, 5, 4);
  const auto prefix = inner_records(kSrc, kCh, 2, fams, 200, 5, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].D_s == b[i].D_s);
    CHECK(a[i].D_u == b[i].D_u);
    if (i < prefix.size()) CHECK(a[i].D_s == prefix[i].D_s);
  }
  CHECK(substream_seed(1, 0) != substream_seed(1, 1));
  CHECK(substream_seed(1, 0) == substream_seed(1, 0));
}
