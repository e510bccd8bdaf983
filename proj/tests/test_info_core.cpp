#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracle.hpp"
#include "semsec/cov_matrix.hpp"
#include "semsec/errors.hpp"
#include "semsec/gaussian_region.hpp"
#include "semsec/info_core.hpp"
#include "semsec/verify.hpp"

using namespace semsec;
using doctest::Approx;

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.1) == Approx(oracle::hb_01).epsilon(1e-12));
  CHECK(binary_entropy(0.25) == Approx(oracle::hb_025).epsilon(1e-12));
  CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.5), std::domain_error);
  for (int k = 0; k <= 100; ++k) {
    const double p = k / 100.0;
    CHECK(std::abs(binary_entropy(p) - binary_entropy(1.0 - p)) <= 1e-12);
  }
}

TEST_CASE("star operation") {
  CHECK(star(0.0, 0.3) == 0.3);
  CHECK(star(0.5, 0.37) == 0.5);
  CHECK(star(0.37, 0.5) == 0.5);
  CHECK(star(0.1, 0.3) == Approx(0.34).epsilon(1e-14));
  CHECK_THROWS_AS(star(1.2, 0.1), std::domain_error);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    CHECK(std::abs(star(a, b) - star(b, a)) <= 1e-12);
    CHECK(std::abs(star(star(a, b), c) - star(a, star(b, c))) <= 1e-12);
  }
}

TEST_CASE("pmf validation") {
  CHECK_THROWS_AS(Pmf({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf({0.5, -0.1, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Pmf({0.25, 0.25, 0.25, 0.25}, {2, 3}), std::invalid_argument);
  const Pmf p({0.1, 0.2, 0.3, 0.4}, {2, 2});
  const Pmf m = p.marginal({1});
  CHECK(m[0] == Approx(0.4));
  CHECK(m[1] == Approx(0.6));
}

TEST_CASE("entropy") {
  CHECK(entropy(Pmf::uniform({4})) == Approx(2.0).epsilon(1e-14));
  CHECK(entropy(Pmf::point_mass({3, 2}, 4)) == 0.0);
  CHECK(entropy(Pmf::bernoulli(0.25)) == Approx(oracle::hb_025).epsilon(1e-12));
  const Pmf p({0.1, 0.2, 0.3, 0.4}, {2, 2});
  CHECK(entropy(p, {0}) <= 1.0 + 1e-12);
  CHECK_THROWS_AS(entropy(p, {2}), std::invalid_argument);
}

TEST_CASE("mutual information") {
  const Pmf indep({0.06, 0.14, 0.24, 0.56}, {2, 2});  // (0.2,0.8) x (0.3,0.7)
  CHECK(mutual_information(indep, {0}, {1}) == Approx(0.0).epsilon(1e-12));
  const Pmf copy({0.5, 0.0, 0.0, 0.5}, {2, 2});
  CHECK(mutual_information(copy, {0}, {1}) == Approx(1.0).epsilon(1e-12));
  const Pmf dsbs({0.375, 0.125, 0.125, 0.375}, {2, 2});
  CHECK(mutual_information(dsbs, {0}, {1}) == Approx(1.0 - oracle::hb_025).epsilon(1e-12));
  CHECK_THROWS_AS(mutual_information(dsbs, {0}, {0}), std::invalid_argument);
}

TEST_CASE("mutual information is bounded by the marginal entropies") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Pmf p = random_joint32(11, i);
    const double mi = mutual_information(p, {0, 1}, {2, 4}, {3});
    CHECK(mi >= 0.0);
    const double i2 = mutual_information(p, {0}, {1});
    CHECK(i2 <= std::min(entropy(p, {0}), entropy(p, {1})) + 1e-10);
  }
}

TEST_CASE("schur conditional") {
  const GaussianSource src;
  const CovMatrix K = src.K();
  const CovMatrix same = schur_conditional(K, {0}, {});
  CHECK(same(0, 0) == K(0, 0));
  CHECK(schur_conditional(K, {0}, {1})(0, 0) == Approx(oracle::case1_floor).epsilon(1e-14));
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 1.0, 1.0, 1.0;
  CHECK(std::abs(schur_conditional(CovMatrix(m), {0}, {1})(0, 0)) <= 1e-10);
}

TEST_CASE("covariance validation") {
  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, 0.4, 1.0;
  CHECK_THROWS_AS(CovMatrix{asym}, std::invalid_argument);
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(CovMatrix{indefinite}, std::invalid_argument);
}

TEST_CASE("gaussian entropy") {
  Eigen::MatrixXd unit(1, 1);
  unit << 1.0 / (2.0 * M_PI * M_E);
  CHECK(std::abs(gaussian_entropy(CovMatrix(unit))) <= 1e-12);
  Eigen::MatrixXd ps(1, 1);
  ps << 0.7;
  CHECK(gaussian_entropy(CovMatrix(ps)) == Approx(oracle::h_S).epsilon(1e-12));
  CHECK(gaussian_entropy(GaussianSource{}.K()) == Approx(oracle::h_SU).epsilon(1e-12));
}

TEST_CASE("gaussian mutual information") {
  const GaussianChannel ch;
  const CovMatrix xyz = ch.xyz();
  CHECK(gaussian_mi(xyz, {0}, {1}) == Approx(oracle::C_main).epsilon(1e-12));
  CHECK(gaussian_mi(xyz, {0}, {2}) == Approx(oracle::I_XZ).epsilon(1e-12));
  // Markov X - Y - Z.
  CHECK(std::abs(gaussian_mi(xyz, {0}, {2}, {1})) <= 1e-12);
  Eigen::MatrixXd diag = Eigen::MatrixXd::Identity(3, 3);
  CHECK(gaussian_mi(CovMatrix(diag), {0}, {1, 2}) == 0.0);

  // I(A;B) = h(A) + h(B) - h(A,B) on random draws.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    Eigen::MatrixXd g(4, 6);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 6; ++j) g(i, j) = n(rng);
    const CovMatrix c(g * g.transpose());
    const double direct = gaussian_entropy(c.block({0, 1})) + gaussian_entropy(c.block({2, 3})) -
                          gaussian_entropy(c);
    CHECK(gaussian_mi(c, {0, 1}, {2, 3}) == Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("appendix inequality") {
  CHECK(appendix_inequality_slack(Pmf::uniform({2, 2, 2, 2, 2})) >= 0.0);
  CHECK(std::abs(appendix_inequality_slack(Pmf::point_mass({2, 2, 2, 2, 2}, 13))) <= 1e-10);
  CHECK_THROWS_AS(appendix_inequality_slack(Pmf::uniform({2, 2})), std::invalid_argument);
}
