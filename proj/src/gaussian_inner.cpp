#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "semsec/errors.hpp"
#include "semsec/gaussian_region.hpp"

namespace semsec {
namespace {

enum Src : Eigen::Index { kS, kU, kSc, kSp, kUc, kUp };
enum Ch : Eigen::Index { kWc, kWu, kQs, kQu, kX, kY, kZ };

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Zero with probability p_zero, else a random sign times 10^U(lo, hi).
double sparse_gain(std::mt19937_64& rng, double p_zero, double lo, double hi) {
  if (unit(rng) < p_zero) return 0.0;
  const double mag = std::pow(10.0, lo + (hi - lo) * unit(rng));
  return unit(rng) < 0.5 ? -mag : mag;
}

SourceDesign random_source_design(std::mt19937_64& rng) {
  SourceDesign d;
  for (double* g : {d.lc, d.lp, d.lu, d.lw}) {
    g[0] = sparse_gain(rng, 0.3, -2.0, 1.5);
    g[1] = sparse_gain(rng, 0.3, -2.0, 1.5);
  }
  d.mp = sparse_gain(rng, 0.5, -2.0, 1.0);
  d.mu = sparse_gain(rng, 0.5, -2.0, 1.0);
  d.mw1 = sparse_gain(rng, 0.5, -2.0, 1.0);
  d.mw2 = sparse_gain(rng, 0.5, -2.0, 1.0);
  return d;
}

ChannelDesign random_channel_design(std::mt19937_64& rng) {
  ChannelDesign d;
  d.a = sparse_gain(rng, 0.4, -2.0, 1.0);
  d.b = sparse_gain(rng, 0.4, -2.0, 1.0);
  d.c = sparse_gain(rng, 0.4, -2.0, 1.0);
  d.d = sparse_gain(rng, 0.4, -2.0, 1.0);
  for (double& w : d.w) w = sparse_gain(rng, 0.3, -2.0, 2.0);
  d.w5 = std::abs(sparse_gain(rng, 0.3, -3.0, 1.0));
  return d;
}

Axes v_axes(int encoder_case) { return encoder_case == 1 ? Axes{kU} : Axes{kS, kU}; }

}  // namespace

CovMatrix build_sigma1(const GaussianSource& src, const SourceDesign& design, int encoder_case) {
  if (encoder_case != 1 && encoder_case != 2) throw std::invalid_argument("encoder case must be 1 or 2");
  const double s_on = encoder_case == 2 ? 1.0 : 0.0;
  // Rows express each coordinate in the basis (S, U, n_c, n_p, n_uc, n_up).
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
  m(kS, 0) = 1.0;
  m(kU, 1) = 1.0;
  auto on_v = [&](Eigen::Index row, const double* g) {
    m(row, 0) += s_on * g[0];
    m(row, 1) += g[1];
  };
  on_v(kSc, design.lc);
  m(kSc, 2) = 1.0;
  on_v(kSp, design.lp);
  m.row(kSp) += design.mp * m.row(kSc);
  m(kSp, 3) += 1.0;
  on_v(kUc, design.lu);
  m.row(kUc) += design.mu * m.row(kSc);
  m(kUc, 4) += 1.0;
  on_v(kUp, design.lw);
  m.row(kUp) += design.mw1 * m.row(kSc) + design.mw2 * m.row(kUc);
  m(kUp, 5) += 1.0;

  Eigen::MatrixXd base = Eigen::MatrixXd::Identity(6, 6);
  base(0, 0) = src.P_s;
  base(0, 1) = base(1, 0) = src.P_su;
  base(1, 1) = src.P_u;
  Eigen::MatrixXd sigma = m * base * m.transpose();
  sigma = 0.5 * (sigma + sigma.transpose());
  sigma(kS, kS) = src.P_s;
  sigma(kS, kU) = sigma(kU, kS) = src.P_su;
  sigma(kU, kU) = src.P_u;
  return CovMatrix(sigma, {"S", "U", "Sc", "Sp", "Uc", "Up"});
}

CovMatrix build_sigma2(const GaussianChannel& ch, const ChannelDesign& design) {
  // Auxiliary rows in the basis (g_c, g_s, g_u, g_q, g_x); order Wc, Wu, Qs, Qu.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 5);
  m(0, 0) = 1.0;                                   // Wc
  m.row(2) = design.a * m.row(0);                  // Qs
  m(2, 1) += 1.0;
  m.row(1) = design.b * m.row(0);                  // Wu
  m(1, 2) += 1.0;
  m.row(3) = design.c * m.row(0) + design.d * m.row(1);  // Qu
  m(3, 3) += 1.0;

  Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(5);
  for (int i = 0; i < 4; ++i) x += design.w[i] * m.row(i);
  x(4) += design.w5;
  double var_x = x.squaredNorm();
  if (!(var_x > 0.0)) {
    x(4) = 1.0;
    var_x = 1.0;
  }
  x *= std::sqrt(ch.P / var_x);

  const Eigen::MatrixXd aux = m * m.transpose();
  const Eigen::VectorXd cross = m * x.transpose();
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(7, 7);
  sigma.topLeftCorner(4, 4) = 0.5 * (aux + aux.transpose());
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j : {kX, kY, kZ}) sigma(i, j) = sigma(j, i) = cross(i);
  }
  sigma.bottomRightCorner(3, 3) = ch.xyz().entries();
  return CovMatrix(sigma, {"Wc", "Wu", "Qs", "Qu", "X", "Y", "Z"});
}

CovMatrix sample_sigma1(const GaussianSource& src, std::mt19937_64& rng, int encoder_case) {
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    const SourceDesign d = random_source_design(rng);
    try {
      return build_sigma1(src, d, encoder_case);
    } catch (const std::invalid_argument&) {
      // not PSD within tolerance: reject and redraw
    }
  }
  throw SamplerStarvation("sample_sigma1: rejection budget exhausted");
}

CovMatrix sample_sigma2(const GaussianChannel& ch, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    const ChannelDesign d = random_channel_design(rng);
    try {
      return build_sigma2(ch, d);
    } catch (const std::invalid_argument&) {
    }
  }
  throw SamplerStarvation("sample_sigma2: rejection budget exhausted");
}

InnerSample make_inner_sample(CovMatrix sigma1, CovMatrix sigma2, int encoder_case) {
  if (encoder_case != 1 && encoder_case != 2) throw std::invalid_argument("encoder case must be 1 or 2");
  if (sigma1.dim() != 6 || sigma2.dim() != 7) throw std::invalid_argument("inner sample needs 6x6 and 7x7 covariances");
  const Axes v = v_axes(encoder_case);
  InnerTerms t;
  t.a0 = gaussian_mi(sigma1, {kSc}, v);
  t.A = gaussian_mi(sigma1, {kSc, kSp}, v);
  t.Bv = gaussian_mi(sigma1, {kUc, kUp}, v, {kSc});
  t.cWc = gaussian_mi(sigma2, {kWc}, {kY});
  t.cS = gaussian_mi(sigma2, {kWc, kQs}, {kY});
  t.cU = gaussian_mi(sigma2, {kWu, kQu}, {kY}, {kWc});
  t.ksY = gaussian_mi(sigma2, {kQs}, {kY}, {kWc});
  t.ksZ = gaussian_mi(sigma2, {kQs}, {kZ}, {kWc});
  t.kuY = gaussian_mi(sigma2, {kQu}, {kY}, {kWc, kWu});
  t.kuZ = gaussian_mi(sigma2, {kQu}, {kZ}, {kWc, kWu});
  t.kjZ = gaussian_mi(sigma2, {kQs, kQu}, {kZ}, {kWc, kWu});
  t.h_s = gaussian_entropy(sigma1.block({kS}));
  t.h_u = gaussian_entropy(sigma1.block({kU}));
  t.h_su = gaussian_entropy(sigma1.block({kS, kU}));

  InnerSample s{std::move(sigma1), std::move(sigma2), encoder_case, 0.0, 0.0, t};
  s.D_s = schur_conditional(s.sigma1, {kS}, {kSc, kSp})(0, 0);
  s.D_u = schur_conditional(s.sigma1, {kU}, {kSc, kUc, kUp})(0, 0);
  return s;
}

MinRate inner_min_r(const InnerSample& sample, const EquivocationTargets& targets) {
  const InnerTerms& t = sample.terms;
  std::vector<PiecewiseConstraint> cs;
  cs.push_back({t.cWc - t.a0, 0.0, 0.0, 0.0, false, "first-rate"});
  cs.push_back({-t.A, t.cS, 0.0, 0.0, false, "semantic-rate"});
  cs.push_back({-t.Bv, t.cU, 0.0, 0.0, false, "observation-rate"});
  // Source-side terms enter without the [.]^+ clamp: with differential
  // entropies the clamp has no operational meaning and dropping it only
  // shrinks the region.
  if (EquivocationTargets::active(targets.delta_s)) {
    cs.push_back({t.h_s - t.A - targets.delta_s, t.ksY - t.ksZ, t.Bv, -t.kuY, true, "semantic-secrecy"});
  }
  if (EquivocationTargets::active(targets.delta_u)) {
    cs.push_back({t.h_u - t.Bv - targets.delta_u, t.kuY - t.kuZ, 0.0, 0.0, false, "observation-secrecy"});
  }
  if (EquivocationTargets::active(targets.delta_su)) {
    cs.push_back({t.h_su - t.A - t.Bv - targets.delta_su, std::max(0.0, t.ksY + t.kuY - t.kjZ), 0.0, 0.0, false,
                  "joint-secrecy"});
  }
  return min_feasible_r(cs);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

InnerSample draw_inner_sample(const GaussianSource& src, const GaussianChannel& ch, int encoder_case,
                              std::uint64_t master_seed, std::uint64_t index) {
  std::mt19937_64 rng(substream_seed(master_seed, index));
  CovMatrix s1 = sample_sigma1(src, rng, encoder_case);
  CovMatrix s2 = sample_sigma2(ch, rng);
  return make_inner_sample(std::move(s1), std::move(s2), encoder_case);
}

}  // namespace semsec
