#include "semsec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "semsec/gaussian_region.hpp"
#include "semsec/run.hpp"

namespace semsec {
namespace {

using nlohmann::json;

constexpr double kBaTolerance = 5e-3;
constexpr double kSandwichTolerance = 1e-6;
constexpr double kCloseRatio = 1.15;
constexpr double kCloseFloor = 0.05;
constexpr double kAppendixTolerance = 1e-9;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

struct Worst {
  double value = 0.0;
  json where = nullptr;

  void update(double v, json w) {
    if (v > value || where.is_null()) {
      value = std::max(value, v);
      where = std::move(w);
    }
  }
};

}  // namespace

std::vector<CorpusInstance> rdf_corpus() {
  const Pmf dsbs25({0.375, 0.125, 0.125, 0.375}, {2, 2});
  const Pmf dsbs10({0.45, 0.05, 0.05, 0.45}, {2, 2});
  const Pmf asym({0.4, 0.1, 0.2, 0.3}, {2, 2});
  const Pmf skew({0.6, 0.05, 0.15, 0.2}, {2, 2});
  const Pmf holed({0.5, 0.0, 0.25, 0.25}, {2, 2});
  return {
      {"dsbs25-c1", dsbs25, 0.3, 0.25, 1},   {"dsbs25-c1-tight", dsbs25, 0.35, 0.1, 1},
      {"dsbs25-c2", dsbs25, 0.3, 0.25, 2},   {"dsbs25-c2-free-s", dsbs25, 0.5, 0.25, 2},
      {"dsbs10-c1", dsbs10, 0.2, 0.3, 1},    {"dsbs10-c2", dsbs10, 0.2, 0.05, 2},
      {"asym-c1", asym, 0.3, 0.2, 1},        {"asym-c2", asym, 0.25, 0.15, 2},
      {"skew-c1", skew, 0.3, 0.25, 1},       {"skew-c2", skew, 0.1, 0.1, 2},
      {"holed-c1", holed, 0.3, 0.3, 1},      {"holed-c2", holed, 0.2, 0.2, 2},
  };
}

CheckResult check_ba_closed_forms(double alpha, int points) {
  CheckResult res;
  res.name = "ba-vs-closed-form";
  res.threshold = kBaTolerance;
  const auto src = DiscreteSemanticSource::doubly_symmetric(alpha);
  const auto h = DistortionMatrix::hamming(2);
  const Pmf bern = Pmf::bernoulli(alpha);
  Worst worst;
  json per = json::object();
  auto track = [&](const char* family, double ba, double closed, double D_s, double D_u) {
    const double dev = std::abs(ba - closed);
    worst.update(dev, {{"family", family}, {"D_s", D_s}, {"D_u", D_u}, {"ba", ba}, {"closed_form", closed}});
    per[family] = std::max(per.value(family, 0.0), dev);
  };
  for (double d : linspace(0.005, alpha + 0.05, points)) {
    track("observation", rdf_classic(bern, h, d).rate, binary_rdf_obs(alpha, d), 0.0, d);
  }
  for (double d : linspace(alpha + 0.005, 0.5, points)) {
    track("semantic-case1", rdf_semantic_case1(src, h, h, d, 1.0).rate, binary_rdf_sem(alpha, d, 1), d, 1.0);
  }
  for (double d : linspace(0.005, 0.5, points)) {
    track("semantic-case2", rdf_semantic_case2(src, h, h, d, 1.0).rate, binary_rdf_sem(alpha, d, 2), d, 1.0);
  }
  const auto ds = linspace(alpha + 0.005, 0.5, points);
  const auto du = linspace(0.02, 0.5, points);
  for (int i = 0; i < points; ++i) {
    const double a = ds[static_cast<std::size_t>(i)], b = du[static_cast<std::size_t>(points - 1 - i)];
    track("joint-case1", rdf_semantic_case1(src, h, h, a, b).rate, binary_rdf_joint(alpha, a, b, 1), a, b);
  }
  res.observed = worst.value;
  res.pass = worst.value <= kBaTolerance;
  res.detail = {{"alpha", alpha}, {"points_per_family", points}, {"worst_by_family", per}, {"worst", worst.where}};
  return res;
}

CheckResult check_ba_brute() {
  CheckResult res;
  res.name = "ba-vs-brute-force";
  res.threshold = kBaTolerance;
  const auto h = DistortionMatrix::hamming(2);
  double worst_excess = -std::numeric_limits<double>::infinity();
  json rows = json::array();
  bool ok = true;
  for (const auto& inst : rdf_corpus()) {
    const DiscreteSemanticSource src(inst.joint);
    const RdfPoint ba = inst.encoder_case == 1 ? rdf_semantic_case1(src, h, h, inst.D_s, inst.D_u)
                                               : rdf_semantic_case2(src, h, h, inst.D_s, inst.D_u);
    const RdfPoint fine = brute_force_rdf(src, h, h, inst.D_s, inst.D_u, inst.encoder_case, kBruteGrid);
    const RdfPoint coarse = brute_force_rdf(src, h, h, inst.D_s, inst.D_u, inst.encoder_case, kBruteCoarseGrid);
    json row = {{"name", inst.name}, {"case", inst.encoder_case}, {"D_s", inst.D_s}, {"D_u", inst.D_u}};
    if (ba.feasible() != fine.feasible()) {
      ok = false;
      row["error"] = "feasibility disagrees";
      rows.push_back(row);
      continue;
    }
    if (!ba.feasible()) {
      row["feasible"] = false;
      rows.push_back(row);
      continue;
    }
    const double term = fine.rate - fine.lower_bound;
    const double dev = std::abs(ba.rate - fine.rate);
    // Excess over the allowance; <= 0 passes.
    const double excess = dev - (kBaTolerance + term);
    worst_excess = std::max(worst_excess, excess);
    const bool monotone = coarse.feasible() && fine.rate <= coarse.rate + 1e-9;
    ok = ok && excess <= 0.0 && monotone;
    row.update({{"ba", ba.rate}, {"brute", fine.rate}, {"brute_lower", fine.lower_bound},
                {"brute_coarse", coarse.feasible() ? json(coarse.rate) : json(nullptr)}, {"grid_term", term},
                {"deviation", dev}, {"refinement_monotone", monotone}});
    rows.push_back(row);
  }
  res.observed = worst_excess;
  res.threshold = 0.0;
  res.pass = ok;
  res.detail = {{"grid", kBruteGrid}, {"coarse_grid", kBruteCoarseGrid}, {"tolerance", kBaTolerance},
                {"observed_is", "max over instances of |ba - brute| - (tolerance + grid_term)"}, {"instances", rows}};
  return res;
}

std::vector<CheckResult> check_sandwich(const RunConfig& cfg, std::size_t samples_per_case) {
  const GaussianSource& src = cfg.gsrc;
  const GaussianChannel& ch = cfg.gch;
  std::vector<Series> presets{{"none", {}}, {"semantic", {}}, {"full", {}}};
  presets[1].targets.delta_s = src.h_s();
  presets[1].targets.delta_u = 0.0;
  presets[1].targets.delta_su = src.h_s();
  presets[2].targets.delta_s = src.h_s();
  presets[2].targets.delta_u = src.h_u();
  presets[2].targets.delta_su = src.h_su();
  std::vector<EquivocationTargets> targets;
  for (const auto& p : presets) targets.push_back(p.targets);

  // Best secrecy-term parameter: the converse holds for some beta, so its
  // smallest r uses the largest secrecy terms.
  RunConfig best = cfg;
  best.model = Model::Gaussian;
  best.policy.sweep = true;
  const PolicyChoice pol = resolve_policy(best);

  std::vector<double> grid_s, grid_u;
  for (int k = 1; k <= 40; ++k) {
    grid_s.push_back(src.P_s * k / 40);
    grid_u.push_back(src.P_u * k / 40);
  }

  CheckResult sand{"sandwich", true, std::numeric_limits<double>::infinity(), -kSandwichTolerance, json::object()};
  CheckResult near{"inner-near-converse", true, 0.0, kCloseRatio, json::object()};
  json sand_rows = json::array(), near_rows = json::array();
  for (int c : {1, 2}) {
    const auto recs = inner_records(src, ch, c, targets, samples_per_case, cfg.seed, cfg.threads);
    std::size_t discarded = 0;
    for (const auto& r : recs) discarded += r.ok ? 0 : 1;
    for (std::size_t si = 0; si < presets.size(); ++si) {
      double min_slack = std::numeric_limits<double>::infinity();
      std::size_t accepted = 0, violations = 0;
      json worst = nullptr;
      // Bucket minima: (inner r, converse r at that draw's distortions).
      std::vector<std::pair<double, double>> bucket(grid_s.size() * grid_u.size(),
                                                    {std::numeric_limits<double>::infinity(), 0.0});
      for (std::size_t i = 0; i < recs.size(); ++i) {
        const InnerRecord& r = recs[i];
        if (!r.ok || !r.per_series[si].feasible) continue;
        ++accepted;
        const double inner = r.per_series[si].r;
        const MinRate conv = converse_min_r(src, ch, r.D_s, r.D_u, targets[si], pol.p1, pol.p2, c);
        const double slack = conv.feasible ? inner - conv.r : -std::numeric_limits<double>::infinity();
        if (slack < min_slack) {
          min_slack = slack;
          worst = {{"index", i}, {"D_s", r.D_s}, {"D_u", r.D_u}, {"inner", inner},
                   {"converse", conv.feasible ? json(conv.r) : json("infeasible")}};
        }
        if (slack < -kSandwichTolerance) ++violations;
        const long bi = bucket_index(grid_s, r.D_s), bj = bucket_index(grid_u, r.D_u);
        if (bi >= 0 && bj >= 0 && conv.feasible) {
          auto& b = bucket[static_cast<std::size_t>(bi) * grid_u.size() + static_cast<std::size_t>(bj)];
          if (inner < b.first) b = {inner, conv.r};
        }
      }
      double best_ratio = std::numeric_limits<double>::infinity();
      for (const auto& [inner, conv] : bucket) {
        if (std::isfinite(inner) && conv > kCloseFloor) best_ratio = std::min(best_ratio, inner / conv);
      }
      sand.observed = std::min(sand.observed, min_slack);
      sand.pass = sand.pass && violations == 0;
      sand_rows.push_back({{"case", c}, {"series", presets[si].name}, {"accepted", accepted}, {"discarded", discarded},
                           {"violations", violations},
                           {"min_slack", std::isfinite(min_slack) ? json(min_slack) : json(nullptr)},
                           {"worst", worst}});
      const bool judged = presets[si].name != "full";
      near_rows.push_back({{"case", c}, {"series", presets[si].name}, {"judged", judged},
                           {"best_ratio", std::isfinite(best_ratio) ? json(best_ratio) : json(nullptr)}});
      if (judged) {
        near.observed = std::max(near.observed, best_ratio);
        near.pass = near.pass && best_ratio <= kCloseRatio;
      }
    }
  }
  sand.detail = {{"samples_per_case", samples_per_case}, {"seed", cfg.seed}, {"rows", sand_rows}};
  near.detail = {{"floor", kCloseFloor},
                 {"observed_is", "worst over judged (case, series) of the best bucket ratio inner/converse"},
                 {"rows", near_rows}};
  if (!std::isfinite(sand.observed)) sand.observed = 0.0;
  if (!std::isfinite(near.observed)) near.observed = std::numeric_limits<double>::max();
  return {sand, near};
}

Pmf random_joint32(std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(substream_seed(seed, index));
  auto unit = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  std::vector<double> w(32);
  double total = 0.0;
  for (double& v : w) {
    const bool zero = unit() < 0.2;
    const double e = -std::log(unit());
    v = zero ? 0.0 : e;
    total += v;
  }
  if (total == 0.0) {
    w[0] = 1.0;
    total = 1.0;
  }
  for (double& v : w) v /= total;
  return Pmf(std::move(w), {2, 2, 2, 2, 2});
}

CheckResult check_appendix(std::uint64_t seed, std::size_t draws) {
  CheckResult res;
  res.name = "appendix-inequality";
  res.threshold = -kAppendixTolerance;
  double min_slack = std::numeric_limits<double>::infinity();
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double s = appendix_inequality_slack(random_joint32(seed, i));
    if (s < min_slack) {
      min_slack = s;
      argmin = i;
    }
  }
  res.observed = min_slack;
  res.pass = min_slack >= -kAppendixTolerance;
  res.detail = {{"draws", draws}, {"seed", seed}, {"argmin", argmin}};
  return res;
}

json verify_report(const RunConfig& cfg, std::vector<CheckResult>* out) {
  std::vector<CheckResult> checks;
  checks.push_back(check_ba_closed_forms());
  checks.push_back(check_ba_brute());
  for (auto& c : check_sandwich(cfg, cfg.samples)) checks.push_back(std::move(c));
  checks.push_back(check_appendix(cfg.seed, 10000));
  json report = {{"tool", "semsec"}, {"version", SEMSEC_VERSION}, {"seed", cfg.seed}, {"checks", json::array()}};
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    report["checks"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"observed", c.observed}, {"threshold", c.threshold}, {"detail", c.detail}});
  }
  report["pass"] = all;
  if (out) *out = std::move(checks);
  return report;
}

}  // namespace semsec
