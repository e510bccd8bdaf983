// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "semsec/binary_region.hpp"
#include "semsec/gaussian_region.hpp"
#include "semsec/info_core.hpp"
#include "semsec/run.hpp"
#include "semsec/verify.hpp"

using namespace semsec;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// 1. Spot values against the four-decimal figures.
Outcome spot_values() {
  const GaussianSource src;
  const GaussianChannel ch;
  EquivocationTargets sem;
  sem.delta_s = src.h_s();
  sem.delta_su = src.h_s();
  const MinRate m = converse_min_r(src, ch, 0.5, 0.6, sem, 1, 1, 2);
  const std::pair<double, double> pairs[] = {
      {binary_entropy(0.25), 0.8113},
      {binary_secrecy_term(BinaryChannel{0.1, 0.3}, 0.0), 0.4558},
      {main_capacity(ch), 1.7297},
      {secrecy_term(ch, 1.0), 0.9372},
      {src.case1_floor(), 0.34},
      {gaussian_rdf_joint(src, 0.5, 0.6, 2), 0.3849},
      {m.feasible ? m.r : NAN, 0.2590},
  };
  double worst = 0.0;
  for (const auto& [got, want] : pairs) worst = std::max(worst, std::isfinite(got) ? std::abs(got - want) : INFINITY);
  return {worst <= 1e-4, fmt("worst |deviation| %.2e (tol 1e-4)", worst)};
}

// 2. BA vs closed forms and vs the lattice oracle.
Outcome oracle_equivalence() {
  const CheckResult closed = check_ba_closed_forms();
  const CheckResult brute = check_ba_brute();
  return {closed.pass && brute.pass,
          fmt("closed-form worst %.2e (tol 5e-3); brute worst excess over 5e-3 + grid term %.2e", closed.observed,
              brute.observed)};
}

// 3. Sandwich and inner-near-converse at 1e5 samples per case.
Outcome sandwich() {
  const RunConfig cfg = parse_config(json::object());
  const auto checks = check_sandwich(cfg, 100000);
  bool ok = true;
  std::string d;
  for (const auto& c : checks) {
    ok = ok && c.pass;
    d += c.name + fmt(" %.3g", c.observed) + "; ";
  }
  return {ok, d + "(slack >= -1e-6, ratio <= 1.15)"};
}

// 4. Case 2 <= Case 1 and semantic <= full on the 40x40 converse grid.
Outcome orderings() {
  RunConfig cfg = parse_config(preset_json("gaussian-fig4"));
  cfg.D_u = parse_config(json::object()).D_u;
  const RunResult res = run(cfg);
  auto find = [&](const std::string& series, int c) -> const RegionSurface& {
    for (const auto& s : res.surfaces)
      if (s.series == series && s.encoder_case == c) return s;
    throw std::runtime_error("missing surface " + series);
  };
  std::size_t compared = 0, violations = 0;
  auto compare = [&](const RegionSurface& lo, const RegionSurface& hi) {
    for (std::size_t k = 0; k < lo.cells.size(); ++k) {
      const auto &a = lo.cells[k], &b = hi.cells[k];
      if (!b.feasible) continue;
      ++compared;
      if (!a.feasible || a.value > b.value + 1e-9) ++violations;
    }
  };
  for (const char* s : {"none", "semantic", "full"}) compare(find(s, 2), find(s, 1));
  for (int c : {1, 2}) compare(find("semantic", c), find("full", c));
  return {violations == 0 && compared > 0,
          std::to_string(violations) + " violations in " + std::to_string(compared) + " cell comparisons"};
}

// 5. Saturation of the Fig. 5 curves.
Outcome saturation() {
  const RunConfig cfg = parse_config(preset_json("binary-tradeoff-fig5"));
  bool ok = true;
  std::string d;
  for (int c : cfg.cases) {
    const DeltaSCurve c0 = delta_s_curve(cfg.bsrc, cfg.bch, 1.0, 0.25, 0.0, cfg.D_s, c);
    const DeltaSCurve c1 = delta_s_curve(cfg.bsrc, cfg.bch, 1.0, 0.25, 0.1, cfg.D_s, c);
    ok = ok && c0.saturation && c1.saturation && c0.points.size() == c1.points.size();
    if (!ok) break;
    double shift = 0.0;
    for (std::size_t i = 0; i < c0.points.size(); ++i) {
      if (i > 0 && c0.points[i].raw < c0.points[i - 1].raw) ok = false;
      for (const DeltaSCurve* cv : {&c0, &c1}) {
        const auto& p = cv->points[i];
        if (p.D_s >= *cv->saturation && p.value != 1.0) ok = false;
      }
      shift = std::max(shift, std::abs(c1.points[i].raw - c0.points[i].raw - 0.1));
    }
    ok = ok && shift <= 1e-12;
    d += "case " + std::to_string(c) + fmt(": D_s* %.5f (R_k=0), %.5f (R_k=0.1); ", *c0.saturation, *c1.saturation);
  }
  return {ok, d};
}

// 6. Appendix inequality over 1e4 random joints.
Outcome appendix() {
  const CheckResult c = check_appendix(1, 10000);
  return {c.pass, fmt("min slack %.4f over 10000 joints (floor -1e-9)", c.observed)};
}

// 7. Special-case reductions at 100 random parameter points.
Outcome reductions() {
  std::mt19937_64 rng(2024);
  auto U = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    GaussianSource src{U(0.2, 2.0), U(0.2, 2.0), 0.0};
    src.P_su = U(-0.95, 0.95) * std::sqrt(src.P_s * src.P_u);
    const GaussianChannel ch{U(0.2, 3.0), U(0.05, 1.0), U(0.0, 1.0)};
    const double D_s = U(src.case1_floor() * 1.01 + 1e-6, src.P_s * 1.2);
    const double D_u = U(0.05, src.P_u * 1.2);
    const double R_k = U(0.0, 1.0), r = U(0.0, 3.0);
    for (int c : {1, 2}) {
      // No channel: Delta_s <= R_k + h(S) - R_s(D_s).
      const auto z = converse_equivocation_caps(src, ch, D_s, D_u, 0.0, R_k, U(0, 1), U(0, 1), c);
      worst = std::max(worst, std::abs(z.s.raw - (R_k + src.h_s() - gaussian_rdf_sem(src, D_s, c))));
    }
    // Case 1 with semantic constraints dropped: Delta_u line at beta = 1.
    const auto y = converse_equivocation_caps(src, ch, D_s, D_u, r, R_k, U(0, 1), U(0, 1), 1);
    worst = std::max(worst,
                     std::abs(y.u.raw - (R_k + r * secrecy_term(ch, 1.0) + src.h_u() - gaussian_rdf_obs(src, D_u))));

    const BinarySource bs{U(0.0, 0.45)};
    const BinaryChannel bc{U(0.0, 0.5), U(0.0, 0.5)};
    const double bD = U(bs.alpha + 1e-3, 0.5);
    const auto bz = binary_converse_caps(bs, bc, bD, U(0.0, 0.5), 0.0, R_k, U(0, 1), 0.0, 1);
    worst = std::max(worst, std::abs(bz.s.raw - (R_k + 1.0 - binary_rdf_sem(bs.alpha, bD, 1))));
  }
  return {worst <= 1e-9, fmt("worst |deviation| %.2e over 100 points (tol 1e-9)", worst)};
}

// 8. Two runs with the same config and seed write identical CSV bytes.
Outcome determinism() {
  bool ok = true;
  std::string d;
  for (const char* preset : {"gaussian-converse-fig3", "gaussian-inner", "binary-tradeoff-fig5"}) {
    RunConfig cfg = parse_config(preset_json(preset));
    if (cfg.mode == Mode::Inner) cfg.samples = 20000;
    std::string bytes[2];
    for (int k = 0; k < 2; ++k) {
      cfg.threads = k == 0 ? 1 : 0;
      cfg.out = "acceptance_" + std::string(preset) + "_" + std::to_string(k) + ".csv";
      write_outputs(run(cfg), cfg, std::cout);
      std::ifstream f(cfg.out, std::ios::binary);
      std::ostringstream s;
      s << f.rdbuf();
      bytes[k] = s.str();
      std::remove(cfg.out.c_str());
      std::remove((cfg.out + ".meta.json").c_str());
    }
    const bool same = !bytes[0].empty() && bytes[0] == bytes[1];
    ok = ok && same;
    d += std::string(preset) + (same ? " identical; " : " DIFFERS; ");
  }
  return {ok, d};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"closed-form spot values", spot_values},
      {"Blahut-Arimoto oracle equivalence", oracle_equivalence},
      {"inner/converse sandwich", sandwich},
      {"surface orderings", orderings},
      {"binary saturation", saturation},
      {"appendix inequality", appendix},
      {"special-case reductions", reductions},
      {"deterministic output", determinism},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s -- %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
