#include "semsec/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include "semsec/errors.hpp"

namespace semsec {
namespace {

using nlohmann::json;

int worker_count(int requested, std::size_t jobs) {
  unsigned n = requested > 0 ? static_cast<unsigned>(requested) : std::thread::hardware_concurrency();
  n = std::max(1u, n);
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Runs body(i) for i in [0, n). Each index writes only its own slot, so the
// assembled output is independent of scheduling. The first exception wins.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  const int workers = worker_count(threads, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

json reasons_json(const std::map<std::string, std::size_t>& counts) {
  json j = json::object();
  for (const auto& [k, v] : counts) j[k] = v;
  return j;
}

std::vector<RegionSurface> converse_surfaces(const RunConfig& cfg) {
  const PolicyChoice pol = resolve_policy(cfg);
  std::vector<RegionSurface> out;
  for (const Series& s : cfg.series) {
    for (int c : cfg.cases) {
      RegionSurface surf;
      surf.kind = SurfaceKind::MinRate;
      surf.series = s.name;
      surf.encoder_case = c;
      surf.R_k = s.targets.R_k;
      const std::size_t nu = cfg.D_u.size();
      surf.cells.resize(cfg.D_s.size() * nu);
      std::vector<std::string> reasons(surf.cells.size());
      parallel_for(surf.cells.size(), cfg.threads, [&](std::size_t k) {
        SurfaceCell& cell = surf.cells[k];
        cell.D_s = cfg.D_s[k / nu];
        cell.D_u = cfg.D_u[k % nu];
        const MinRate m = cfg.model == Model::Gaussian
                              ? converse_min_r(cfg.gsrc, cfg.gch, cell.D_s, cell.D_u, s.targets, pol.p1, pol.p2, c)
                              : binary_min_r(cfg.bsrc, cfg.bch, cell.D_s, cell.D_u, s.targets, pol.p1, pol.p2, c);
        cell.feasible = m.feasible;
        cell.value = m.feasible ? m.r : 0.0;
        cell.capped = m.capped;
        if (!m.feasible) reasons[k] = m.reason;
      });
      std::map<std::string, std::size_t> counts;
      for (const auto& r : reasons) {
        if (!r.empty()) ++counts[r];
      }
      surf.info["infeasible_reasons"] = reasons_json(counts);
      surf.info[cfg.model == Model::Gaussian ? "beta" : "gamma"] = {pol.p1, c == 1 ? (cfg.model == Model::Gaussian ? 1.0 : 0.0) : pol.p2};
      if (!surf.any_feasible()) surf.info["explanation"] = "no grid cell admits a finite r";
      out.push_back(std::move(surf));
    }
  }
  return out;
}

std::vector<RegionSurface> inner_surfaces(const RunConfig& cfg) {
  std::vector<EquivocationTargets> targets;
  for (const Series& s : cfg.series) targets.push_back(s.targets);
  std::vector<RegionSurface> out;
  for (int c : cfg.cases) {
    const auto recs = inner_records(cfg.gsrc, cfg.gch, c, targets, cfg.samples, cfg.seed, cfg.threads);
    for (std::size_t si = 0; si < cfg.series.size(); ++si) {
      RegionSurface surf;
      surf.kind = SurfaceKind::MinRate;
      surf.series = cfg.series[si].name;
      surf.encoder_case = c;
      const std::size_t nu = cfg.D_u.size();
      surf.cells.resize(cfg.D_s.size() * nu);
      for (std::size_t k = 0; k < surf.cells.size(); ++k) {
        surf.cells[k].D_s = cfg.D_s[k / nu];
        surf.cells[k].D_u = cfg.D_u[k % nu];
      }
      std::map<std::string, std::size_t> rejected;
      std::size_t outside = 0;
      for (const InnerRecord& r : recs) {
        if (!r.ok) {
          ++rejected[r.reason];
          continue;
        }
        const MinRate& m = r.per_series[si];
        if (!m.feasible) {
          ++rejected[m.reason];
          continue;
        }
        const long i = bucket_index(cfg.D_s, r.D_s);
        const long j = bucket_index(cfg.D_u, r.D_u);
        if (i < 0 || j < 0) {
          ++outside;
          continue;
        }
        SurfaceCell& cell = surf.cells[static_cast<std::size_t>(i) * nu + static_cast<std::size_t>(j)];
        if (!cell.feasible || m.r < cell.value) cell.value = m.r;
        cell.feasible = true;
        ++cell.samples;
      }
      surf.info["samples"] = cfg.samples;
      surf.info["rejected"] = reasons_json(rejected);
      surf.info["outside_grid"] = outside;
      if (!surf.any_feasible()) surf.info["explanation"] = "no sample satisfied the achievability constraints";
      out.push_back(std::move(surf));
    }
  }
  return out;
}

std::vector<RegionSurface> curve_surfaces(const RunConfig& cfg) {
  const PolicyChoice pol = resolve_policy(cfg);
  std::vector<RegionSurface> out;
  for (double rk : cfg.curve.R_k) {
    for (int c : cfg.cases) {
      RegionSurface surf;
      surf.kind = SurfaceKind::DeltaCurve;
      surf.series = "R_k=" + format_number(rk);
      surf.encoder_case = c;
      surf.R_k = rk;
      DeltaSCurve curve;
      try {
        curve = delta_s_curve(cfg.bsrc, cfg.bch, cfg.curve.r, cfg.curve.D_u, rk, cfg.D_s, c, pol.p1);
      } catch (const std::invalid_argument& e) {
        surf.info["explanation"] = e.what();
        out.push_back(std::move(surf));
        continue;
      }
      for (const CurvePoint& p : curve.points) {
        SurfaceCell cell;
        cell.D_s = p.D_s;
        cell.feasible = true;
        cell.value = p.value;
        cell.raw = p.raw;
        cell.capped = p.capped;
        surf.cells.push_back(cell);
      }
      surf.saturation = curve.saturation;
      surf.info["dropped_points"] = cfg.D_s.size() - curve.points.size();
      surf.info["saturation"] = curve.saturation ? json(*curve.saturation) : json(nullptr);
      out.push_back(std::move(surf));
    }
  }
  return out;
}

std::vector<RegionSurface> rdf_surfaces(const RunConfig& cfg) {
  std::vector<RegionSurface> out;
  for (int c : cfg.cases) {
    RegionSurface surf;
    surf.kind = SurfaceKind::Rdf;
    surf.series = "rdf";
    surf.encoder_case = c;
    const std::size_t nu = cfg.D_u.size();
    surf.cells.resize(cfg.D_s.size() * nu);
    parallel_for(surf.cells.size(), cfg.threads, [&](std::size_t k) {
      SurfaceCell& cell = surf.cells[k];
      cell.D_s = cfg.D_s[k / nu];
      cell.D_u = cfg.D_u[k % nu];
      const double v = cfg.model == Model::Gaussian ? gaussian_rdf_joint(cfg.gsrc, cell.D_s, cell.D_u, c)
                                                    : binary_converse_rdf_joint(cfg.bsrc, cell.D_s, cell.D_u, c);
      cell.feasible = std::isfinite(v);
      cell.value = cell.feasible ? v : 0.0;
    });
    if (!surf.any_feasible()) surf.info["explanation"] = "the joint RDF is infinite on the whole grid";
    out.push_back(std::move(surf));
  }
  return out;
}

}  // namespace

long bucket_index(const std::vector<double>& axis, double v) {
  const auto it = std::lower_bound(axis.begin(), axis.end(), v);
  return it == axis.end() ? -1 : static_cast<long>(it - axis.begin());
}

std::vector<InnerRecord> inner_records(const GaussianSource& src, const GaussianChannel& ch, int encoder_case,
                                       const std::vector<EquivocationTargets>& targets, std::size_t n,
                                       std::uint64_t seed, int threads) {
  std::vector<InnerRecord> recs(n);
  parallel_for(n, threads, [&](std::size_t i) {
    InnerRecord& r = recs[i];
    try {
      const InnerSample s = draw_inner_sample(src, ch, encoder_case, seed, i);
      r.D_s = s.D_s;
      r.D_u = s.D_u;
      for (const auto& t : targets) r.per_series.push_back(inner_min_r(s, t));
      r.ok = true;
    } catch (const NumericalError&) {
      // near-singular canonical correlation: the draw is dropped
      r.reason = "numerical";
    }
  });
  return recs;
}

RunResult run(const RunConfig& cfg) {
  validate(cfg);
  RunResult res;
  switch (cfg.mode) {
    case Mode::Converse: res.surfaces = converse_surfaces(cfg); break;
    case Mode::Inner: res.surfaces = inner_surfaces(cfg); break;
    case Mode::Curve: res.surfaces = curve_surfaces(cfg); break;
    case Mode::Rdf: res.surfaces = rdf_surfaces(cfg); break;
  }
  json cfg_echo = config_to_json(cfg);
  // Thread count does not affect results; keep it out of the echo so
  // metadata stays byte-identical across machines.
  cfg_echo.erase("threads");
  res.metadata = {{"tool", "semsec"},
                  {"version", SEMSEC_VERSION},
                  {"seed", cfg.seed},
                  {"seed_derivation", "mt19937_64(splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15)) for sample i"},
                  {"config", cfg_echo}};
  if (res.all_infeasible()) res.metadata["explanation"] = "every grid cell of every surface is infeasible";
  return res;
}

void write_outputs(const RunResult& result, const RunConfig& cfg, std::ostream& fallback) {
  auto open = [](const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return f;
  };
  if (cfg.format == "json") {
    const std::string text = to_json(result).dump(2) + "\n";
    if (cfg.out.empty()) {
      fallback << text;
    } else {
      auto f = open(cfg.out);
      f << text;
    }
    return;
  }
  if (cfg.out.empty()) {
    write_csv(result, fallback);
    return;
  }
  {
    auto f = open(cfg.out);
    write_csv(result, f);
  }
  json meta = to_json(result);
  for (auto& s : meta["surfaces"]) s.erase("cells");
  auto f = open(cfg.out + ".meta.json");
  f << meta.dump(2) << "\n";
}

}  // namespace semsec
