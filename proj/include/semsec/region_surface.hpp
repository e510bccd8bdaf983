#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace semsec {

struct SurfaceCell {
  double D_s = 0.0;
  double D_u = 0.0;
  bool feasible = false;
  double value = 0.0;  // r_min, rate or Delta_s (after the clamp); meaningless when infeasible
  double raw = 0.0;    // curves: Delta_s before the clamp
  bool capped = false;
  std::size_t samples = 0;
};

enum class SurfaceKind { MinRate, Rdf, DeltaCurve };

// One series of a run: a (D_s, D_u) surface, or a D_s curve.
struct RegionSurface {
  SurfaceKind kind = SurfaceKind::MinRate;
  std::string series;
  int encoder_case = 2;
  double R_k = 0.0;
  std::vector<SurfaceCell> cells;
  std::optional<double> saturation;  // curves only
  nlohmann::json info = nlohmann::json::object();

  bool any_feasible() const;
};

struct RunResult {
  std::vector<RegionSurface> surfaces;
  nlohmann::json metadata = nlohmann::json::object();

  bool all_infeasible() const;
};

// Shortest round-trip decimal form.
std::string format_number(double v);

// CSV with a leading "# semsec-<kind> v1" line. Mixed kinds are rejected.
void write_csv(const RunResult& result, std::ostream& out);
nlohmann::json to_json(const RunResult& result);

}  // namespace semsec
