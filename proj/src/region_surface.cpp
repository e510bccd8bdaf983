#include "semsec/region_surface.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace semsec {
namespace {

const char* kind_name(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::MinRate: return "surface";
    case SurfaceKind::Rdf: return "rdf";
    case SurfaceKind::DeltaCurve: return "curve";
  }
  return "surface";
}

std::string num_or_empty(bool present, double v) { return present ? format_number(v) : std::string(); }

}  // namespace

bool RegionSurface::any_feasible() const {
  return std::any_of(cells.begin(), cells.end(), [](const SurfaceCell& c) { return c.feasible; });
}

bool RunResult::all_infeasible() const {
  return std::none_of(surfaces.begin(), surfaces.end(), [](const RegionSurface& s) { return s.any_feasible(); });
}

std::string format_number(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("refusing to format a non-finite number");
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(const RunResult& result, std::ostream& out) {
  if (result.surfaces.empty()) throw std::invalid_argument("nothing to write");
  const SurfaceKind kind = result.surfaces.front().kind;
  for (const auto& s : result.surfaces) {
    if (s.kind != kind) throw std::invalid_argument("cannot mix surface kinds in one CSV");
  }
  out << "# semsec-" << kind_name(kind) << " v1\n";
  switch (kind) {
    case SurfaceKind::MinRate:
      out << "series,case,D_s,D_u,r_min,feasible,capped,samples\n";
      for (const auto& s : result.surfaces) {
        for (const auto& c : s.cells) {
          out << s.series << ',' << s.encoder_case << ',' << format_number(c.D_s) << ',' << format_number(c.D_u)
              << ',' << num_or_empty(c.feasible, c.value) << ',' << (c.feasible ? 1 : 0) << ','
              << (c.capped ? 1 : 0) << ',' << c.samples << '\n';
        }
      }
      break;
    case SurfaceKind::Rdf:
      out << "series,case,D_s,D_u,rate,feasible\n";
      for (const auto& s : result.surfaces) {
        for (const auto& c : s.cells) {
          out << s.series << ',' << s.encoder_case << ',' << format_number(c.D_s) << ',' << format_number(c.D_u)
              << ',' << num_or_empty(c.feasible, c.value) << ',' << (c.feasible ? 1 : 0) << '\n';
        }
      }
      break;
    case SurfaceKind::DeltaCurve:
      out << "series,case,R_k,D_s,delta_s_raw,delta_s_max,capped\n";
      for (const auto& s : result.surfaces) {
        for (const auto& c : s.cells) {
          out << s.series << ',' << s.encoder_case << ',' << format_number(s.R_k) << ',' << format_number(c.D_s)
              << ',' << format_number(c.raw) << ',' << format_number(c.value) << ',' << (c.capped ? 1 : 0) << '\n';
        }
      }
      break;
  }
}

nlohmann::json to_json(const RunResult& result) {
  using nlohmann::json;
  json doc = json::object();
  doc["metadata"] = result.metadata;
  json arr = json::array();
  for (const auto& s : result.surfaces) {
    json js = {{"kind", kind_name(s.kind)}, {"series", s.series}, {"case", s.encoder_case}, {"info", s.info}};
    if (s.kind == SurfaceKind::DeltaCurve) {
      js["R_k"] = s.R_k;
      js["saturation"] = s.saturation ? json(*s.saturation) : json(nullptr);
    }
    json cells = json::array();
    for (const auto& c : s.cells) {
      json jc = {{"D_s", c.D_s}};
      if (s.kind == SurfaceKind::DeltaCurve) {
        jc["delta_s_raw"] = c.raw;
        jc["delta_s_max"] = c.value;
        jc["capped"] = c.capped;
      } else {
        jc["D_u"] = c.D_u;
        jc["feasible"] = c.feasible;
        jc[s.kind == SurfaceKind::Rdf ? "rate" : "r_min"] = c.feasible ? json(c.value) : json(nullptr);
        if (s.kind == SurfaceKind::MinRate) {
          jc["capped"] = c.capped;
          jc["samples"] = c.samples;
        }
      }
      cells.push_back(std::move(jc));
    }
    js["cells"] = std::move(cells);
    arr.push_back(std::move(js));
  }
  doc["surfaces"] = std::move(arr);
  return doc;
}

}  // namespace semsec
