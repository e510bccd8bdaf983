#pragma once

// Run configuration: JSON parsing, validation and the built-in presets.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "semsec/binary_region.hpp"
#include "semsec/gaussian_region.hpp"
#include "semsec/targets.hpp"

namespace semsec {

enum class Model { Gaussian, Binary };
enum class Mode { Converse, Inner, Curve, Rdf };

// One family of secrecy targets; a run produces one surface per (series, case).
struct Series {
  std::string name;
  EquivocationTargets targets;  // resolved numbers
};

// beta (Gaussian) or gamma (binary). With sweep on, each secrecy term is
// maximized over a grid of 64 points in [0, 1].
struct ParamPolicy {
  bool sweep = false;
  double p1 = 1.0;
  double p2 = 1.0;
};

struct CurveSpec {
  double r = 1.0;
  double D_u = 0.25;
  std::vector<double> R_k{0.0};
};

struct RunConfig {
  Mode mode = Mode::Converse;
  Model model = Model::Gaussian;
  std::vector<int> cases{1, 2};
  GaussianSource gsrc;
  GaussianChannel gch;
  BinarySource bsrc;
  BinaryChannel bch;
  std::vector<Series> series;
  std::vector<double> D_s, D_u;
  ParamPolicy policy;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  CurveSpec curve;
  std::string out;
  std::string format = "csv";
  std::string preset;
};

std::string to_string(Model m);
std::string to_string(Mode m);

// Parses and validates. Keys absent from `doc` keep their defaults; unknown
// keys are rejected. Errors are ValidationError with a JSON-style field path.
RunConfig parse_config(const nlohmann::json& doc);
void validate(const RunConfig& cfg);

// Canonical echo of a parsed configuration, suitable for parse_config.
nlohmann::json config_to_json(const RunConfig& cfg);

std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);
// Throws ValidationError("preset", ...) for an unknown name.
nlohmann::json preset_json(const std::string& name);

// Secrecy-term parameters actually used for a model and policy.
struct PolicyChoice {
  double p1, p2;
};
PolicyChoice resolve_policy(const RunConfig& cfg);

}  // namespace semsec
