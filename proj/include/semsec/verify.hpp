#pragma once

// Oracle suites behind `semsec verify`.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "semsec/discrete_rdf.hpp"
#include "semsec/run_config.hpp"

namespace semsec {

struct CheckResult {
  std::string name;
  bool pass = false;
  double observed = 0.0;   // worst deviation or minimum slack
  double threshold = 0.0;
  nlohmann::json detail = nlohmann::json::object();
};

// Small fixed set of 2x2 semantic sources with Hamming distortions.
struct CorpusInstance {
  std::string name;
  Pmf joint;
  double D_s, D_u;
  int encoder_case;
};
std::vector<CorpusInstance> rdf_corpus();

// Grid term of the BA/brute comparison: width of the brute-force bracket
// [lower_bound, rate] at grid 21. Grid 11 is run to check refinement.
inline constexpr int kBruteGrid = 21;
inline constexpr int kBruteCoarseGrid = 11;

CheckResult check_ba_closed_forms(double alpha = 0.25, int points = 50);
CheckResult check_ba_brute();
// Two results from one batch of draws per case:
//  "sandwich": every accepted draw has inner r >= converse r at its own
//              distortions - 1e-6;
//  "inner-near-converse": for the no-secrecy and semantic series, some grid
//              bucket has min inner r <= 1.15 x converse r (converse r > 0.05).
std::vector<CheckResult> check_sandwich(const RunConfig& cfg, std::size_t samples_per_case);
CheckResult check_appendix(std::uint64_t seed, std::size_t draws);

// Random 5-axis binary joint: normalized unit exponentials with each cell
// zeroed with probability 0.2.
Pmf random_joint32(std::uint64_t seed, std::uint64_t index);

nlohmann::json verify_report(const RunConfig& cfg, std::vector<CheckResult>* out = nullptr);

}  // namespace semsec
