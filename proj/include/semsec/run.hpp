#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "semsec/region_surface.hpp"
#include "semsec/run_config.hpp"

namespace semsec {

// One Monte Carlo draw evaluated against several target families.
struct InnerRecord {
  bool ok = false;     // false when the draw was discarded
  std::string reason;  // why it was discarded
  double D_s = 0.0, D_u = 0.0;
  std::vector<MinRate> per_series;
};

// Samples 0..n-1 of the substream family rooted at `seed`. The result does
// not depend on `threads`.
std::vector<InnerRecord> inner_records(const GaussianSource& src, const GaussianChannel& ch, int encoder_case,
                                       const std::vector<EquivocationTargets>& targets, std::size_t n,
                                       std::uint64_t seed, int threads = 0);

// Grid index of the bucket holding `v`: the first axis value >= v, or -1
// past the last one.
long bucket_index(const std::vector<double>& axis, double v);

RunResult run(const RunConfig& cfg);

// Writes the CSV (plus "<path>.meta.json") or the JSON document. An empty
// path writes the primary output to `fallback` and skips the sidecar.
void write_outputs(const RunResult& result, const RunConfig& cfg, std::ostream& fallback);

}  // namespace semsec
