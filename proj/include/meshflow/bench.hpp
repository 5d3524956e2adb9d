#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "meshflow/filters.hpp"
#include "meshflow/metrics.hpp"
#include "meshflow/noise.hpp"

namespace meshflow {

// noise -> filter -> measure sweep. Each filter runs from the same noisy
// mesh for 1..iterations steps with an ErrorReport against the clean
// reference after every step.
struct BenchPlan {
  std::string input;
  std::optional<std::string> reference;  // defaults to the pre-noise input
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  NoiseDirection noise_direction = NoiseDirection::PerCoordinate;
  std::vector<FilterSpec> filters;
  std::string output_dir;
};

struct BenchRun {
  std::string name;      // CSV stem, e.g. "01_diffusion_cauchy"
  FilterSpec spec;
  std::vector<ErrorReport> rows;
  int argmin_eps_v = 0;  // iteration with the smallest eps_v (earliest tie)
  int argmin_eps_f = 0;
  std::string error;     // nonempty when the run aborted
};

struct BenchResult {
  ErrorReport noisy_baseline;  // metrics of the noisy mesh, iteration 0
  std::vector<BenchRun> runs;
  bool all_written = false;
};

// Writes <output_dir>/<name>.csv per filter (header iteration,eps_v,eps_f)
// plus <output_dir>/summary.json. A failing filter is recorded in the
// summary and the remaining filters still run. Progress goes to `log`
// when non-null. Output files are byte-identical for identical plans.
BenchResult run_bench(const BenchPlan& plan, std::ostream* log = nullptr);

}  // namespace meshflow
