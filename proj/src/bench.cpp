#include "meshflow/bench.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "meshflow/mesh_io.hpp"

namespace meshflow {

namespace {

std::string run_name(int index, const FilterSpec& spec) {
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%02d_", index);
  std::string name = prefix + family_name(spec.family);
  if (spec.family == FilterSpec::Family::Diffusion) {
    name += "_" + diffusivity_name(spec.diffusivity);
  }
  return name;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<ErrorReport>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "iteration,eps_v,eps_f\n";
  for (const ErrorReport& row : rows) {
    out << row.iteration << ',' << csv_number(row.eps_v) << ','
        << csv_number(row.eps_f) << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

nlohmann::json params_json(const FilterSpec& spec) {
  nlohmann::json params;
  params["family"] = family_name(spec.family);
  params["iterations"] = spec.iterations;
  switch (spec.family) {
    case FilterSpec::Family::Diffusion:
      params["diffusivity"] = diffusivity_name(spec.diffusivity);
      params["c"] = spec.c;
      params["step"] = spec.step;
      break;
    case FilterSpec::Family::Laplacian:
      params["lambda"] = spec.lambda;
      break;
    case FilterSpec::Family::Mmse:
      params["variance"] = spec.mmse_noise_variance;
      break;
    default:
      break;
  }
  return params;
}

void find_argmins(BenchRun& run) {
  if (run.rows.empty()) return;
  const ErrorReport* best_v = &run.rows.front();
  const ErrorReport* best_f = &run.rows.front();
  for (const ErrorReport& row : run.rows) {
    if (row.eps_v < best_v->eps_v) best_v = &row;
    if (row.eps_f < best_f->eps_f) best_f = &row;
  }
  run.argmin_eps_v = best_v->iteration;
  run.argmin_eps_f = best_f->iteration;
}

}  // namespace

BenchResult run_bench(const BenchPlan& plan, std::ostream* log) {
  const Mesh input = load_mesh(plan.input);
  const Mesh reference =
      plan.reference ? load_mesh(*plan.reference) : input;

  const NoiseSpec noise{plan.noise_level, plan.seed, plan.noise_direction};
  const Mesh noisy = add_gaussian_noise(input, noise);

  const SpatialIndex index = build_spatial_index(reference);
  const bool f_defined = same_connectivity(noisy, reference);

  auto measure = [&](const Mesh& m, int iteration) {
    ErrorReport report;
    report.iteration = iteration;
    report.eps_v = vertex_position_error(m, reference, index);
    report.eps_f = f_defined ? face_normal_error(m, reference)
                             : std::numeric_limits<double>::quiet_NaN();
    return report;
  };

  std::filesystem::create_directories(plan.output_dir);

  BenchResult result;
  result.noisy_baseline = measure(noisy, 0);
  if (log) {
    *log << "noisy baseline: eps_v=" << result.noisy_baseline.eps_v
         << " eps_f=" << result.noisy_baseline.eps_f << "\n";
  }

  bool all_ok = true;
  const AdjacencyIndex adj = build_adjacency(noisy);

  for (size_t fi = 0; fi < plan.filters.size(); ++fi) {
    BenchRun run;
    run.spec = plan.filters[fi];
    run.name = run_name(static_cast<int>(fi) + 1, run.spec);

    if (run.spec.iterations < 1) {
      run.error = "max iterations must be >= 1";
      all_ok = false;
      result.runs.push_back(std::move(run));
      continue;
    }
    if (run.spec.family == FilterSpec::Family::Laplacian &&
        !(run.spec.lambda > 0.0 && run.spec.lambda <= 1.0) && log) {
      *log << run.name << ": warning: lambda=" << run.spec.lambda
           << " outside the recommended range (0, 1]\n";
    }

    Mesh current = noisy;
    try {
      for (int it = 1; it <= run.spec.iterations; ++it) {
        current = filter_step(current, adj, run.spec);
        run.rows.push_back(measure(current, it));
      }
      find_argmins(run);
      write_csv(plan.output_dir + "/" + run.name + ".csv", run.rows);
      if (log) {
        *log << run.name << ": " << describe(run.spec)
             << " argmin_eps_v=" << run.argmin_eps_v << "\n";
      }
    } catch (const std::exception& e) {
      run.error = e.what();
      run.rows.clear();
      all_ok = false;
      if (log) *log << run.name << ": failed: " << e.what() << "\n";
    }
    result.runs.push_back(std::move(run));
  }

  nlohmann::json summary;
  summary["input"] = plan.input;
  summary["reference"] = plan.reference ? nlohmann::json(*plan.reference)
                                        : nlohmann::json(nullptr);
  summary["noise_level"] = plan.noise_level;
  summary["seed"] = plan.seed;
  summary["noisy_baseline"] = {{"eps_v", result.noisy_baseline.eps_v},
                               {"eps_f", result.noisy_baseline.eps_f}};
  nlohmann::json filters = nlohmann::json::array();
  for (const BenchRun& run : result.runs) {
    nlohmann::json entry;
    entry["name"] = run.name;
    entry["params"] = params_json(run.spec);
    nlohmann::json rows = nlohmann::json::array();
    for (const ErrorReport& row : run.rows) {
      rows.push_back({{"iteration", row.iteration},
                      {"eps_v", row.eps_v},
                      {"eps_f", row.eps_f}});
    }
    entry["rows"] = rows;
    if (!run.rows.empty()) {
      entry["argmin_eps_v"] = run.argmin_eps_v;
      entry["argmin_eps_f"] = run.argmin_eps_f;
    }
    if (!run.error.empty()) entry["error"] = run.error;
    filters.push_back(entry);
  }
  summary["filters"] = filters;

  const std::string summary_path = plan.output_dir + "/summary.json";
  std::ofstream out(summary_path);
  if (!out) {
    throw std::runtime_error("cannot open '" + summary_path +
                             "' for writing");
  }
  out << summary.dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write to '" + summary_path + "' failed");

  result.all_written = all_ok;
  return result;
}

}  // namespace meshflow
