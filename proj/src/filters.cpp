#include "meshflow/filters.hpp"

#include <cstdio>
#include <stdexcept>

namespace meshflow {

namespace {

std::string fmt_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

NormalFilterKind normal_kind(const FilterSpec& spec) {
  switch (spec.family) {
    case FilterSpec::Family::Mean:
      return {NormalFilter::Mean, 0.0};
    case FilterSpec::Family::Min:
      return {NormalFilter::Min, 0.0};
    case FilterSpec::Family::Median:
      return {NormalFilter::Median, 0.0};
    case FilterSpec::Family::Mmse:
      return {NormalFilter::AdaptiveMmse, spec.mmse_noise_variance};
    default:
      throw std::logic_error("not a normal filter");
  }
}

}  // namespace

std::string family_name(FilterSpec::Family family) {
  switch (family) {
    case FilterSpec::Family::Mean:
      return "mean";
    case FilterSpec::Family::Min:
      return "min";
    case FilterSpec::Family::Median:
      return "median";
    case FilterSpec::Family::Mmse:
      return "mmse";
    case FilterSpec::Family::Laplacian:
      return "laplacian";
    case FilterSpec::Family::Diffusion:
      return "diffusion";
  }
  return "?";
}

std::string diffusivity_name(DiffusivityKind kind) {
  switch (kind) {
    case DiffusivityKind::Cauchy:
      return "cauchy";
    case DiffusivityKind::Gaussian:
      return "gaussian";
    case DiffusivityKind::Laplace:
      return "laplace";
    case DiffusivityKind::Rayleigh:
      return "rayleigh";
  }
  return "?";
}

std::string describe(const FilterSpec& spec) {
  std::string out = "filter=" + family_name(spec.family);
  switch (spec.family) {
    case FilterSpec::Family::Diffusion:
      out += " diffusivity=" + diffusivity_name(spec.diffusivity);
      out += " c=" + fmt_param(spec.c);
      if (spec.step != 1.0) out += " step=" + fmt_param(spec.step);
      break;
    case FilterSpec::Family::Laplacian:
      out += " lambda=" + fmt_param(spec.lambda);
      break;
    case FilterSpec::Family::Mmse:
      out += " variance=" + fmt_param(spec.mmse_noise_variance);
      break;
    default:
      break;
  }
  out += " iterations=" + std::to_string(spec.iterations);
  return out;
}

FilterSpec::Family family_from_name(const std::string& name) {
  if (name == "mean") return FilterSpec::Family::Mean;
  if (name == "min") return FilterSpec::Family::Min;
  if (name == "median") return FilterSpec::Family::Median;
  if (name == "mmse") return FilterSpec::Family::Mmse;
  if (name == "laplacian") return FilterSpec::Family::Laplacian;
  if (name == "diffusion") return FilterSpec::Family::Diffusion;
  throw std::invalid_argument("unknown filter '" + name + "'");
}

DiffusivityKind diffusivity_from_name(const std::string& name) {
  if (name == "cauchy") return DiffusivityKind::Cauchy;
  if (name == "gaussian") return DiffusivityKind::Gaussian;
  if (name == "laplace") return DiffusivityKind::Laplace;
  if (name == "rayleigh") return DiffusivityKind::Rayleigh;
  throw std::invalid_argument("unknown diffusivity '" + name + "'");
}

namespace {

double parse_number(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("bad value '" + value + "' for " + key);
}

}  // namespace

FilterSpec parse_filter_spec(const std::string& text) {
  FilterSpec spec;
  const auto colon = text.find(':');
  spec.family = family_from_name(text.substr(0, colon));
  if (colon == std::string::npos) return spec;

  std::string rest = text.substr(colon + 1);
  size_t pos = 0;
  while (pos < rest.size()) {
    size_t end = rest.find(',', pos);
    if (end == std::string::npos) end = rest.size();
    const std::string item = rest.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;

    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("expected key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "diffusivity") {
      spec.diffusivity = diffusivity_from_name(value);
    } else if (key == "c") {
      spec.c = parse_number(key, value);
    } else if (key == "step") {
      spec.step = parse_number(key, value);
    } else if (key == "lambda") {
      spec.lambda = parse_number(key, value);
    } else if (key == "variance") {
      spec.mmse_noise_variance = parse_number(key, value);
    } else if (key == "iterations") {
      spec.iterations = static_cast<int>(parse_number(key, value));
    } else {
      throw std::invalid_argument("unknown filter option '" + key + "'");
    }
  }
  return spec;
}

Mesh filter_step(const Mesh& mesh, const AdjacencyIndex& adj,
                 const FilterSpec& spec) {
  switch (spec.family) {
    case FilterSpec::Family::Laplacian: {
      LaplacianConfig cfg{spec.lambda, 1};
      return laplacian_flow_step(mesh, adj, cfg);
    }
    case FilterSpec::Family::Diffusion: {
      DiffusionConfig cfg{spec.diffusivity, spec.c, 1, spec.step};
      return diffusion_step(mesh, adj, cfg);
    }
    default: {
      NormalField field = face_normals(mesh);
      field = smooth_normals(mesh, adj, field, normal_kind(spec));
      return update_vertices_from_normals(mesh, adj, field);
    }
  }
}

Mesh run_filter(const Mesh& mesh, const FilterSpec& spec) {
  if (spec.iterations < 0) {
    throw std::invalid_argument("iterations must be >= 0");
  }
  const AdjacencyIndex adj = build_adjacency(mesh);
  Mesh current = mesh;
  for (int k = 0; k < spec.iterations; ++k) {
    current = filter_step(current, adj, spec);
  }
  return current;
}

}  // namespace meshflow
