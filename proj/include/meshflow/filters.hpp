#pragma once

#include <string>

#include "meshflow/mesh.hpp"
#include "meshflow/normal_filters.hpp"
#include "meshflow/vertex_filters.hpp"

namespace meshflow {

// One denoising run: a filter family plus its parameters. Fields that a
// family does not consume are ignored.
struct FilterSpec {
  enum class Family { Mean, Min, Median, Mmse, Laplacian, Diffusion };

  Family family = Family::Mean;
  DiffusivityKind diffusivity = DiffusivityKind::Cauchy;  // Diffusion
  double c = 1.0;                                         // Diffusion
  double step = 1.0;                                      // Diffusion
  double lambda = 0.5;                                    // Laplacian
  double mmse_noise_variance = 0.0;                       // Mmse
  int iterations = 1;

  bool is_vertex_based() const {
    return family == Family::Laplacian || family == Family::Diffusion;
  }
};

std::string family_name(FilterSpec::Family family);
std::string diffusivity_name(DiffusivityKind kind);

// Inverse lookups; throw std::invalid_argument on unknown names.
FilterSpec::Family family_from_name(const std::string& name);
DiffusivityKind diffusivity_from_name(const std::string& name);

// Short human-readable parameter summary, e.g. "c=2.3849 iterations=3".
std::string describe(const FilterSpec& spec);

// Parses "family[:key=value[,key=value...]]" with keys diffusivity, c,
// step, lambda, variance, iterations. Examples:
//   diffusion:diffusivity=cauchy,c=2.3849,iterations=3
//   laplacian:lambda=0.45,iterations=2
//   median:iterations=4
// Throws std::invalid_argument with a message naming the bad token.
FilterSpec parse_filter_spec(const std::string& text);

// One outer iteration of the spec's filter on prebuilt adjacency.
Mesh filter_step(const Mesh& mesh, const AdjacencyIndex& adj,
                 const FilterSpec& spec);

// Applies spec.iterations steps.
Mesh run_filter(const Mesh& mesh, const FilterSpec& spec);

}  // namespace meshflow
