#pragma once

#include <cstdint>

#include "meshflow/mesh.hpp"

namespace meshflow {

enum class NoiseDirection { PerCoordinate, AlongVertexNormal };

// Gaussian perturbation with standard deviation level * mean_edge_length.
struct NoiseSpec {
  double level = 0.0;
  std::uint64_t seed = 0;
  NoiseDirection direction = NoiseDirection::PerCoordinate;
};

// The displacement of vertex i is a pure function of (seed, i), so output
// is bit-identical for any thread count. Connectivity is untouched.
// Throws std::invalid_argument for level < 0 and std::runtime_error when
// the mesh has no edges (sigma undefined).
Mesh add_gaussian_noise(const Mesh& mesh, const NoiseSpec& spec);

// Standard normal draws for one vertex of the (seed, i) stream; used by
// the statistical tests.
void gaussian_triplet(std::uint64_t seed, int vertex, double out[3]);

}  // namespace meshflow
