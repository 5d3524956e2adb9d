#include "meshflow/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "meshflow/parallel.hpp"

namespace meshflow {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform in (0, 1]; never 0, so log() below is safe.
double uniform_open(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Counter-based stream: the state depends only on (seed, vertex).
std::uint64_t stream_state(std::uint64_t seed, int vertex) {
  std::uint64_t s = seed;
  const std::uint64_t mixed = splitmix64(s);
  std::uint64_t state =
      mixed ^ (static_cast<std::uint64_t>(vertex) * 0xD1B54A32D192ED03ull);
  return state;
}

void box_muller(std::uint64_t& state, double& z0, double& z1) {
  const double u1 = uniform_open(splitmix64(state));
  const double u2 = uniform_open(splitmix64(state));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

}  // namespace

void gaussian_triplet(std::uint64_t seed, int vertex, double out[3]) {
  std::uint64_t state = stream_state(seed, vertex);
  double z0, z1, z2, unused;
  box_muller(state, z0, z1);
  box_muller(state, z2, unused);
  out[0] = z0;
  out[1] = z1;
  out[2] = z2;
}

Mesh add_gaussian_noise(const Mesh& mesh, const NoiseSpec& spec) {
  if (spec.level < 0.0) {
    throw std::invalid_argument("noise level must be >= 0");
  }
  const double sigma = spec.level * mean_edge_length(mesh);

  Mesh out = mesh;
  if (spec.direction == NoiseDirection::PerCoordinate) {
    parallel_for(mesh.vertex_count(), [&](int i) {
      double z[3];
      gaussian_triplet(spec.seed, i, z);
      out.vertices[i] =
          mesh.vertices[i] + Vec3{sigma * z[0], sigma * z[1], sigma * z[2]};
    });
  } else {
    const AdjacencyIndex adj = build_adjacency(mesh);
    parallel_for(mesh.vertex_count(), [&](int i) {
      Vec3 n;
      if (!try_vertex_normal(mesh, adj, i, n)) return;  // no defined normal
      double z[3];
      gaussian_triplet(spec.seed, i, z);
      out.vertices[i] = mesh.vertices[i] + sigma * z[0] * n;
    });
  }
  return out;
}

}  // namespace meshflow
