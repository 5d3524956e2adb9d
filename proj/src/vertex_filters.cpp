#include "meshflow/vertex_filters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "meshflow/parallel.hpp"

namespace meshflow {

double diffusivity(DiffusivityKind kind, double x, double c) {
  const double r = x / c;
  switch (kind) {
    case DiffusivityKind::Cauchy:
      return 1.0 / (1.0 + r * r);
    case DiffusivityKind::Gaussian:
      return std::exp(-0.5 * r * r) / std::sqrt(2.0 * std::numbers::pi);
    case DiffusivityKind::Laplace:
      return std::exp(-std::abs(r)) / 2.0;
    case DiffusivityKind::Rayleigh:
      return r * std::exp(-0.5 * r * r);
  }
  return 0.0;  // unreachable
}

Vec3 umbrella(const Mesh& mesh, const AdjacencyIndex& adj, int i) {
  const std::vector<int>& ring = adj.vertex_neighbors[i];
  if (ring.empty()) return {};
  Vec3 sum;
  for (int j : ring) sum += mesh.vertices[j];
  return sum / static_cast<double>(ring.size()) - mesh.vertices[i];
}

Mesh laplacian_flow_step(const Mesh& mesh, const AdjacencyIndex& adj,
                         const LaplacianConfig& cfg) {
  Mesh out = mesh;
  parallel_for(mesh.vertex_count(), [&](int i) {
    out.vertices[i] = mesh.vertices[i] + cfg.lambda * umbrella(mesh, adj, i);
  });
  return out;
}

Mesh run_laplacian_flow(const Mesh& mesh, const LaplacianConfig& cfg) {
  if (cfg.iterations < 0) {
    throw std::invalid_argument("iterations must be >= 0");
  }
  const AdjacencyIndex adj = build_adjacency(mesh);
  Mesh current = mesh;
  for (int k = 0; k < cfg.iterations; ++k) {
    current = laplacian_flow_step(current, adj, cfg);
  }
  return current;
}

double vertex_gradient_magnitude(const Mesh& mesh, const AdjacencyIndex& adj,
                                 int i) {
  const std::vector<int>& ring = adj.vertex_neighbors[i];
  if (ring.empty()) return 0.0;
  const Vec3 scaled_i =
      mesh.vertices[i] / std::sqrt(static_cast<double>(adj.degrees[i]));
  double sum = 0.0;
  for (int j : ring) {
    const Vec3 scaled_j =
        mesh.vertices[j] / std::sqrt(static_cast<double>(adj.degrees[j]));
    sum += norm_sq(scaled_i - scaled_j);
  }
  return std::sqrt(sum);
}

namespace {

void check_diffusion_config(const DiffusionConfig& cfg) {
  if (cfg.c <= 0.0) throw std::invalid_argument("diffusion c must be > 0");
  if (cfg.step <= 0.0) throw std::invalid_argument("diffusion step must be > 0");
  if (cfg.iterations < 0) {
    throw std::invalid_argument("iterations must be >= 0");
  }
}

}  // namespace

Mesh diffusion_step(const Mesh& mesh, const AdjacencyIndex& adj,
                    const DiffusionConfig& cfg) {
  check_diffusion_config(cfg);
  const int nv = mesh.vertex_count();

  // Phase 1: diffusivity of every vertex gradient, from old positions.
  // The same g value feeds the (i,j) and (j,i) sides of each edge, so the
  // edge coefficient g_i + g_j is symmetric by construction.
  std::vector<double> weight(nv);
  parallel_for(nv, [&](int i) {
    weight[i] =
        diffusivity(cfg.kind, vertex_gradient_magnitude(mesh, adj, i), cfg.c);
  });

  // Phase 2: simultaneous position update. Both endpoints are scaled by
  // division so equal points with equal degrees cancel exactly.
  Mesh out = mesh;
  parallel_for(nv, [&](int i) {
    const std::vector<int>& ring = adj.vertex_neighbors[i];
    if (ring.empty()) return;
    const double inv_sqrt_di =
        1.0 / std::sqrt(static_cast<double>(adj.degrees[i]));
    const Vec3 scaled_i =
        mesh.vertices[i] / std::sqrt(static_cast<double>(adj.degrees[i]));
    Vec3 delta;
    for (int j : ring) {  // ascending order: fixed summation order
      const Vec3 scaled_j =
          mesh.vertices[j] / std::sqrt(static_cast<double>(adj.degrees[j]));
      delta += inv_sqrt_di * (weight[i] + weight[j]) * (scaled_j - scaled_i);
    }
    out.vertices[i] = mesh.vertices[i] + cfg.step * delta;
  });
  return out;
}

Mesh run_vertex_diffusion(const Mesh& mesh, const DiffusionConfig& cfg) {
  check_diffusion_config(cfg);
  const AdjacencyIndex adj = build_adjacency(mesh);
  Mesh current = mesh;
  for (int k = 0; k < cfg.iterations; ++k) {
    current = diffusion_step(current, adj, cfg);
  }
  return current;
}

}  // namespace meshflow
