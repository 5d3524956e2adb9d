#pragma once

#include "meshflow/mesh.hpp"

namespace meshflow {

enum class DiffusivityKind { Cauchy, Gaussian, Laplace, Rayleigh };

// Edge-stopping weight g(x) evaluated at gradient magnitude x >= 0 with
// tuning constant c > 0:
//   Cauchy:   1 / (1 + (x/c)^2)
//   Gaussian: exp(-(x/c)^2 / 2) / sqrt(2*pi)
//   Laplace:  exp(-|x/c|) / 2
//   Rayleigh: (x/c) * exp(-(x/c)^2 / 2)
double diffusivity(DiffusivityKind kind, double x, double c);

struct DiffusionConfig {
  DiffusivityKind kind = DiffusivityKind::Cauchy;
  double c = 1.0;
  int iterations = 0;
  double step = 1.0;  // multiplier on the update sum; 1 is the plain rule
};

struct LaplacianConfig {
  double lambda = 0.5;
  int iterations = 0;

  // The usual stable range; callers may warn outside it but the flow
  // still runs.
  bool lambda_in_recommended_range() const {
    return lambda > 0.0 && lambda <= 1.0;
  }
};

// Mean of the 1-ring minus the vertex itself; zero for isolated vertices.
Vec3 umbrella(const Mesh& mesh, const AdjacencyIndex& adj, int i);

// Simultaneous update P += lambda * umbrella(P) from the old positions.
// lambda = 1 places every vertex at its old neighbor centroid.
Mesh laplacian_flow_step(const Mesh& mesh, const AdjacencyIndex& adj,
                         const LaplacianConfig& cfg);

Mesh run_laplacian_flow(const Mesh& mesh, const LaplacianConfig& cfg);

// Degree-normalized local variation
//   ( sum_{j in ring(i)} || P_i/sqrt(d_i) - P_j/sqrt(d_j) ||^2 )^(1/2);
// zero for isolated vertices.
double vertex_gradient_magnitude(const Mesh& mesh, const AdjacencyIndex& adj,
                                 int i);

// One diffusion sweep, simultaneous over all vertices:
//   P_i += step * sum_j (1/sqrt(d_i)) (P_j/sqrt(d_j) - P_i/sqrt(d_i))
//                 * (g(|grad_i|) + g(|grad_j|))
// with all gradients taken on the old positions and neighbors summed in
// ascending index order. Throws std::invalid_argument on c <= 0 or
// step <= 0.
Mesh diffusion_step(const Mesh& mesh, const AdjacencyIndex& adj,
                    const DiffusionConfig& cfg);

Mesh run_vertex_diffusion(const Mesh& mesh, const DiffusionConfig& cfg);

}  // namespace meshflow
