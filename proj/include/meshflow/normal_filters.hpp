#pragma once

#include <vector>

#include "meshflow/mesh.hpp"

namespace meshflow {

// Per-triangle unit normals, index-aligned with Mesh::triangles. Entries
// for degenerate triangles are zero vectors.
struct NormalField {
  std::vector<Vec3> normals;
};

// Face normals of the current vertex positions.
NormalField face_normals(const Mesh& mesh);

enum class NormalFilter { Mean, Min, Median, AdaptiveMmse };

struct NormalFilterKind {
  NormalFilter tag = NormalFilter::Mean;
  double mmse_noise_variance = 0.0;  // sigma_n^2, AdaptiveMmse only
};

// Triangles that could not be smoothed and kept their input normal.
struct SmoothDiagnostics {
  int empty_neighborhood = 0;
  int zero_average = 0;
};

// One smoothing pass over the normal field.
//   Mean:   area-weighted average over the neighborhood plus the triangle
//           itself, then normalized.
//   Min:    the neighbor normal with the smallest angle to the current one.
//   Median: the neighbor normal whose angle is the lower median.
//   AdaptiveMmse: per-component blend of the current normal with the
//           neighborhood mean, weighted by noise-to-local variance.
// Selection ties break toward the smaller triangle index.
NormalField smooth_normals(const Mesh& mesh, const AdjacencyIndex& adj,
                           const NormalField& field,
                           const NormalFilterKind& kind,
                           SmoothDiagnostics* diag = nullptr);

// Moves every vertex by the area-weighted mean of the signed projections
// of vertex->centroid onto the filtered normals of its incident triangles.
// A vertex with zero total incident area stays put.
Mesh update_vertices_from_normals(const Mesh& mesh, const AdjacencyIndex& adj,
                                  const NormalField& field);

// Full scheme: iterations * (recompute normals -> smooth -> move vertices).
Mesh run_normal_filter(const Mesh& mesh, const NormalFilterKind& kind,
                       int iterations);

}  // namespace meshflow
