#pragma once

#include <array>
#include <vector>

#include "meshflow/mesh.hpp"

namespace meshflow {

// Euclidean distance from p to the closed triangle (a, b, c). Degenerate
// triangles collapse to their segment/point hull.
double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c);
double point_triangle_distance_sq(const Vec3& p, const Vec3& a, const Vec3& b,
                                  const Vec3& c);

double point_segment_distance_sq(const Vec3& p, const Vec3& a, const Vec3& b);

// BVH over a reference mesh's triangles answering nearest-triangle
// distance queries. Immutable after build; queries are read-only.
class SpatialIndex {
 public:
  double distance(const Vec3& p) const;
  double distance_sq(const Vec3& p) const;

  friend SpatialIndex build_spatial_index(const Mesh& reference);

 private:
  struct Box {
    Vec3 lo, hi;
  };
  struct Node {
    Box box;
    int left = -1;   // internal nodes
    int right = -1;
    int first = 0;   // leaves: range into tris_
    int count = 0;
  };

  int build_node(std::vector<int>& order, int first, int count,
                 const std::vector<Vec3>& centroids);

  std::vector<Node> nodes_;
  std::vector<std::array<Vec3, 3>> tris_;
};

// Deterministic build. Throws std::invalid_argument on a mesh without
// triangles.
SpatialIndex build_spatial_index(const Mesh& reference);

struct ErrorReport {
  double eps_v = 0.0;
  double eps_f = 0.0;
  int iteration = 0;
};

// Area-weighted L2 distance of the vertices of mesh to the reference
// surface, normalized by 3x the total area of mesh. Throws on zero-area
// mesh.
double vertex_position_error(const Mesh& mesh, const Mesh& reference,
                             const SpatialIndex& index);

// Area-weighted L2 difference of the face normals against the same-index
// reference triangle. Requires identical triangle lists; degenerate pairs
// are skipped and their area excluded.
double face_normal_error(const Mesh& mesh, const Mesh& reference);

bool same_connectivity(const Mesh& a, const Mesh& b);

}  // namespace meshflow
