#pragma once

#include <array>
#include <vector>

#include "meshflow/vec3.hpp"

namespace meshflow {

// Vertex indices of one triangle, in stored winding order.
using Triangle = std::array<int, 3>;

// Indexed triangle soup. Connectivity is immutable under every filter in
// this library: filters move vertices, never edit the triangle list.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
};

// Throws std::invalid_argument if a triangle references a vertex out of
// range or repeats a vertex index.
void validate_mesh(const Mesh& mesh);

// Precomputed neighborhoods. All lists are sorted ascending so that
// iteration (and hence floating-point summation) order is deterministic.
struct AdjacencyIndex {
  std::vector<std::vector<int>> vertex_neighbors;   // 1-ring vertices
  std::vector<std::vector<int>> vertex_triangles;   // incident triangles
  std::vector<std::vector<int>> triangle_neighbors; // shares >=1 vertex, self excluded
  std::vector<int> degrees;                         // |vertex_neighbors[i]|
};

AdjacencyIndex build_adjacency(const Mesh& mesh);

// Per-triangle derived quantities. A degenerate (zero-area) triangle gets
// a zero normal and must be skipped by area-weighted consumers.
struct TriangleFrame {
  Vec3 normal;
  double area = 0.0;
  Vec3 centroid;

  bool degenerate() const { return area == 0.0; }
};

TriangleFrame triangle_frame(const Mesh& mesh, int t);
std::vector<TriangleFrame> triangle_frames(const Mesh& mesh);

// Unit normal at a vertex: normalized average of the unit normals of its
// non-degenerate incident triangles. Throws std::runtime_error when the
// normal is undefined (no usable incident triangle, or the average
// cancels to zero).
Vec3 vertex_normal(const Mesh& mesh, const AdjacencyIndex& adj, int i);

// Non-throwing variant: returns false instead.
bool try_vertex_normal(const Mesh& mesh, const AdjacencyIndex& adj, int i,
                       Vec3& out);

// Average length over the deduplicated undirected edge set. Throws
// std::runtime_error on a mesh with no edges.
double mean_edge_length(const Mesh& mesh);

// Undirected edges (i < j), sorted, each exactly once.
std::vector<std::array<int, 2>> collect_edges(const Mesh& mesh);

}  // namespace meshflow
