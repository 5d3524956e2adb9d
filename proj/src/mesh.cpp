#include "meshflow/mesh.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace meshflow {

void validate_mesh(const Mesh& mesh) {
  const int nv = mesh.vertex_count();
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const Triangle& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      if (tri[k] < 0 || tri[k] >= nv) {
        throw std::invalid_argument("triangle " + std::to_string(t) +
                                    " references vertex " +
                                    std::to_string(tri[k]) + " out of range");
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw std::invalid_argument("triangle " + std::to_string(t) +
                                  " repeats a vertex index");
    }
  }
}

namespace {

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

AdjacencyIndex build_adjacency(const Mesh& mesh) {
  validate_mesh(mesh);

  const int nv = mesh.vertex_count();
  const int nt = mesh.triangle_count();

  AdjacencyIndex adj;
  adj.vertex_neighbors.resize(nv);
  adj.vertex_triangles.resize(nv);
  adj.triangle_neighbors.resize(nt);
  adj.degrees.resize(nv);

  for (int t = 0; t < nt; ++t) {
    const Triangle& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      adj.vertex_neighbors[a].push_back(b);
      adj.vertex_neighbors[b].push_back(a);
      adj.vertex_triangles[a].push_back(t);
    }
  }

  for (int i = 0; i < nv; ++i) {
    sort_unique(adj.vertex_neighbors[i]);
    sort_unique(adj.vertex_triangles[i]);
    adj.degrees[i] = static_cast<int>(adj.vertex_neighbors[i].size());
  }

  for (int t = 0; t < nt; ++t) {
    std::vector<int>& out = adj.triangle_neighbors[t];
    for (int v : mesh.triangles[t]) {
      for (int u : adj.vertex_triangles[v]) {
        if (u != t) out.push_back(u);
      }
    }
    sort_unique(out);
  }

  return adj;
}

TriangleFrame triangle_frame(const Mesh& mesh, int t) {
  const Triangle& tri = mesh.triangles[t];
  const Vec3& a = mesh.vertices[tri[0]];
  const Vec3& b = mesh.vertices[tri[1]];
  const Vec3& c = mesh.vertices[tri[2]];

  TriangleFrame frame;
  frame.centroid = (a + b + c) / 3.0;

  const Vec3 n = cross(b - a, c - a);
  const double len = norm(n);
  frame.area = 0.5 * len;
  if (len > 0.0) frame.normal = n / len;
  return frame;
}

std::vector<TriangleFrame> triangle_frames(const Mesh& mesh) {
  std::vector<TriangleFrame> frames(mesh.triangles.size());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    frames[t] = triangle_frame(mesh, t);
  }
  return frames;
}

bool try_vertex_normal(const Mesh& mesh, const AdjacencyIndex& adj, int i,
                       Vec3& out) {
  Vec3 sum;
  int used = 0;
  for (int t : adj.vertex_triangles[i]) {
    const TriangleFrame frame = triangle_frame(mesh, t);
    if (frame.degenerate()) continue;
    sum += frame.normal;
    ++used;
  }
  if (used == 0) return false;
  const double len = norm(sum);
  if (len == 0.0) return false;
  out = sum / len;
  return true;
}

Vec3 vertex_normal(const Mesh& mesh, const AdjacencyIndex& adj, int i) {
  Vec3 n;
  if (!try_vertex_normal(mesh, adj, i, n)) {
    throw std::runtime_error("vertex " + std::to_string(i) +
                             " has no defined normal");
  }
  return n;
}

std::vector<std::array<int, 2>> collect_edges(const Mesh& mesh) {
  std::vector<std::array<int, 2>> edges;
  edges.reserve(mesh.triangles.size() * 3);
  for (const Triangle& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

double mean_edge_length(const Mesh& mesh) {
  const auto edges = collect_edges(mesh);
  if (edges.empty()) {
    throw std::runtime_error("mesh has no edges");
  }
  double total = 0.0;
  for (const auto& e : edges) {
    total += norm(mesh.vertices[e[0]] - mesh.vertices[e[1]]);
  }
  return total / static_cast<double>(edges.size());
}

}  // namespace meshflow
