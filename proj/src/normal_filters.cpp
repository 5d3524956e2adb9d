#include "meshflow/normal_filters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "meshflow/parallel.hpp"

namespace meshflow {

namespace {

// Angle between unit vectors, in [0, pi].
double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

// (angle to n(T), neighbor triangle index) for every non-degenerate
// neighbor; index breaks ties deterministically.
std::vector<std::pair<double, int>> neighbor_angles(
    const Vec3& own, const std::vector<int>& neighbors,
    const std::vector<TriangleFrame>& frames) {
  std::vector<std::pair<double, int>> out;
  out.reserve(neighbors.size());
  for (int u : neighbors) {
    if (frames[u].degenerate()) continue;
    out.emplace_back(angle_between(own, frames[u].normal), u);
  }
  return out;
}

struct MmseMoments {
  Vec3 mean;      // M_j(T), area-weighted over the neighborhood plus T
  Vec3 variance;  // sigma_j^2(T), clamped at 0
  double total_area = 0.0;
};

MmseMoments mmse_moments(int t, const std::vector<int>& neighbors,
                         const std::vector<TriangleFrame>& frames) {
  MmseMoments m;
  Vec3 sum, sum_sq;
  auto accumulate = [&](int u) {
    const TriangleFrame& f = frames[u];
    if (f.degenerate()) return;
    sum += f.area * f.normal;
    sum_sq += f.area * Vec3{f.normal.x * f.normal.x, f.normal.y * f.normal.y,
                            f.normal.z * f.normal.z};
    m.total_area += f.area;
  };
  accumulate(t);
  for (int u : neighbors) accumulate(u);
  if (m.total_area > 0.0) {
    m.mean = sum / m.total_area;
    const Vec3 ex2 = sum_sq / m.total_area;
    m.variance = {std::max(0.0, ex2.x - m.mean.x * m.mean.x),
                  std::max(0.0, ex2.y - m.mean.y * m.mean.y),
                  std::max(0.0, ex2.z - m.mean.z * m.mean.z)};
  }
  return m;
}

}  // namespace

NormalField face_normals(const Mesh& mesh) {
  NormalField field;
  field.normals.resize(mesh.triangles.size());
  parallel_for(mesh.triangle_count(), [&](int t) {
    field.normals[t] = triangle_frame(mesh, t).normal;
  });
  return field;
}

NormalField smooth_normals(const Mesh& mesh, const AdjacencyIndex& adj,
                           const NormalField& field,
                           const NormalFilterKind& kind,
                           SmoothDiagnostics* diag) {
  if (field.normals.size() != mesh.triangles.size()) {
    throw std::invalid_argument("normal field not aligned with mesh");
  }
  const std::vector<TriangleFrame> frames = triangle_frames(mesh);
  // Smoothing reads the supplied field, not the recomputed normals; the
  // frames feed areas and the degeneracy flags.
  std::vector<TriangleFrame> tagged = frames;
  for (size_t t = 0; t < tagged.size(); ++t) tagged[t].normal = field.normals[t];

  NormalField out;
  out.normals.resize(field.normals.size());
  SmoothDiagnostics local;

  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const Vec3& own = field.normals[t];
    out.normals[t] = own;
    if (tagged[t].degenerate()) continue;  // zero normal stays zero

    const std::vector<int>& neighbors = adj.triangle_neighbors[t];

    switch (kind.tag) {
      case NormalFilter::Mean: {
        Vec3 sum;
        double total_area = 0.0;
        auto accumulate = [&](int u) {
          if (tagged[u].degenerate()) return;
          sum += tagged[u].area * tagged[u].normal;
          total_area += tagged[u].area;
        };
        accumulate(t);
        for (int u : neighbors) accumulate(u);
        if (total_area == 0.0) {
          ++local.empty_neighborhood;
          break;
        }
        const Vec3 m = sum / total_area;
        if (norm(m) == 0.0) {
          ++local.zero_average;
          break;
        }
        out.normals[t] = normalized(m);
        break;
      }
      case NormalFilter::Min: {
        const auto angles = neighbor_angles(own, neighbors, tagged);
        if (angles.empty()) {
          ++local.empty_neighborhood;
          break;
        }
        const auto best = std::min_element(angles.begin(), angles.end());
        out.normals[t] = tagged[best->second].normal;
        break;
      }
      case NormalFilter::Median: {
        auto angles = neighbor_angles(own, neighbors, tagged);
        if (angles.empty()) {
          ++local.empty_neighborhood;
          break;
        }
        std::sort(angles.begin(), angles.end());
        const size_t mid = (angles.size() - 1) / 2;  // lower median
        out.normals[t] = tagged[angles[mid].second].normal;
        break;
      }
      case NormalFilter::AdaptiveMmse: {
        const MmseMoments m = mmse_moments(t, neighbors, tagged);
        if (m.total_area == 0.0) {
          ++local.empty_neighborhood;
          break;
        }
        const double noise_var = kind.mmse_noise_variance;
        Vec3 blended;
        for (int j = 0; j < 3; ++j) {
          if (m.variance[j] == 0.0 || noise_var > m.variance[j]) {
            blended[j] = m.mean[j];
          } else {
            const double w = noise_var / m.variance[j];
            blended[j] = (1.0 - w) * own[j] + w * m.mean[j];
          }
        }
        if (blended == own) break;  // already the input normal, keep bits
        if (norm(blended) == 0.0) {
          ++local.zero_average;
          break;
        }
        out.normals[t] = normalized(blended);
        break;
      }
    }
  }

  if (diag) *diag = local;
  return out;
}

Mesh update_vertices_from_normals(const Mesh& mesh, const AdjacencyIndex& adj,
                                  const NormalField& field) {
  if (field.normals.size() != mesh.triangles.size()) {
    throw std::invalid_argument("normal field not aligned with mesh");
  }
  const std::vector<TriangleFrame> frames = triangle_frames(mesh);

  Mesh out = mesh;
  parallel_for(mesh.vertex_count(), [&](int i) {
    const Vec3& p = mesh.vertices[i];
    Vec3 sum;
    double total_area = 0.0;
    for (int t : adj.vertex_triangles[i]) {
      const TriangleFrame& f = frames[t];
      if (f.degenerate()) continue;
      const Vec3& m = field.normals[t];
      const Vec3 v = dot(f.centroid - p, m) * m;
      sum += f.area * v;
      total_area += f.area;
    }
    if (total_area > 0.0) {
      out.vertices[i] = p + sum / total_area;
    }
  });
  return out;
}

Mesh run_normal_filter(const Mesh& mesh, const NormalFilterKind& kind,
                       int iterations) {
  if (iterations < 0) {
    throw std::invalid_argument("iterations must be >= 0");
  }
  if (kind.mmse_noise_variance < 0.0) {
    throw std::invalid_argument("mmse noise variance must be >= 0");
  }
  const AdjacencyIndex adj = build_adjacency(mesh);
  Mesh current = mesh;
  for (int k = 0; k < iterations; ++k) {
    NormalField field = face_normals(current);
    field = smooth_normals(current, adj, field, kind);
    current = update_vertices_from_normals(current, adj, field);
  }
  return current;
}

}  // namespace meshflow
