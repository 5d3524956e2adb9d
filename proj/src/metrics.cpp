#include "meshflow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "meshflow/parallel.hpp"

namespace meshflow {

double point_segment_distance_sq(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len_sq = norm_sq(ab);
  if (len_sq == 0.0) return norm_sq(p - a);
  double t = dot(p - a, ab) / len_sq;
  t = std::clamp(t, 0.0, 1.0);
  return norm_sq(p - (a + t * ab));
}

// Eberly's region decomposition of the parameter plane; falls back to the
// segment hull when the triangle is degenerate.
double point_triangle_distance_sq(const Vec3& p, const Vec3& a, const Vec3& b,
                                  const Vec3& c) {
  const Vec3 e0 = b - a;
  const Vec3 e1 = c - a;
  const Vec3 d = a - p;

  const double a00 = dot(e0, e0);
  const double a01 = dot(e0, e1);
  const double a11 = dot(e1, e1);
  const double b0 = dot(d, e0);
  const double b1 = dot(d, e1);
  const double det = a00 * a11 - a01 * a01;

  if (!(det > 0.0)) {
    return std::min({point_segment_distance_sq(p, a, b),
                     point_segment_distance_sq(p, b, c),
                     point_segment_distance_sq(p, c, a)});
  }

  double s = a01 * b1 - a11 * b0;
  double t = a01 * b0 - a00 * b1;

  if (s + t <= det) {
    if (s < 0.0) {
      if (t < 0.0) {  // region 4
        if (b0 < 0.0) {
          t = 0.0;
          s = (-b0 >= a00) ? 1.0 : -b0 / a00;
        } else {
          s = 0.0;
          t = (b1 >= 0.0) ? 0.0 : ((-b1 >= a11) ? 1.0 : -b1 / a11);
        }
      } else {  // region 3
        s = 0.0;
        t = (b1 >= 0.0) ? 0.0 : ((-b1 >= a11) ? 1.0 : -b1 / a11);
      }
    } else if (t < 0.0) {  // region 5
      t = 0.0;
      s = (b0 >= 0.0) ? 0.0 : ((-b0 >= a00) ? 1.0 : -b0 / a00);
    } else {  // region 0, interior
      s /= det;
      t /= det;
    }
  } else {
    if (s < 0.0) {  // region 2
      const double tmp0 = a01 + b0;
      const double tmp1 = a11 + b1;
      if (tmp1 > tmp0) {
        const double numer = tmp1 - tmp0;
        const double denom = a00 - 2.0 * a01 + a11;
        s = (numer >= denom) ? 1.0 : numer / denom;
        t = 1.0 - s;
      } else {
        s = 0.0;
        t = (tmp1 <= 0.0) ? 1.0 : ((b1 >= 0.0) ? 0.0 : -b1 / a11);
      }
    } else if (t < 0.0) {  // region 6
      const double tmp0 = a01 + b1;
      const double tmp1 = a00 + b0;
      if (tmp1 > tmp0) {
        const double numer = tmp1 - tmp0;
        const double denom = a00 - 2.0 * a01 + a11;
        t = (numer >= denom) ? 1.0 : numer / denom;
        s = 1.0 - t;
      } else {
        t = 0.0;
        s = (tmp1 <= 0.0) ? 1.0 : ((b0 >= 0.0) ? 0.0 : -b0 / a00);
      }
    } else {  // region 1
      const double numer = (a11 + b1) - (a01 + b0);
      if (numer <= 0.0) {
        s = 0.0;
        t = 1.0;
      } else {
        const double denom = a00 - 2.0 * a01 + a11;
        s = (numer >= denom) ? 1.0 : numer / denom;
        t = 1.0 - s;
      }
    }
  }

  return norm_sq(p - (a + s * e0 + t * e1));
}

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c) {
  return std::sqrt(point_triangle_distance_sq(p, a, b, c));
}

namespace {

constexpr int kLeafSize = 4;

}  // namespace

double SpatialIndex::distance_sq(const Vec3& p) const {
  double best = std::numeric_limits<double>::infinity();
  // Explicit stack; nearer child first so pruning bites early.
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    const double dx = std::max({node.box.lo.x - p.x, 0.0, p.x - node.box.hi.x});
    const double dy = std::max({node.box.lo.y - p.y, 0.0, p.y - node.box.hi.y});
    const double dz = std::max({node.box.lo.z - p.z, 0.0, p.z - node.box.hi.z});
    if (dx * dx + dy * dy + dz * dz >= best) continue;

    if (node.left < 0) {
      for (int k = node.first; k < node.first + node.count; ++k) {
        const auto& tri = tris_[k];
        best = std::min(
            best, point_triangle_distance_sq(p, tri[0], tri[1], tri[2]));
      }
      continue;
    }

    auto box_dist = [&](int n) {
      const Box& b = nodes_[n].box;
      const double ex = std::max({b.lo.x - p.x, 0.0, p.x - b.hi.x});
      const double ey = std::max({b.lo.y - p.y, 0.0, p.y - b.hi.y});
      const double ez = std::max({b.lo.z - p.z, 0.0, p.z - b.hi.z});
      return ex * ex + ey * ey + ez * ez;
    };
    const int near = box_dist(node.left) <= box_dist(node.right) ? node.left
                                                                 : node.right;
    const int far = near == node.left ? node.right : node.left;
    stack[top++] = far;   // popped last
    stack[top++] = near;  // popped first
  }
  return best;
}

double SpatialIndex::distance(const Vec3& p) const {
  return std::sqrt(distance_sq(p));
}

int SpatialIndex::build_node(std::vector<int>& order, int first, int count,
                             const std::vector<Vec3>& centroids) {
  const int node_index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();

  Box box{{std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity()},
          {-std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()}};
  for (int k = first; k < first + count; ++k) {
    for (const Vec3& v : tris_[k]) {
      for (int axis = 0; axis < 3; ++axis) {
        box.lo[axis] = std::min(box.lo[axis], v[axis]);
        box.hi[axis] = std::max(box.hi[axis], v[axis]);
      }
    }
  }
  nodes_[node_index].box = box;

  if (count <= kLeafSize) {
    nodes_[node_index].first = first;
    nodes_[node_index].count = count;
    return node_index;
  }

  // Split at the centroid median of the widest axis; fully sorted with an
  // index tie-break so the tree is the same on every platform.
  const Vec3 extent = box.hi - box.lo;
  int axis = 0;
  if (extent.y > extent[axis]) axis = 1;
  if (extent.z > extent[axis]) axis = 2;

  std::vector<int> slots(count);
  std::iota(slots.begin(), slots.end(), first);
  std::sort(slots.begin(), slots.end(), [&](int lhs, int rhs) {
    const double cl = centroids[order[lhs]][axis];
    const double cr = centroids[order[rhs]][axis];
    if (cl != cr) return cl < cr;
    return order[lhs] < order[rhs];
  });

  std::vector<std::array<Vec3, 3>> tmp_tris(count);
  std::vector<int> tmp_order(count);
  for (int k = 0; k < count; ++k) {
    tmp_tris[k] = tris_[slots[k]];
    tmp_order[k] = order[slots[k]];
  }
  std::copy(tmp_tris.begin(), tmp_tris.end(), tris_.begin() + first);
  std::copy(tmp_order.begin(), tmp_order.end(), order.begin() + first);

  const int half = count / 2;
  const int left = build_node(order, first, half, centroids);
  const int right = build_node(order, first + half, count - half, centroids);
  nodes_[node_index].left = left;
  nodes_[node_index].right = right;
  return node_index;
}

SpatialIndex build_spatial_index(const Mesh& reference) {
  if (reference.triangles.empty()) {
    throw std::invalid_argument("cannot index a mesh without triangles");
  }
  validate_mesh(reference);

  SpatialIndex index;
  const int nt = reference.triangle_count();
  index.tris_.resize(nt);
  std::vector<Vec3> centroids(nt);
  std::vector<int> order(nt);
  for (int t = 0; t < nt; ++t) {
    const Triangle& tri = reference.triangles[t];
    index.tris_[t] = {reference.vertices[tri[0]], reference.vertices[tri[1]],
                      reference.vertices[tri[2]]};
    centroids[t] =
        (index.tris_[t][0] + index.tris_[t][1] + index.tris_[t][2]) / 3.0;
    order[t] = t;
  }
  index.build_node(order, 0, nt, centroids);
  return index;
}

namespace {

// Per-vertex incident area of mesh, plus the total triangle area.
std::vector<double> incident_areas(const Mesh& mesh, double& total_area) {
  std::vector<double> area(mesh.vertices.size(), 0.0);
  total_area = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double a = triangle_frame(mesh, t).area;
    total_area += a;
    for (int v : mesh.triangles[t]) area[v] += a;
  }
  return area;
}

}  // namespace

double vertex_position_error(const Mesh& mesh, const Mesh& reference,
                             const SpatialIndex& index) {
  if (reference.triangles.empty()) {
    throw std::invalid_argument("vertex_position_error: empty reference");
  }
  double total_area = 0.0;
  const std::vector<double> vertex_area = incident_areas(mesh, total_area);
  if (total_area <= 0.0) {
    throw std::runtime_error("vertex_position_error: mesh has zero area");
  }

  const int nv = mesh.vertex_count();
  std::vector<double> dist_sq(nv);
  parallel_for(nv, [&](int i) {
    dist_sq[i] = index.distance_sq(mesh.vertices[i]);
  });

  double sum = 0.0;  // fixed reduction order
  for (int i = 0; i < nv; ++i) sum += vertex_area[i] * dist_sq[i];
  return sum / (3.0 * total_area);
}

bool same_connectivity(const Mesh& a, const Mesh& b) {
  return a.triangles == b.triangles;
}

double face_normal_error(const Mesh& mesh, const Mesh& reference) {
  if (!same_connectivity(mesh, reference)) {
    throw std::invalid_argument(
        "face_normal_error: meshes must share the same triangle list");
  }
  double num = 0.0;
  double den = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const TriangleFrame fm = triangle_frame(mesh, t);
    const TriangleFrame fr = triangle_frame(reference, t);
    if (fm.degenerate() || fr.degenerate()) continue;
    num += fm.area * norm_sq(fr.normal - fm.normal);
    den += fm.area;
  }
  if (den <= 0.0) {
    throw std::runtime_error("face_normal_error: mesh has zero area");
  }
  return num / den;
}

}  // namespace meshflow
