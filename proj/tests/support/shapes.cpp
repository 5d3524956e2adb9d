#include "support/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace meshflow::testing {

std::uint64_t TestRng::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double TestRng::uniform(double lo, double hi) {
  const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

int TestRng::index(int n) {
  return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

Mesh icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh mesh;
  mesh.vertices = {
      {-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t},   {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1},   {-t, 0, -1}, {-t, 0, 1},
  };
  for (Vec3& v : mesh.vertices) v = normalized(v);
  mesh.triangles = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  return mesh;
}

Mesh icosphere(int level) {
  Mesh mesh = icosahedron();
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      const auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = mesh.vertex_count();
      mesh.vertices.push_back(
          normalized(mesh.vertices[a] + mesh.vertices[b]));
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<Triangle> next;
    next.reserve(mesh.triangles.size() * 4);
    for (const Triangle& tri : mesh.triangles) {
      const int ab = mid(tri[0], tri[1]);
      const int bc = mid(tri[1], tri[2]);
      const int ca = mid(tri[2], tri[0]);
      next.push_back({tri[0], ab, ca});
      next.push_back({tri[1], bc, ab});
      next.push_back({tri[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    mesh.triangles = std::move(next);
  }
  return mesh;
}

Mesh tetrahedron(double edge) {
  const double s = edge / std::sqrt(2.0);
  Mesh mesh;
  mesh.vertices = {{s / 2, s / 2, s / 2},
                   {s / 2, -s / 2, -s / 2},
                   {-s / 2, s / 2, -s / 2},
                   {-s / 2, -s / 2, s / 2}};
  mesh.triangles = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return mesh;
}

Mesh grid_plane(int nx, int ny, double spacing) {
  Mesh mesh;
  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      mesh.vertices.push_back({i * spacing, j * spacing, 0.0});
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      mesh.triangles.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      mesh.triangles.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return mesh;
}

Mesh square_pyramid_sides(double height) {
  Mesh mesh;
  mesh.vertices = {
      {0, 0, height}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
  mesh.triangles = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}};
  return mesh;
}

Mesh vertex_fan(int n, double apex_z) {
  Mesh mesh;
  mesh.vertices.push_back({0, 0, apex_z});
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * std::numbers::pi * k / n;
    mesh.vertices.push_back({std::cos(a), std::sin(a), 0.0});
  }
  for (int k = 0; k < n; ++k) {
    mesh.triangles.push_back({0, 1 + k, 1 + (k + 1) % n});
  }
  return mesh;
}

Mesh closed_pyramid(double height) {
  Mesh mesh = square_pyramid_sides(height);
  mesh.triangles.push_back({1, 3, 2});
  mesh.triangles.push_back({1, 4, 3});
  return mesh;
}

Mesh random_soup(int vertices, int triangles, std::uint64_t seed) {
  TestRng rng(seed);
  Mesh mesh;
  mesh.vertices.reserve(vertices);
  for (int i = 0; i < vertices; ++i) {
    mesh.vertices.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1),
                             rng.uniform(-1, 1)});
  }
  mesh.triangles.reserve(triangles);
  while (mesh.triangle_count() < triangles) {
    const int a = rng.index(vertices);
    const int b = rng.index(vertices);
    const int c = rng.index(vertices);
    if (a == b || b == c || a == c) continue;
    mesh.triangles.push_back({a, b, c});
  }
  return mesh;
}

Vec3 Mat3::apply(const Vec3& v) const {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 rotation(const Vec3& axis, double angle) {
  const Vec3 u = normalized(axis);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double ic = 1.0 - c;
  Mat3 r;
  r.m = {{{c + u.x * u.x * ic, u.x * u.y * ic - u.z * s,
           u.x * u.z * ic + u.y * s},
          {u.y * u.x * ic + u.z * s, c + u.y * u.y * ic,
           u.y * u.z * ic - u.x * s},
          {u.z * u.x * ic - u.y * s, u.z * u.y * ic + u.x * s,
           c + u.z * u.z * ic}}};
  return r;
}

Mat3 random_rotation(std::uint64_t seed) {
  TestRng rng(seed);
  Vec3 axis;
  do {
    axis = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
  } while (norm(axis) < 1e-3);
  return rotation(axis, rng.uniform(0, 2.0 * std::numbers::pi));
}

Mesh transformed(const Mesh& mesh, const Mat3& rot) {
  Mesh out = mesh;
  for (Vec3& v : out.vertices) v = rot.apply(v);
  return out;
}

Mesh scaled(const Mesh& mesh, double s) {
  Mesh out = mesh;
  for (Vec3& v : out.vertices) v *= s;
  return out;
}

Mesh translated(const Mesh& mesh, const Vec3& t) {
  Mesh out = mesh;
  for (Vec3& v : out.vertices) v += t;
  return out;
}

double max_vertex_distance(const Mesh& a, const Mesh& b) {
  double worst = 0.0;
  for (int i = 0; i < a.vertex_count(); ++i) {
    worst = std::max(worst, norm(a.vertices[i] - b.vertices[i]));
  }
  return worst;
}

}  // namespace meshflow::testing
