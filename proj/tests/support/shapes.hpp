#pragma once

#include <array>
#include <cstdint>

#include "meshflow/mesh.hpp"

namespace meshflow::testing {

// Unit icosahedron (12 vertices, 20 faces, outward orientation).
Mesh icosahedron();

// Icosahedron subdivided `level` times, vertices projected to the unit
// sphere. Vertices: 10*4^level + 2; faces: 20*4^level.
Mesh icosphere(int level);

// Regular tetrahedron with the given edge length, centered at the origin.
Mesh tetrahedron(double edge = 1.0);

// (nx+1)*(ny+1) grid of vertices in the z=0 plane, 2 triangles per cell.
Mesh grid_plane(int nx, int ny, double spacing = 1.0);

// Four side faces from apex (0,0,height) to the unit diamond base; no
// base faces.
Mesh square_pyramid_sides(double height);

// Apex (0,0,apex_z) over a regular n-gon of radius 1 at z=0, n side faces.
Mesh vertex_fan(int n, double apex_z);

// Apex plus unit diamond base, sides and base triangulated (5 vertices).
Mesh closed_pyramid(double height);

// Valid random triangle soup: indices in range, no repeated index per
// triangle. Positions uniform in [-1, 1]^3.
Mesh random_soup(int vertices, int triangles, std::uint64_t seed);

struct Mat3 {
  std::array<std::array<double, 3>, 3> m;
  Vec3 apply(const Vec3& v) const;
};

Mat3 rotation(const Vec3& axis, double angle);
Mat3 random_rotation(std::uint64_t seed);

Mesh transformed(const Mesh& mesh, const Mat3& rot);
Mesh scaled(const Mesh& mesh, double s);
Mesh translated(const Mesh& mesh, const Vec3& t);

// Largest vertex displacement between index-aligned meshes.
double max_vertex_distance(const Mesh& a, const Mesh& b);

// Deterministic helper RNG for tests.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform(double lo, double hi);       // [lo, hi)
  int index(int n);                           // [0, n)

 private:
  std::uint64_t state_;
};

}  // namespace meshflow::testing
