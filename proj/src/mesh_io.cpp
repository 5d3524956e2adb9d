#include "meshflow/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace meshflow {

namespace {

std::string lower_ext(const std::string& path) {
  const auto pos = path.find_last_of('.');
  if (pos == std::string::npos) return {};
  std::string ext = path.substr(pos + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool parse_double(const std::string& tok, double& out) {
  try {
    size_t used = 0;
    out = std::stod(tok, &used);
    return used == tok.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_int(const std::string& tok, int& out) {
  try {
    size_t used = 0;
    out = std::stoi(tok, &used);
    return used == tok.size();
  } catch (const std::exception&) {
    return false;
  }
}

// Fan-triangulates a polygon of already-validated 0-based indices.
void emit_fan(const std::vector<int>& poly, const std::string& path, int line,
              Mesh& mesh) {
  if (poly.size() < 3) {
    throw ParseError(path, line, "face with fewer than 3 vertices");
  }
  for (size_t k = 1; k + 1 < poly.size(); ++k) {
    const Triangle tri{poly[0], poly[k], poly[k + 1]};
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw ParseError(path, line, "face repeats a vertex index");
    }
    mesh.triangles.push_back(tri);
  }
}

Mesh read_obj(std::istream& in, const std::string& path) {
  Mesh mesh;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;

    if (key == "v") {
      double x, y, z;
      std::string tx, ty, tz;
      if (!(ls >> tx >> ty >> tz) || !parse_double(tx, x) ||
          !parse_double(ty, y) || !parse_double(tz, z)) {
        throw ParseError(path, lineno, "malformed vertex record");
      }
      mesh.vertices.push_back({x, y, z});
    } else if (key == "f") {
      std::vector<int> poly;
      std::string tok;
      while (ls >> tok) {
        // OBJ corners may carry /texture/normal references; keep the
        // leading vertex index only.
        const auto slash = tok.find('/');
        if (slash != std::string::npos) tok = tok.substr(0, slash);
        int idx = 0;
        if (!parse_int(tok, idx)) {
          throw ParseError(path, lineno, "malformed face index '" + tok + "'");
        }
        if (idx < 1 || idx > mesh.vertex_count()) {
          throw ParseError(path, lineno,
                           "face index " + std::to_string(idx) +
                               " out of range (file has " +
                               std::to_string(mesh.vertex_count()) +
                               " vertices so far)");
        }
        poly.push_back(idx - 1);
      }
      emit_fan(poly, path, lineno, mesh);
    }
    // vn, vt, g, o, s, usemtl, mtllib and anything unknown: ignored.
  }
  return mesh;
}

struct OffLine {
  std::istringstream tokens;
  int lineno = 0;
};

// Skips blanks and '#' comments; false at end of stream.
bool next_off_line(std::istream& in, int& lineno, OffLine& out) {
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    out.tokens = std::istringstream(line);
    out.lineno = lineno;
    return true;
  }
  return false;
}

Mesh read_off(std::istream& in, const std::string& path) {
  int lineno = 0;
  OffLine line;
  if (!next_off_line(in, lineno, line)) {
    throw ParseError(path, 1, "empty OFF file");
  }

  std::string header;
  line.tokens >> header;
  if (header != "OFF") {
    throw ParseError(path, line.lineno, "missing OFF header");
  }

  // The "nv nf ne" counts either follow the header on the same line or
  // sit on the next one.
  std::vector<long> counts;
  long value = 0;
  while (line.tokens >> value) counts.push_back(value);
  if (counts.empty()) {
    if (!next_off_line(in, lineno, line)) {
      throw ParseError(path, lineno, "missing OFF counts line");
    }
    while (line.tokens >> value) counts.push_back(value);
  }
  if (counts.size() != 3 || counts[0] < 0 || counts[1] < 0) {
    throw ParseError(path, line.lineno, "malformed OFF counts line");
  }
  const long nv = counts[0];
  const long nf = counts[1];

  Mesh mesh;
  mesh.vertices.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    if (!next_off_line(in, lineno, line)) {
      throw ParseError(path, lineno, "unexpected end of file in vertex list");
    }
    std::string tx, ty, tz;
    double x, y, z;
    if (!(line.tokens >> tx >> ty >> tz) || !parse_double(tx, x) ||
        !parse_double(ty, y) || !parse_double(tz, z)) {
      throw ParseError(path, line.lineno, "malformed vertex record");
    }
    mesh.vertices.push_back({x, y, z});
  }

  for (long f = 0; f < nf; ++f) {
    if (!next_off_line(in, lineno, line)) {
      throw ParseError(path, lineno, "unexpected end of file in face list");
    }
    int count = 0;
    if (!(line.tokens >> count) || count < 3) {
      throw ParseError(path, line.lineno, "face with fewer than 3 vertices");
    }
    std::vector<int> poly;
    poly.reserve(count);
    for (int k = 0; k < count; ++k) {
      int idx = 0;
      if (!(line.tokens >> idx)) {
        throw ParseError(path, line.lineno, "malformed face record");
      }
      if (idx < 0 || idx >= mesh.vertex_count()) {
        throw ParseError(path, line.lineno,
                         "face index " + std::to_string(idx) + " out of range");
      }
      poly.push_back(idx);
    }
    emit_fan(poly, path, line.lineno, mesh);
  }
  return mesh;
}

void fmt_coord(char* buf, size_t cap, double v) { std::snprintf(buf, cap, "%.17g", v); }

void write_obj(const Mesh& mesh, std::ostream& out) {
  char bx[32], by[32], bz[32];
  for (const Vec3& v : mesh.vertices) {
    fmt_coord(bx, sizeof bx, v.x);
    fmt_coord(by, sizeof by, v.y);
    fmt_coord(bz, sizeof bz, v.z);
    out << "v " << bx << ' ' << by << ' ' << bz << '\n';
  }
  for (const Triangle& t : mesh.triangles) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

void write_off(const Mesh& mesh, std::ostream& out) {
  out << "OFF\n";
  out << mesh.vertex_count() << ' ' << mesh.triangle_count() << " 0\n";
  char bx[32], by[32], bz[32];
  for (const Vec3& v : mesh.vertices) {
    fmt_coord(bx, sizeof bx, v.x);
    fmt_coord(by, sizeof by, v.y);
    fmt_coord(bz, sizeof bz, v.z);
    out << bx << ' ' << by << ' ' << bz << '\n';
  }
  for (const Triangle& t : mesh.triangles) {
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
}

}  // namespace

MeshFormat format_from_path(const std::string& path) {
  const std::string ext = lower_ext(path);
  if (ext == "obj") return MeshFormat::Obj;
  if (ext == "off") return MeshFormat::Off;
  throw std::invalid_argument("cannot infer mesh format from '" + path +
                              "' (expected .obj or .off)");
}

Mesh read_mesh(std::istream& in, MeshFormat format,
               const std::string& path_for_errors) {
  Mesh mesh = format == MeshFormat::Obj ? read_obj(in, path_for_errors)
                                        : read_off(in, path_for_errors);
  validate_mesh(mesh);
  return mesh;
}

Mesh load_mesh(const std::string& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  return read_mesh(in, format, path);
}

Mesh load_mesh(const std::string& path) {
  return load_mesh(path, format_from_path(path));
}

void write_mesh(const Mesh& mesh, std::ostream& out, MeshFormat format) {
  if (format == MeshFormat::Obj) {
    write_obj(mesh, out);
  } else {
    write_off(mesh, out);
  }
}

void save_mesh(const Mesh& mesh, const std::string& path, MeshFormat format) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  write_mesh(mesh, out, format);
  out.flush();
  if (!out) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  save_mesh(mesh, path, format_from_path(path));
}

}  // namespace meshflow
