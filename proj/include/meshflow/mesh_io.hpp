#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "meshflow/mesh.hpp"

namespace meshflow {

enum class MeshFormat { Obj, Off };

// Picks a format from the file extension (case-insensitive .obj/.off).
// Throws std::invalid_argument for anything else.
MeshFormat format_from_path(const std::string& path);

// Malformed record in a mesh file; line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, int line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Loads an ASCII OBJ or OFF mesh. Polygon faces are fan-triangulated.
// OBJ normals/texcoords/materials and comments are ignored. Throws
// ParseError on malformed records and std::runtime_error on I/O failure.
Mesh load_mesh(const std::string& path, MeshFormat format);
Mesh load_mesh(const std::string& path);  // format from extension

Mesh read_mesh(std::istream& in, MeshFormat format,
               const std::string& path_for_errors = "<stream>");

// Writes with 17 significant digits so coordinates round-trip exactly.
void save_mesh(const Mesh& mesh, const std::string& path, MeshFormat format);
void save_mesh(const Mesh& mesh, const std::string& path);

void write_mesh(const Mesh& mesh, std::ostream& out, MeshFormat format);

}  // namespace meshflow
