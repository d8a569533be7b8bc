#pragma once

#include <iosfwd>
#include <string>

#include "fsidwr/mesh.hpp"

namespace fsidwr {

/// Parses an AVS-UCD (*.inp) mesh: vertices, quad cells with material ids,
/// and boundary line elements carrying boundary ids. z coordinates are
/// ignored. Throws std::runtime_error with the offending line number on
/// malformed input.
Mesh read_ucd(std::istream& in);
Mesh read_ucd_file(const std::string& path);

/// Writes the active mesh in the same format (quads + boundary lines).
void write_ucd(const Mesh& mesh, std::ostream& out);

}  // namespace fsidwr
