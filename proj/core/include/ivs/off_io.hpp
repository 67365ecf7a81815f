#pragma once

#include <iosfwd>
#include <string>

#include "ivs/simplicial_complex.hpp"

namespace ivs {

// ASCII OFF export/import. Vertices are written with three coordinates
// (2-D complexes padded with z = 0); top cells become face lines, so a
// polyline complex writes 2-vertex faces and a triangle mesh 3-vertex ones.
void write_off(const SimplicialComplex& complex, std::ostream& out);
std::string write_off(const SimplicialComplex& complex);

// Reads an OFF file; polygonal faces with more than three vertices are
// fan-triangulated. Coordinates are kept 2-D when every z is zero.
SimplicialComplex read_off(std::istream& in);
SimplicialComplex read_off_file(const std::string& path);
void write_off_file(const SimplicialComplex& complex, const std::string& path);

}  // namespace ivs
