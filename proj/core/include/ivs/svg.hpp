#pragma once

#include <iosfwd>
#include <string>

#include "ivs/level_set.hpp"

namespace ivs {

// Standalone SVG plot of a 2-D level-set mesh: one polyline per component,
// boundary-touching components dashed, plus the clipping box frame.
void write_levelset_svg(const LevelSetMesh& mesh, std::ostream& out);
void write_levelset_svg_file(const LevelSetMesh& mesh, const std::string& path);

}  // namespace ivs
