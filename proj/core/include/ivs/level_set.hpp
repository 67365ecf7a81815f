#pragma once

#include <vector>

#include "ivs/map_dsl.hpp"
#include "ivs/simplicial_complex.hpp"
#include "ivs/z2.hpp"

namespace ivs {

// Affine hyperplane {p : <p, v> = c} with unit normal.
struct Hyperplane {
    Vec normal;
    double offset = 0.0;

    static Hyperplane make(const Vec& v, double c);  // validates |v| = 1 (1e-12)
};

// PL approximation of f^{-1}(H) clipped to a box: a polyline (n = 2) or
// triangle mesh (n = 3) with per-component clipping flags.
struct LevelSetMesh {
    SimplicialComplex complex;               // dim n-1 with coords
    int resolution = 0;                      // grid cells per axis
    Vec spacing;                             // grid spacing per axis
    Box box;
    int num_components = 0;
    std::vector<int> cell_component;         // per (n-1)-cell
    std::vector<bool> touches_box_boundary;  // per component
    double min_gradient_norm = 0.0;          // min |grad <f,v>| on the grid
    bool gradient_warning = false;           // min gradient below 1e-8

    bool nonempty() const { return complex.num_cells(complex.dim()) > 0; }
};

struct TopologySummary {
    bool nonempty = false;
    BettiVector betti;
    int boundary_touching_components = 0;
    int closed_loops = 0;  // components with empty topological boundary
    int components = 0;
};

// Marching squares / marching tetrahedra on g(x) = <f(x), v> - c over the
// boxed grid. Grid values that are exactly zero are nudged by +1e-12 x scale
// so every sign configuration is unambiguous; in 3-D each cube is split into
// six tetrahedra (matching make_grid), which fixes the ambiguous cube cases
// deterministically. Requires resolution >= 8.
LevelSetMesh extract_levelset(const MapSpec& m, const Hyperplane& h, const Box& box,
                              int resolution);

TopologySummary topology_summary(const LevelSetMesh& mesh);

}  // namespace ivs
