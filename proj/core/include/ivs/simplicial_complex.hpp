#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ivs/geometry.hpp"

namespace ivs {

// Reference to one cell of a complex: dimension + index into that dimension.
struct CellRef {
    int dim = 0;
    int index = 0;
    auto operator<=>(const CellRef&) const = default;
};

// Finite abstract simplicial complex. Cells are sorted vertex-id tuples,
// vertices are dense ids 0..num_vertices()-1 and always present as 0-cells.
// Face closure is maintained by add_cell. An optional geometric realization
// assigns a point to every vertex. Instances are treated as immutable once
// built and are safe to share read-only across threads.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    explicit SimplicialComplex(int num_vertices);

    // Inserts the cell and every face of it. Vertex ids must be < num_vertices.
    void add_cell(std::vector<int> vertices);

    int dim() const { return static_cast<int>(cells_.size()) - 1; }
    bool empty() const { return cells_.empty(); }
    int num_vertices() const { return empty() ? 0 : num_cells(0); }
    int num_cells(int k) const {
        return (k < 0 || k > dim()) ? 0 : static_cast<int>(cells_[static_cast<size_t>(k)].size());
    }
    int total_cells() const;

    const std::vector<int>& cell(int k, int index) const;
    const std::vector<int>& cell(CellRef ref) const { return cell(ref.dim, ref.index); }
    std::optional<int> index_of(int k, const std::vector<int>& vertices) const;
    bool valid(CellRef ref) const { return ref.dim >= 0 && ref.dim <= dim() && ref.index >= 0 && ref.index < num_cells(ref.dim); }

    // Indices of the (k-1)-faces of cell (k, index).
    std::vector<int> facets(int k, int index) const;

    // Geometric realization.
    bool has_coords() const { return coords_.has_value(); }
    const Vec& coord(int vertex) const;
    void set_coords(std::vector<Vec> coords);
    int ambient_dim() const { return has_coords() && !coords_->empty() ? coords_->front().dim() : 0; }

    // All cells having `c` as a face, including `c` itself.
    std::vector<CellRef> star(CellRef c) const;

    // Subcomplex of cells disjoint from `c` whose union with `c` is again a
    // cell. Vertices are re-indexed densely; when `parent_vertices` is given
    // it receives, per new vertex id, the vertex id in this complex.
    SimplicialComplex link(CellRef c, std::vector<int>* parent_vertices = nullptr) const;

    // Standard barycentric subdivision: one new vertex per cell, new k-cells
    // are chains of strictly nested faces of length k+1. When `vertex_source`
    // is given it receives, per new vertex, the cell of this complex it is the
    // barycenter of. Coordinates (when present) map to barycenters.
    SimplicialComplex barycentric_subdivide(std::vector<CellRef>* vertex_source = nullptr) const;

    // Maximum Euclidean diameter over all cells. Requires coords.
    double mesh_size() const;

    // Checks face closure, sortedness, duplicate-freeness, coord sizing.
    // Throws std::logic_error on violation; used by constructors' tests.
    void validate() const;

private:
    void ensure_dim_slot(int k);

    std::vector<std::vector<std::vector<int>>> cells_;
    std::vector<std::map<std::vector<int>, int>> index_;
    std::optional<std::vector<Vec>> coords_;
};

// Canonical constructions. `refinement` counts barycentric subdivisions.
SimplicialComplex make_sphere(int d, int refinement);                 // d=1 hexagon, d=2 octahedron
SimplicialComplex make_disk(int d, int refinement);                   // cone over make_sphere(d, refinement)
SimplicialComplex make_grid(const Box& box, int resolution);          // Freudenthal-triangulated box
SimplicialComplex make_points(int count);                             // 0-dimensional complex

// Cone: appends an apex vertex joined to every cell. Original cells keep
// their (dim, index) positions. Apex coordinate is the vertex centroid.
SimplicialComplex cone(const SimplicialComplex& base);

}  // namespace ivs
