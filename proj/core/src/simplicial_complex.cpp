#include "ivs/simplicial_complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ivs {

SimplicialComplex::SimplicialComplex(int num_vertices) {
    if (num_vertices < 0) throw std::invalid_argument("negative vertex count");
    if (num_vertices == 0) return;
    ensure_dim_slot(0);
    for (int v = 0; v < num_vertices; ++v) {
        cells_[0].push_back({v});
        index_[0].emplace(std::vector<int>{v}, v);
    }
}

void SimplicialComplex::ensure_dim_slot(int k) {
    while (static_cast<int>(cells_.size()) <= k) {
        cells_.emplace_back();
        index_.emplace_back();
    }
}

void SimplicialComplex::add_cell(std::vector<int> vertices) {
    if (vertices.empty()) throw std::invalid_argument("empty cell");
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw std::invalid_argument("repeated vertex in cell");
    const int nv = num_vertices();
    if (vertices.front() < 0 || vertices.back() >= nv)
        throw std::invalid_argument("vertex id out of range");
    const int k = static_cast<int>(vertices.size()) - 1;
    ensure_dim_slot(k);
    if (index_[static_cast<size_t>(k)].contains(vertices)) return;
    // Insert all proper faces first (dimension 1..k-1; vertices pre-exist).
    if (k >= 2) {
        std::vector<int> face(vertices.size() - 1);
        for (size_t skip = 0; skip < vertices.size(); ++skip) {
            size_t w = 0;
            for (size_t i = 0; i < vertices.size(); ++i)
                if (i != skip) face[w++] = vertices[i];
            add_cell(face);
        }
    }
    auto& slot = cells_[static_cast<size_t>(k)];
    index_[static_cast<size_t>(k)].emplace(vertices, static_cast<int>(slot.size()));
    slot.push_back(std::move(vertices));
}

int SimplicialComplex::total_cells() const {
    int t = 0;
    for (const auto& layer : cells_) t += static_cast<int>(layer.size());
    return t;
}

const std::vector<int>& SimplicialComplex::cell(int k, int idx) const {
    if (k < 0 || k > dim() || idx < 0 || idx >= num_cells(k))
        throw std::out_of_range("cell out of range");
    return cells_[static_cast<size_t>(k)][static_cast<size_t>(idx)];
}

std::optional<int> SimplicialComplex::index_of(int k, const std::vector<int>& vertices) const {
    if (k < 0 || k > dim()) return std::nullopt;
    auto it = index_[static_cast<size_t>(k)].find(vertices);
    if (it == index_[static_cast<size_t>(k)].end()) return std::nullopt;
    return it->second;
}

std::vector<int> SimplicialComplex::facets(int k, int idx) const {
    const auto& verts = cell(k, idx);
    if (k == 0) return {};
    std::vector<int> out;
    out.reserve(verts.size());
    std::vector<int> face(verts.size() - 1);
    for (size_t skip = 0; skip < verts.size(); ++skip) {
        size_t w = 0;
        for (size_t i = 0; i < verts.size(); ++i)
            if (i != skip) face[w++] = verts[i];
        auto fi = index_of(k - 1, face);
        if (!fi) throw std::logic_error("face closure violated");
        out.push_back(*fi);
    }
    std::sort(out.begin(), out.end());
    return out;
}

const Vec& SimplicialComplex::coord(int vertex) const {
    if (!coords_) throw std::logic_error("no geometric realization");
    return coords_->at(static_cast<size_t>(vertex));
}

void SimplicialComplex::set_coords(std::vector<Vec> coords) {
    if (static_cast<int>(coords.size()) != num_vertices())
        throw std::invalid_argument("coords size must equal vertex count");
    coords_ = std::move(coords);
}

std::vector<CellRef> SimplicialComplex::star(CellRef c) const {
    if (!valid(c)) throw std::out_of_range("cell out of range");
    const auto& base = cell(c);
    std::vector<CellRef> out;
    for (int k = c.dim; k <= dim(); ++k) {
        for (int i = 0; i < num_cells(k); ++i) {
            const auto& cand = cell(k, i);
            if (std::includes(cand.begin(), cand.end(), base.begin(), base.end()))
                out.push_back({k, i});
        }
    }
    return out;
}

SimplicialComplex SimplicialComplex::link(CellRef c, std::vector<int>* parent_vertices) const {
    if (!valid(c)) throw std::out_of_range("cell out of range");
    const auto& base = cell(c);
    // Collect link cells in parent vertex ids.
    std::vector<std::vector<int>> link_cells;
    std::set<int> link_verts;
    for (int k = 0; k <= dim(); ++k) {
        for (int i = 0; i < num_cells(k); ++i) {
            const auto& cand = cell(k, i);
            bool disjoint = true;
            for (int v : cand)
                if (std::binary_search(base.begin(), base.end(), v)) { disjoint = false; break; }
            if (!disjoint) continue;
            std::vector<int> join;
            join.reserve(cand.size() + base.size());
            std::merge(cand.begin(), cand.end(), base.begin(), base.end(), std::back_inserter(join));
            if (!index_of(static_cast<int>(join.size()) - 1, join)) continue;
            link_cells.push_back(cand);
            link_verts.insert(cand.begin(), cand.end());
        }
    }
    std::vector<int> parents(link_verts.begin(), link_verts.end());
    std::map<int, int> to_new;
    for (size_t i = 0; i < parents.size(); ++i) to_new[parents[i]] = static_cast<int>(i);

    SimplicialComplex out(static_cast<int>(parents.size()));
    for (auto cellverts : link_cells) {
        for (int& v : cellverts) v = to_new[v];
        out.add_cell(std::move(cellverts));
    }
    if (has_coords()) {
        std::vector<Vec> pts;
        pts.reserve(parents.size());
        for (int p : parents) pts.push_back(coord(p));
        out.set_coords(std::move(pts));
    }
    if (parent_vertices) *parent_vertices = std::move(parents);
    return out;
}

SimplicialComplex SimplicialComplex::barycentric_subdivide(std::vector<CellRef>* vertex_source) const {
    // New vertex per cell, numbered dimension-major in cell order.
    std::vector<int> offset(static_cast<size_t>(dim() + 1), 0);
    int total = 0;
    std::vector<CellRef> source;
    for (int k = 0; k <= dim(); ++k) {
        offset[static_cast<size_t>(k)] = total;
        total += num_cells(k);
        for (int i = 0; i < num_cells(k); ++i) source.push_back({k, i});
    }
    SimplicialComplex out(total);

    // Chains of strictly nested faces; each chain is one cell of the output.
    // Every subset of a cell is itself a cell (face closure), so the faces of
    // a chain are its subchains and direct insertion keeps the closure intact.
    std::vector<int> chain;
    auto vertex_id = [&](CellRef r) { return offset[static_cast<size_t>(r.dim)] + r.index; };
    auto emit = [&]() {
        if (chain.size() >= 2) {
            auto copy = chain;
            out.add_cell(std::move(copy));
        }
    };
    // Depth-first over chains ordered by strict face inclusion, largest last.
    auto descend = [&](auto&& self, int k, int idx) -> void {
        chain.push_back(vertex_id({k, idx}));
        emit();
        const auto& verts = cell(k, idx);
        if (k >= 1) {
            // Enumerate all nonempty proper subsets of `verts`.
            const int m = static_cast<int>(verts.size());
            for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
                std::vector<int> sub;
                for (int b = 0; b < m; ++b)
                    if (mask & (1u << b)) sub.push_back(verts[static_cast<size_t>(b)]);
                auto si = index_of(static_cast<int>(sub.size()) - 1, sub);
                if (si) self(self, static_cast<int>(sub.size()) - 1, *si);
            }
        }
        chain.pop_back();
    };
    // A chain's largest element determines it; start one DFS per cell but only
    // record chains whose first pushed cell is the chain maximum, descending
    // into proper faces only (which the recursion guarantees).
    for (int k = 0; k <= dim(); ++k)
        for (int i = 0; i < num_cells(k); ++i) descend(descend, k, i);

    if (has_coords()) {
        std::vector<Vec> pts;
        pts.reserve(static_cast<size_t>(total));
        for (const CellRef& r : source) {
            const auto& verts = cell(r);
            Vec bary = Vec::zero(ambient_dim());
            for (int v : verts) bary += coord(v);
            pts.push_back(bary * (1.0 / static_cast<double>(verts.size())));
        }
        out.set_coords(std::move(pts));
    }
    if (vertex_source) *vertex_source = std::move(source);
    return out;
}

double SimplicialComplex::mesh_size() const {
    if (!has_coords()) throw std::logic_error("no geometric realization");
    double best = 0.0;
    for (int k = 1; k <= dim(); ++k) {
        for (int i = 0; i < num_cells(k); ++i) {
            const auto& verts = cell(k, i);
            for (size_t a = 0; a < verts.size(); ++a)
                for (size_t b = a + 1; b < verts.size(); ++b)
                    best = std::max(best, dist(coord(verts[a]), coord(verts[b])));
        }
    }
    return best;
}

void SimplicialComplex::validate() const {
    for (int k = 0; k <= dim(); ++k) {
        std::set<std::vector<int>> seen;
        for (int i = 0; i < num_cells(k); ++i) {
            const auto& verts = cell(k, i);
            if (static_cast<int>(verts.size()) != k + 1)
                throw std::logic_error("cell arity does not match dimension");
            if (!std::is_sorted(verts.begin(), verts.end()) ||
                std::adjacent_find(verts.begin(), verts.end()) != verts.end())
                throw std::logic_error("cell vertices not strictly increasing");
            if (!seen.insert(verts).second) throw std::logic_error("duplicate cell");
            if (k >= 1) facets(k, i);  // throws when a face is missing
        }
    }
    if (coords_ && static_cast<int>(coords_->size()) != num_vertices())
        throw std::logic_error("coords do not cover all vertices");
}

SimplicialComplex make_points(int count) { return SimplicialComplex(count); }

SimplicialComplex make_sphere(int d, int refinement) {
    if (refinement < 0) throw std::invalid_argument("refinement must be >= 0");
    SimplicialComplex out;
    if (d == 1) {
        // Hexagon: smallest polygon whose vertex links stay nondegenerate
        // under the operations used elsewhere.
        out = SimplicialComplex(6);
        std::vector<Vec> pts;
        for (int i = 0; i < 6; ++i) {
            out.add_cell({i, (i + 1) % 6});
            const double a = 2.0 * M_PI * i / 6.0;
            pts.emplace_back(std::cos(a), std::sin(a));
        }
        out.set_coords(std::move(pts));
    } else if (d == 2) {
        // Octahedron on the unit sphere.
        out = SimplicialComplex(6);
        std::vector<Vec> pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
        for (int x : {0, 1})
            for (int y : {2, 3})
                for (int z : {4, 5}) out.add_cell({x, y, z});
        out.set_coords(std::move(pts));
    } else {
        throw std::invalid_argument("unsupported sphere dimension");
    }
    for (int r = 0; r < refinement; ++r) out = out.barycentric_subdivide();
    return out;
}

SimplicialComplex make_disk(int d, int refinement) { return cone(make_sphere(d, refinement)); }

SimplicialComplex cone(const SimplicialComplex& base) {
    const int apex = base.num_vertices();
    SimplicialComplex out(apex + 1);
    for (int k = 0; k <= base.dim(); ++k) {
        for (int i = 0; i < base.num_cells(k); ++i) {
            auto verts = base.cell(k, i);
            out.add_cell(verts);
            verts.push_back(apex);
            out.add_cell(std::move(verts));
        }
    }
    if (base.has_coords()) {
        std::vector<Vec> pts;
        pts.reserve(static_cast<size_t>(apex + 1));
        Vec centroid = Vec::zero(base.ambient_dim());
        for (int v = 0; v < apex; ++v) {
            pts.push_back(base.coord(v));
            centroid += base.coord(v);
        }
        pts.push_back(apex > 0 ? centroid * (1.0 / apex) : centroid);
        out.set_coords(std::move(pts));
    }
    return out;
}

SimplicialComplex make_grid(const Box& box, int resolution) {
    if (!box.nondegenerate()) throw std::invalid_argument("degenerate box");
    if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
    const int n = box.dim();
    if (n != 2 && n != 3) throw std::invalid_argument("grid dimension must be 2 or 3");
    const int r = resolution;
    const int per_axis = r + 1;

    auto vid2 = [&](int i, int j) { return i * per_axis + j; };
    auto vid3 = [&](int i, int j, int k) { return (i * per_axis + j) * per_axis + k; };

    int nv = per_axis * per_axis * (n == 3 ? per_axis : 1);
    SimplicialComplex out(nv);
    std::vector<Vec> pts(static_cast<size_t>(nv), Vec::zero(n));
    auto coord_at = [&](int idx, int axis) {
        return box.lo[axis] + (box.hi[axis] - box.lo[axis]) * idx / static_cast<double>(r);
    };

    if (n == 2) {
        for (int i = 0; i < per_axis; ++i)
            for (int j = 0; j < per_axis; ++j)
                pts[static_cast<size_t>(vid2(i, j))] = Vec(coord_at(i, 0), coord_at(j, 1));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                const int a = vid2(i, j), b = vid2(i + 1, j), c = vid2(i, j + 1), d = vid2(i + 1, j + 1);
                // Diagonal along the main lattice direction in every square.
                out.add_cell({a, b, d});
                out.add_cell({a, c, d});
            }
    } else {
        for (int i = 0; i < per_axis; ++i)
            for (int j = 0; j < per_axis; ++j)
                for (int k = 0; k < per_axis; ++k)
                    pts[static_cast<size_t>(vid3(i, j, k))] =
                        Vec(coord_at(i, 0), coord_at(j, 1), coord_at(k, 2));
        // Kuhn decomposition: one tetrahedron per permutation path from the
        // low corner to the high corner of each cube.
        static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k)
                    for (const auto& p : perms) {
                        int step[3] = {0, 0, 0};
                        std::vector<int> tet = {vid3(i, j, k)};
                        for (int s = 0; s < 3; ++s) {
                            step[p[s]] = 1;
                            tet.push_back(vid3(i + step[0], j + step[1], k + step[2]));
                        }
                        out.add_cell(std::move(tet));
                    }
    }
    out.set_coords(std::move(pts));
    return out;
}

}  // namespace ivs
