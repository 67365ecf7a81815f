#include "ivs/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ivs {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
            a = parent[static_cast<size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

// Accumulates crossing vertices (deduplicated by grid edge) and output cells.
class MeshBuilder {
public:
    explicit MeshBuilder(int ambient) : ambient_(ambient) {}

    int crossing(int grid_a, int grid_b, const Vec& pa, const Vec& pb, double ga, double gb) {
        auto key = std::minmax(grid_a, grid_b);
        auto it = vertex_of_edge_.find(key);
        if (it != vertex_of_edge_.end()) return it->second;
        const double t = ga / (ga - gb);
        const int id = static_cast<int>(points_.size());
        points_.push_back(pa + (pb - pa) * t);
        vertex_of_edge_.emplace(key, id);
        return id;
    }

    void add_cell(std::vector<int> verts) { cells_.push_back(std::move(verts)); }

    LevelSetMesh finish(const Box& box, int resolution, const Vec& spacing) {
        LevelSetMesh mesh;
        mesh.box = box;
        mesh.resolution = resolution;
        mesh.spacing = spacing;
        mesh.complex = SimplicialComplex(static_cast<int>(points_.size()));
        for (auto& c : cells_) mesh.complex.add_cell(std::move(c));
        if (!points_.empty()) mesh.complex.set_coords(points_);

        const int top = mesh.complex.dim();
        const int ncells = mesh.complex.num_cells(top);
        if (ncells == 0 || top < 1) {
            mesh.num_components = 0;
            return mesh;
        }
        UnionFind uf(mesh.complex.num_vertices());
        for (int i = 0; i < ncells; ++i) {
            const auto& verts = mesh.complex.cell(top, i);
            for (size_t k = 1; k < verts.size(); ++k) uf.unite(verts[0], verts[k]);
        }
        std::map<int, int> comp_id;
        mesh.cell_component.resize(static_cast<size_t>(ncells));
        for (int i = 0; i < ncells; ++i) {
            const int root = uf.find(mesh.complex.cell(top, i)[0]);
            auto [it, inserted] = comp_id.emplace(root, static_cast<int>(comp_id.size()));
            mesh.cell_component[static_cast<size_t>(i)] = it->second;
        }
        mesh.num_components = static_cast<int>(comp_id.size());

        mesh.touches_box_boundary.assign(static_cast<size_t>(mesh.num_components), false);
        const double tol = 1e-9;
        for (int i = 0; i < ncells; ++i) {
            const int comp = mesh.cell_component[static_cast<size_t>(i)];
            for (int v : mesh.complex.cell(top, i)) {
                const Vec& p = mesh.complex.coord(v);
                for (int ax = 0; ax < box.dim(); ++ax)
                    if (std::abs(p[ax] - box.lo[ax]) <= tol || std::abs(p[ax] - box.hi[ax]) <= tol)
                        mesh.touches_box_boundary[static_cast<size_t>(comp)] = true;
            }
        }
        return mesh;
    }

private:
    int ambient_;
    std::map<std::pair<int, int>, int> vertex_of_edge_;
    std::vector<Vec> points_;
    std::vector<std::vector<int>> cells_;
};

}  // namespace

Hyperplane Hyperplane::make(const Vec& v, double c) {
    if (std::abs(v.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("hyperplane normal must be a unit vector");
    return Hyperplane{v, c};
}

LevelSetMesh extract_levelset(const MapSpec& m, const Hyperplane& h, const Box& box,
                              int resolution) {
    if (resolution < 8) throw std::invalid_argument("resolution must be at least 8 cells per axis");
    if (!box.nondegenerate() || box.dim() != m.n) throw std::invalid_argument("degenerate box");
    if (h.normal.dim() != m.n) throw std::invalid_argument("hyperplane dimension mismatch");
    const int n = m.n;
    const int per_axis = resolution + 1;

    Vec spacing = Vec::zero(n);
    for (int ax = 0; ax < n; ++ax) spacing[ax] = (box.hi[ax] - box.lo[ax]) / resolution;

    auto grid_point = [&](int i, int j, int k) {
        Vec p = Vec::zero(n);
        p[0] = box.lo[0] + spacing[0] * i;
        p[1] = box.lo[1] + spacing[1] * j;
        if (n == 3) p[2] = box.lo[2] + spacing[2] * k;
        return p;
    };
    auto grid_id = [&](int i, int j, int k) {
        return n == 2 ? i * per_axis + j : (i * per_axis + j) * per_axis + k;
    };

    const int total = n == 2 ? per_axis * per_axis : per_axis * per_axis * per_axis;
    std::vector<double> value(static_cast<size_t>(total));
    std::vector<Vec> point(static_cast<size_t>(total), Vec::zero(n));
    double max_abs = 0.0;
    double min_grad = std::numeric_limits<double>::infinity();
    const int kmax = n == 3 ? per_axis : 1;
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j)
            for (int k = 0; k < kmax; ++k) {
                const Vec p = grid_point(i, j, k);
                try {
                    const Vec y = eval(m, p);
                    value[static_cast<size_t>(grid_id(i, j, k))] = y.dot(h.normal) - h.offset;
                    min_grad = std::min(min_grad, directional_gradient(m, p, h.normal).norm());
                } catch (const EvalError& err) {
                    std::ostringstream os;
                    os << "map evaluation failed at grid index (" << i << "," << j;
                    if (n == 3) os << "," << k;
                    os << "), x = (";
                    for (int ax = 0; ax < n; ++ax) os << (ax ? "," : "") << p[ax];
                    os << "): " << err.what();
                    throw EvalError(os.str());
                }
                point[static_cast<size_t>(grid_id(i, j, k))] = p;
                max_abs = std::max(max_abs, std::abs(value[static_cast<size_t>(grid_id(i, j, k))]));
            }
    // Symbolic perturbation: exact zeros get a positive nudge so every grid
    // vertex has a definite sign.
    const double nudge = 1e-12 * std::max(1.0, max_abs);
    for (double& g : value)
        if (g == 0.0) g = nudge;

    MeshBuilder builder(n);
    auto cross = [&](int ga, int gb) {
        return builder.crossing(ga, gb, point[static_cast<size_t>(ga)], point[static_cast<size_t>(gb)],
                                value[static_cast<size_t>(ga)], value[static_cast<size_t>(gb)]);
    };

    if (n == 2) {
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j) {
                const int a = grid_id(i, j, 0), b = grid_id(i + 1, j, 0);
                const int c = grid_id(i + 1, j + 1, 0), d = grid_id(i, j + 1, 0);
                const double ga = value[static_cast<size_t>(a)], gb = value[static_cast<size_t>(b)];
                const double gc = value[static_cast<size_t>(c)], gd = value[static_cast<size_t>(d)];
                const int mask = (ga > 0 ? 1 : 0) | (gb > 0 ? 2 : 0) | (gc > 0 ? 4 : 0) | (gd > 0 ? 8 : 0);
                if (mask == 0 || mask == 15) continue;
                const int e_ab = (ga > 0) != (gb > 0) ? cross(a, b) : -1;
                const int e_bc = (gb > 0) != (gc > 0) ? cross(b, c) : -1;
                const int e_cd = (gc > 0) != (gd > 0) ? cross(c, d) : -1;
                const int e_da = (gd > 0) != (ga > 0) ? cross(d, a) : -1;
                auto segment = [&](int u, int v) { builder.add_cell({u, v}); };
                switch (mask) {
                    case 1: case 14: segment(e_ab, e_da); break;
                    case 2: case 13: segment(e_ab, e_bc); break;
                    case 4: case 11: segment(e_bc, e_cd); break;
                    case 8: case 7:  segment(e_cd, e_da); break;
                    case 3: case 12: segment(e_bc, e_da); break;
                    case 6: case 9:  segment(e_ab, e_cd); break;
                    case 5: case 10: {
                        // Ambiguous pair of opposite corners: the asymptotic
                        // decider (sign of the bilinear saddle value) picks
                        // which corners the two arcs hug.
                        const double denom = ga + gc - gb - gd;
                        const double saddle = denom != 0.0 ? (ga * gc - gb * gd) / denom : 0.0;
                        const bool positive_diag = mask == 5;  // corners a, c positive
                        const bool connect_positive = positive_diag ? saddle > 0.0 : saddle <= 0.0;
                        if (connect_positive) {
                            segment(e_ab, e_bc);  // arc around corner b
                            segment(e_cd, e_da);  // arc around corner d
                        } else {
                            segment(e_ab, e_da);  // arc around corner a
                            segment(e_bc, e_cd);  // arc around corner c
                        }
                        break;
                    }
                    default: break;
                }
            }
    } else {
        static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j)
                for (int k = 0; k < resolution; ++k)
                    for (const auto& perm : perms) {
                        int corner[4][3] = {{i, j, k}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
                        int step[3] = {0, 0, 0};
                        for (int s = 0; s < 3; ++s) {
                            step[perm[s]] = 1;
                            corner[s + 1][0] = i + step[0];
                            corner[s + 1][1] = j + step[1];
                            corner[s + 1][2] = k + step[2];
                        }
                        int vid[4];
                        double g[4];
                        for (int s = 0; s < 4; ++s) {
                            vid[s] = grid_id(corner[s][0], corner[s][1], corner[s][2]);
                            g[s] = value[static_cast<size_t>(vid[s])];
                        }
                        std::vector<int> pos, neg;
                        for (int s = 0; s < 4; ++s) (g[s] > 0 ? pos : neg).push_back(s);
                        if (pos.empty() || neg.empty()) continue;
                        if (pos.size() == 1 || neg.size() == 1) {
                            const int lone = pos.size() == 1 ? pos[0] : neg[0];
                            int tri[3], w = 0;
                            for (int s = 0; s < 4; ++s)
                                if (s != lone) tri[w++] = cross(vid[lone], vid[s]);
                            builder.add_cell({tri[0], tri[1], tri[2]});
                        } else {
                            // Quad between the two sign pairs, fanned from one
                            // corner; the shared-edge keys keep it watertight.
                            const int p0 = pos[0], p1 = pos[1], q0 = neg[0], q1 = neg[1];
                            const int v00 = cross(vid[p0], vid[q0]);
                            const int v01 = cross(vid[p0], vid[q1]);
                            const int v11 = cross(vid[p1], vid[q1]);
                            const int v10 = cross(vid[p1], vid[q0]);
                            builder.add_cell({v00, v01, v11});
                            builder.add_cell({v00, v11, v10});
                        }
                    }
    }

    LevelSetMesh mesh = builder.finish(box, resolution, spacing);
    mesh.min_gradient_norm = min_grad;
    mesh.gradient_warning = min_grad < 1e-8;
    return mesh;
}

TopologySummary topology_summary(const LevelSetMesh& mesh) {
    TopologySummary out;
    out.nonempty = mesh.nonempty();
    out.betti = betti(mesh.complex);
    out.components = mesh.num_components;
    const int top = mesh.complex.dim();
    if (top < 1) return out;
    std::vector<Z2Chain> per_component(static_cast<size_t>(mesh.num_components), Z2Chain(top));
    for (int i = 0; i < mesh.complex.num_cells(top); ++i)
        per_component[static_cast<size_t>(mesh.cell_component[static_cast<size_t>(i)])].toggle(i);
    for (int comp = 0; comp < mesh.num_components; ++comp) {
        if (boundary(mesh.complex, per_component[static_cast<size_t>(comp)]).empty()) ++out.closed_loops;
        if (mesh.touches_box_boundary[static_cast<size_t>(comp)]) ++out.boundary_touching_components;
    }
    return out;
}

}  // namespace ivs
