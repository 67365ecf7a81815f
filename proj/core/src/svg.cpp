#include "ivs/svg.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ivs {

namespace {

// Chains the edges of one component into polylines (components of a
// marching-squares output are 1-manifolds, open or closed).
std::vector<std::vector<int>> walk_polylines(const SimplicialComplex& complex,
                                             const std::vector<int>& edges) {
    std::map<int, std::vector<std::pair<int, int>>> incident;  // vertex -> (edge, other)
    for (int e : edges) {
        const auto& verts = complex.cell(1, e);
        incident[verts[0]].push_back({e, verts[1]});
        incident[verts[1]].push_back({e, verts[0]});
    }
    std::map<int, bool> used;
    for (int e : edges) used[e] = false;

    std::vector<std::vector<int>> polylines;
    auto walk_from = [&](int start) {
        std::vector<int> line = {start};
        int at = start;
        while (true) {
            int next_edge = -1, next_vertex = -1;
            for (const auto& [e, other] : incident[at])
                if (!used[e]) {
                    next_edge = e;
                    next_vertex = other;
                    break;
                }
            if (next_edge < 0) break;
            used[next_edge] = true;
            line.push_back(next_vertex);
            at = next_vertex;
        }
        return line;
    };
    // Open strands first (start at odd-degree vertices), then loops.
    for (const auto& [v, inc] : incident)
        if (inc.size() % 2 == 1) {
            auto line = walk_from(v);
            if (line.size() > 1) polylines.push_back(std::move(line));
        }
    for (int e : edges)
        if (!used[e]) {
            auto line = walk_from(complex.cell(1, e)[0]);
            if (line.size() > 1) polylines.push_back(std::move(line));
        }
    return polylines;
}

}  // namespace

void write_levelset_svg(const LevelSetMesh& mesh, std::ostream& out) {
    if (mesh.box.dim() != 2) throw std::invalid_argument("SVG plots are 2-D only");
    const double width = 800.0, margin = 24.0;
    const double sx = mesh.box.hi[0] - mesh.box.lo[0];
    const double sy = mesh.box.hi[1] - mesh.box.lo[1];
    const double scale = (width - 2 * margin) / std::max(sx, sy);
    const double height = sy * scale + 2 * margin;
    auto px = [&](double x) { return margin + (x - mesh.box.lo[0]) * scale; };
    auto py = [&](double y) { return height - margin - (y - mesh.box.lo[1]) * scale; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << sx * scale + 2 * margin
        << "\" height=\"" << height << "\">\n";
    out << "  <rect x=\"" << px(mesh.box.lo[0]) << "\" y=\"" << py(mesh.box.hi[1]) << "\" width=\""
        << sx * scale << "\" height=\"" << sy * scale
        << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};
    std::vector<std::vector<int>> comp_edges(static_cast<size_t>(mesh.num_components));
    for (int e = 0; e < mesh.complex.num_cells(1); ++e)
        comp_edges[static_cast<size_t>(mesh.cell_component[static_cast<size_t>(e)])].push_back(e);

    for (int comp = 0; comp < mesh.num_components; ++comp) {
        const char* color = palette[comp % 8];
        const bool dashed = mesh.touches_box_boundary[static_cast<size_t>(comp)];
        for (const auto& line : walk_polylines(mesh.complex, comp_edges[static_cast<size_t>(comp)])) {
            out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
            if (dashed) out << " stroke-dasharray=\"6 4\"";
            out << " points=\"";
            for (size_t i = 0; i < line.size(); ++i) {
                const Vec& p = mesh.complex.coord(line[i]);
                out << (i ? " " : "") << px(p[0]) << "," << py(p[1]);
            }
            out << "\"/>\n";
        }
    }
    out << "</svg>\n";
}

void write_levelset_svg_file(const LevelSetMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_levelset_svg(mesh, out);
}

}  // namespace ivs
