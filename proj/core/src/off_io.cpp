#include "ivs/off_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ivs {

void write_off(const SimplicialComplex& complex, std::ostream& out) {
    if (!complex.has_coords()) throw std::logic_error("no geometric realization");
    const int top = complex.dim();
    const int nv = complex.num_vertices();
    const int nf = top >= 1 ? complex.num_cells(top) : 0;
    out << "OFF\n" << nv << " " << nf << " 0\n";
    out << std::setprecision(17);
    for (int v = 0; v < nv; ++v) {
        const Vec& p = complex.coord(v);
        out << p[0] << " " << p[1] << " " << (p.dim() == 3 ? p[2] : 0.0) << "\n";
    }
    for (int i = 0; i < nf; ++i) {
        const auto& verts = complex.cell(top, i);
        out << verts.size();
        for (int v : verts) out << " " << v;
        out << "\n";
    }
}

std::string write_off(const SimplicialComplex& complex) {
    std::ostringstream os;
    write_off(complex, os);
    return os.str();
}

SimplicialComplex read_off(std::istream& in) {
    std::string magic;
    if (!(in >> magic) || magic != "OFF") throw std::runtime_error("not an OFF file");
    int nv = 0, nf = 0, ne = 0;
    if (!(in >> nv >> nf >> ne) || nv < 0 || nf < 0)
        throw std::runtime_error("malformed OFF header");
    std::vector<Vec> pts3;
    pts3.reserve(static_cast<size_t>(nv));
    bool flat = true;
    for (int v = 0; v < nv; ++v) {
        double x, y, z;
        if (!(in >> x >> y >> z)) throw std::runtime_error("malformed OFF vertex line");
        if (z != 0.0) flat = false;
        pts3.emplace_back(x, y, z);
    }
    SimplicialComplex out(nv);
    for (int f = 0; f < nf; ++f) {
        int arity = 0;
        if (!(in >> arity) || arity < 1) throw std::runtime_error("malformed OFF face line");
        std::vector<int> verts(static_cast<size_t>(arity));
        for (int& v : verts)
            if (!(in >> v) || v < 0 || v >= nv) throw std::runtime_error("OFF face index out of range");
        if (arity <= 3) {
            out.add_cell(std::move(verts));
        } else {
            for (int i = 1; i + 1 < arity; ++i)
                out.add_cell({verts[0], verts[static_cast<size_t>(i)], verts[static_cast<size_t>(i + 1)]});
        }
    }
    std::vector<Vec> coords;
    coords.reserve(pts3.size());
    for (const Vec& p : pts3)
        coords.push_back(flat ? Vec(p[0], p[1]) : p);
    if (nv > 0) out.set_coords(std::move(coords));
    return out;
}

SimplicialComplex read_off_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_off(in);
}

void write_off_file(const SimplicialComplex& complex, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_off(complex, out);
}

}  // namespace ivs
