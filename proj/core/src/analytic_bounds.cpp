#include "ivs/analytic_bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace ivs {

namespace {

// Smallest eigenvalue of a symmetric positive semidefinite 2x2 / 3x3 matrix.
double min_eigenvalue_sym(const Mat& g) {
    if (g.dim() == 1) return g(0, 0);
    if (g.dim() == 2) {
        const double tr = g(0, 0) + g(1, 1);
        const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
        return 0.5 * (tr - disc);
    }
    // Trigonometric closed form for symmetric 3x3 eigenvalues.
    const double p1 = g(0, 1) * g(0, 1) + g(0, 2) * g(0, 2) + g(1, 2) * g(1, 2);
    const double q = (g(0, 0) + g(1, 1) + g(2, 2)) / 3.0;
    if (p1 == 0.0) return std::min({g(0, 0), g(1, 1), g(2, 2)});
    const double p2 = (g(0, 0) - q) * (g(0, 0) - q) + (g(1, 1) - q) * (g(1, 1) - q) +
                      (g(2, 2) - q) * (g(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Mat b(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = (g(i, j) - (i == j ? q : 0.0)) / p;
    const double r = std::clamp(b.det() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    return q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
}

template <class F>
BoundEstimate grid_minimum(const MapSpec& m, const Box& box, int grid_resolution, F&& f) {
    if (grid_resolution < 4) throw std::invalid_argument("grid resolution must be at least 4");
    if (!box.nondegenerate() || box.dim() != m.n) throw std::invalid_argument("degenerate box");
    const int per_axis = grid_resolution + 1;
    BoundEstimate out;
    out.box = box;
    out.value = std::numeric_limits<double>::infinity();
    const int kmax = m.n == 3 ? per_axis : 1;
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j)
            for (int k = 0; k < kmax; ++k) {
                Vec p = Vec::zero(m.n);
                p[0] = box.lo[0] + (box.hi[0] - box.lo[0]) * i / grid_resolution;
                p[1] = box.lo[1] + (box.hi[1] - box.lo[1]) * j / grid_resolution;
                if (m.n == 3) p[2] = box.lo[2] + (box.hi[2] - box.lo[2]) * k / grid_resolution;
                const double v = f(p);
                ++out.samples;
                if (v < out.value) {  // strict: lowest-index tie-breaking
                    out.value = v;
                    out.argmin_point = p;
                }
            }
    return out;
}

}  // namespace

double sigma_min(const Mat& a) {
    return std::sqrt(std::max(0.0, min_eigenvalue_sym(a.transpose_times_self())));
}

BoundEstimate hadamard_bound(const MapSpec& m, const Box& box, int grid_resolution) {
    return grid_minimum(m, box, grid_resolution,
                        [&](const Vec& p) { return sigma_min(jacobian(m, p)); });
}

BoundEstimate nollet_xavier_bound(const MapSpec& m, const Vec& v, const Box& box,
                                  int grid_resolution) {
    if (v.dim() != m.n) throw std::invalid_argument("direction dimension mismatch");
    if (std::abs(v.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("direction must be a unit vector");
    BoundEstimate out = grid_minimum(
        m, box, grid_resolution, [&](const Vec& p) { return jacobian(m, p).apply_transpose(v).norm(); });
    out.direction = v;
    return out;
}

}  // namespace ivs
