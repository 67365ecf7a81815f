#include "ivs/pl_intersect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ivs {

namespace {

constexpr double kGuardBand = 1e-12;

struct Signed {
    int sign;        // -1, 0 (too close to call), +1
    bool degenerate; // value fell inside the guard band
};

Signed classify(double value, double scale) {
    if (std::abs(value) <= kGuardBand * std::max(scale, 1e-300)) return {0, true};
    return {value > 0.0 ? 1 : -1, false};
}

double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

Vec cross3(const Vec& a, const Vec& b) {
    return Vec(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

Signed orient2d(const Vec& a, const Vec& b, const Vec& c) {
    const Vec u = b - a, v = c - a;
    return classify(cross2(u, v), u.norm() * v.norm());
}

Signed orient3d(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
    const Vec u = b - a, v = c - a, w = d - a;
    return classify(cross3(u, v).dot(w), u.norm() * v.norm() * w.norm());
}

// Proper crossing of segment pq with segment ab.
bool segment_hits_segment(const Vec& p, const Vec& q, const Vec& a, const Vec& b, bool& degenerate) {
    const Signed s1 = orient2d(p, q, a), s2 = orient2d(p, q, b);
    const Signed s3 = orient2d(a, b, p), s4 = orient2d(a, b, q);
    if (s1.degenerate || s2.degenerate || s3.degenerate || s4.degenerate) {
        // Only ambiguous when the segments are near one another; two clearly
        // separated segments cannot cross however the collinear tie resolves.
        if ((s3.sign == s4.sign && !s3.degenerate && !s4.degenerate) ||
            (s1.sign == s2.sign && !s1.degenerate && !s2.degenerate))
            return false;
        degenerate = true;
        return false;
    }
    return s1.sign != s2.sign && s3.sign != s4.sign;
}

// Proper crossing of segment pq with triangle abc.
bool segment_hits_triangle(const Vec& p, const Vec& q, const Vec& a, const Vec& b, const Vec& c,
                           bool& degenerate) {
    const Signed sp = orient3d(a, b, c, p), sq = orient3d(a, b, c, q);
    if (sp.degenerate || sq.degenerate) {
        degenerate = true;
        return false;
    }
    if (sp.sign == sq.sign) return false;
    const Signed t1 = orient3d(p, q, a, b), t2 = orient3d(p, q, b, c), t3 = orient3d(p, q, c, a);
    if (t1.degenerate || t2.degenerate || t3.degenerate) {
        degenerate = true;
        return false;
    }
    return t1.sign == t2.sign && t2.sign == t3.sign;
}

struct GeometricChain {
    int n = 0;                                  // ambient dimension
    std::vector<std::vector<Vec>> simplices;    // coordinates per cell
    std::vector<std::vector<int>> vertex_ids;   // host vertex ids per cell
    Vec bbox_lo, bbox_hi;
};

GeometricChain realize(const PLChain& pl) {
    if (!pl.host || !pl.host->has_coords()) throw std::invalid_argument("no geometric realization");
    GeometricChain out;
    out.n = pl.host->ambient_dim();
    bool first = true;
    for (int idx : pl.chain.support()) {
        const auto& verts = pl.host->cell(pl.chain.dim(), idx);
        std::vector<Vec> pts;
        for (int v : verts) {
            pts.push_back(pl.host->coord(v));
            if (first) {
                out.bbox_lo = out.bbox_hi = pts.back();
                first = false;
            } else {
                for (int i = 0; i < out.n; ++i) {
                    out.bbox_lo[i] = std::min(out.bbox_lo[i], pts.back()[i]);
                    out.bbox_hi[i] = std::max(out.bbox_hi[i], pts.back()[i]);
                }
            }
        }
        out.simplices.push_back(std::move(pts));
        out.vertex_ids.push_back(verts);
    }
    if (first) {
        out.bbox_lo = out.bbox_hi = Vec::zero(out.n);
    }
    return out;
}

double bbox_diameter(const GeometricChain& g) { return dist(g.bbox_lo, g.bbox_hi); }

// Crossing parity of one segment against every simplex of `surface`.
// Returns -1 when a degenerate configuration was met.
int segment_parity(const Vec& p, const Vec& q, const GeometricChain& surface) {
    int count = 0;
    bool degenerate = false;
    for (const auto& s : surface.simplices) {
        const bool hit = surface.n == 2 ? segment_hits_segment(p, q, s[0], s[1], degenerate)
                                        : segment_hits_triangle(p, q, s[0], s[1], s[2], degenerate);
        if (degenerate) return -1;
        if (hit) ++count;
    }
    return count % 2;
}

bool point_on_simplex(const Vec& p, const std::vector<Vec>& s, int n) {
    const double scale = n == 2 ? dist(s[0], s[1]) : std::max(dist(s[0], s[1]), dist(s[0], s[2]));
    const double tol = 1e-9 * std::max(scale, 1e-12);
    if (n == 2) {
        const Vec d = s[1] - s[0];
        const double len2 = d.norm2();
        const double t = std::clamp((p - s[0]).dot(d) / len2, 0.0, 1.0);
        return dist(p, s[0] + d * t) <= tol;
    }
    const Vec nrm = cross3(s[1] - s[0], s[2] - s[0]);
    const double nn = nrm.norm();
    if (nn == 0.0) return dist(p, s[0]) <= tol;
    if (std::abs((p - s[0]).dot(nrm)) / nn > tol) return false;
    // Inside test via barycentric signs in the plane.
    const Vec& a = s[0];
    const Vec& b = s[1];
    const Vec& c = s[2];
    const double area = nn;
    const double u = cross3(b - p, c - p).dot(nrm) / (area * area) * area;
    const double v = cross3(c - p, a - p).dot(nrm) / (area * area) * area;
    const double w = cross3(a - p, b - p).dot(nrm) / (area * area) * area;
    const double slack = 1e-9 * area;
    return u >= -slack && v >= -slack && w >= -slack;
}

bool point_on_chain(const Vec& p, const GeometricChain& g) {
    for (const auto& s : g.simplices)
        if (point_on_simplex(p, s, g.n)) return true;
    return false;
}

}  // namespace

int intersection_mod2(const PLChain& curve, const PLChain& surface, double perturbation) {
    GeometricChain a = realize(curve);
    const GeometricChain b = realize(surface);
    if (a.n != b.n || (a.n != 2 && a.n != 3)) throw std::invalid_argument("dimension mismatch");
    if (curve.chain.dim() != 1 || surface.chain.dim() != a.n - 1)
        throw std::invalid_argument("dimension mismatch");

    const double diam = std::max(bbox_diameter(a), bbox_diameter(b));
    const double magnitude = perturbation > 0.0 ? perturbation : 1e-9 * std::max(diam, 1.0);

    for (int attempt = 0; attempt <= 3; ++attempt) {
        GeometricChain shifted = a;
        if (attempt > 0) {
            // Shift per host vertex id, so segments sharing an endpoint stay
            // glued and the chain's crossing parity remains well defined.
            for (size_t si = 0; si < shifted.simplices.size(); ++si)
                for (size_t vi = 0; vi < shifted.simplices[si].size(); ++vi) {
                    uint64_t state = 0xabcdull * static_cast<uint64_t>(attempt) +
                                     static_cast<uint64_t>(shifted.vertex_ids[si][vi]) * 7919ull;
                    for (int i = 0; i < shifted.n; ++i)
                        shifted.simplices[si][vi][i] += magnitude * unit_noise(state);
                }
        }
        int parity = 0;
        bool degenerate = false;
        for (const auto& seg : shifted.simplices) {
            const int sp = segment_parity(seg[0], seg[1], b);
            if (sp < 0) {
                degenerate = true;
                break;
            }
            parity ^= sp;
        }
        if (!degenerate) return parity;
    }
    throw std::runtime_error("non-transverse configuration");
}

int linking_point(const PLChain& surface, const NormalZeroCycle& probe, uint64_t ray_seed) {
    const GeometricChain g = realize(surface);
    if (g.n != 2 && g.n != 3) throw std::invalid_argument("dimension mismatch");
    if (surface.chain.dim() != g.n - 1) throw std::invalid_argument("dimension mismatch");
    if (!is_cycle(*surface.host, surface.chain))
        throw std::invalid_argument("surface chain is not a cycle");
    if (probe.near.dim() != g.n || probe.far.dim() != g.n)
        throw std::invalid_argument("dimension mismatch");
    if (point_on_chain(probe.near, g) || point_on_chain(probe.far, g))
        throw std::invalid_argument("probe on chain support");
    bool far_outside = false;
    for (int j = 0; j < g.n; ++j)
        if (probe.far[j] < g.bbox_lo[j] || probe.far[j] > g.bbox_hi[j]) far_outside = true;
    if (!far_outside)
        throw std::invalid_argument("probe far point must lie outside the surface bounding box");

    Vec far = probe.far;
    const Vec center = (g.bbox_lo + g.bbox_hi) * 0.5;
    const double radius = 0.5 * bbox_diameter(g);
    for (int attempt = 0; attempt < 32; ++attempt) {
        const int parity = segment_parity(probe.near, far, g);
        if (parity >= 0) return parity;
        // Any far point outside the box gives the same parity: re-aim the ray.
        uint64_t state = ray_seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(attempt) + 1;
        Vec dir = Vec::zero(g.n);
        double len = 0.0;
        while (len < 1e-3) {
            for (int i = 0; i < g.n; ++i) dir[i] = unit_noise(state);
            len = dir.norm();
        }
        const double reach = 2.0 * radius + dist(probe.near, center) + 1.0;
        far = center + dir * (reach / len);
    }
    throw std::runtime_error("non-transverse configuration");
}

int linking_cycles(const PLChain& loop, const PLChain& other, uint64_t seed) {
    if (!loop.host || !loop.host->has_coords() || loop.host->ambient_dim() != 3)
        throw std::invalid_argument("dimension mismatch");
    if (loop.chain.dim() != 1 || other.chain.dim() != 1)
        throw std::invalid_argument("dimension mismatch");
    if (!is_cycle(*loop.host, loop.chain)) throw std::invalid_argument("input chain is not a cycle");
    auto spanning = solve_bounding_chain(*loop.host, loop.chain, seed);
    if (!spanning) throw std::runtime_error("ambient complex too small");
    return intersection_mod2(other, PLChain{loop.host, *spanning});
}

}  // namespace ivs
