#pragma once

#include <cstdint>

#include "ivs/geometry.hpp"
#include "ivs/simplicial_complex.hpp"
#include "ivs/z2.hpp"

namespace ivs {

// Chain with a geometric realization. Non-owning: the host complex must
// outlive the view.
struct PLChain {
    const SimplicialComplex* host = nullptr;
    Z2Chain chain;
};

// Probe for point linking: a 0-cycle {near, far}, far chosen outside the
// surface's bounding box.
struct NormalZeroCycle {
    Vec near;
    Vec far;
};

// Parity of transverse crossings between a 1-chain and an (n-1)-chain in
// R^n, n = 2 or 3. Degenerate (non-transverse) configurations trigger a
// deterministic perturbation of the 1-chain's vertices of the given
// magnitude (<= 0 selects 1e-9 x bounding-box diameter), retried up to 3
// times before "non-transverse configuration" is thrown.
int intersection_mod2(const PLChain& curve, const PLChain& surface, double perturbation = 0.0);

// Mod-2 linking number of a closed (n-1)-chain with the probe's near point:
// the parity of crossings of the segment near->far with the surface (the
// segment bounds the normal 0-cycle). Degeneracy re-randomizes the far point
// using ray_seed.
int linking_point(const PLChain& surface, const NormalZeroCycle& probe, uint64_t ray_seed);

// Mod-2 linking number of two disjoint 1-cycles in R^3. `loop` must live on
// an ambient complex with 2-cells (typically a Freudenthal grid) in which it
// bounds; the bounding chain is found by the GF(2) solver (seeded), and the
// result is the crossing parity of `other` with it.
int linking_cycles(const PLChain& loop, const PLChain& other, uint64_t seed);

}  // namespace ivs
