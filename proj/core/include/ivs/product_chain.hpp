#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ivs/simplicial_complex.hpp"
#include "ivs/z2.hpp"

namespace ivs {

// One (fiber cell) x (base cell) generator of a product chain. Fiber cells
// live in a pool of fiber complexes; base cells in a single base complex.
struct ProductCell {
    int fiber_complex = 0;
    int fiber_dim = 0;
    int fiber_cell = 0;
    CellRef base;
    auto operator<=>(const ProductCell&) const = default;
    int dim() const { return fiber_dim + base.dim; }
};

// Formal Z2 sum of product cells of one total dimension.
class ProductChain {
public:
    ProductChain() = default;
    explicit ProductChain(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    bool empty() const { return support_.empty(); }
    int size() const { return static_cast<int>(support_.size()); }
    const std::set<ProductCell>& support() const { return support_; }

    void toggle(const ProductCell& cell);
    ProductChain& operator+=(const ProductChain& other);
    friend ProductChain operator+(ProductChain a, const ProductChain& b) { return a += b; }
    bool operator==(const ProductChain&) const = default;

private:
    int dim_ = 0;
    std::set<ProductCell> support_;
};

// Pool of fiber complexes referenced by ProductCell::fiber_complex.
using FiberPool = std::vector<SimplicialComplex>;

// d(a x b) = (da) x b + a x (db), where the boundary of a 0-dimensional
// factor contributes nothing.
ProductChain leibniz_boundary(const FiberPool& pool, const SimplicialComplex& base,
                              const ProductChain& p);

// Per-base-cell fiber data for the assembly. Every top-dimensional cell of
// the base carries a fiber complex (by pool id) and a chain in it:
//   - cylinder mode: a 1-chain path with boundary {endpoint0, endpoint1};
//     the assembly closes the result with cone caps over those endpoints.
//   - closed mode (endpoint0 = endpoint1 = -1): a single-vertex 0-chain
//     (a transversal point); the assembled chain is closed by itself.
// Cells whose stars interact must share the fiber complex id, mirroring the
// locally constant fiber assignment the construction assumes.
struct FiberAssignment {
    FiberPool pool;
    std::vector<int> top_complex;   // per top cell of the base
    std::vector<Z2Chain> top_chain; // per top cell of the base
    int endpoint0 = -1;
    int endpoint1 = -1;

    bool closed_mode() const { return endpoint0 < 0; }
};

struct StepTraceEntry {
    int step = 0;
    CellRef base_cell;
    int cycle_size = 0;    // |U| gathered over the cofaces
    int chain_size = 0;    // |W| solved (or assigned, step 0)
    uint64_t seed = 0;
};

struct StepTrace {
    std::vector<StepTraceEntry> entries;
    std::string to_json() const;
};

// Output of assemble_gamma. All product chains refer to `base_cone`
// (the cone over the input base complex; original cells keep their refs).
struct AssemblyResult {
    ProductChain gamma;  // X0 + w + X1 (or just w in closed mode)
    ProductChain w;
    ProductChain cap0;
    ProductChain cap1;
    SimplicialComplex base_cone;
    StepTrace trace;
};

// Step-by-step assembly over a sphere-like base complex: step 0 places the
// assigned fiber chains over top cells; step k gathers the previous step's
// chains over the cofaces of every codimension-k cell, checks that they
// cancel to a cycle, and fills the gap with a bounding chain from the
// (acyclic) fiber. Throws "fiber violates acyclicity hypothesis" when a pool
// complex is not acyclic, and "internal: cancellation failure" when a
// gathered chain fails to bound.
AssemblyResult assemble_gamma(const SimplicialComplex& base, const FiberAssignment& fibers,
                              uint64_t seed);

struct Lemma31Report {
    bool boundary_matches = false;   // d(w) == d(cap0) + d(cap1)
    bool gamma_closed = false;       // d(gamma) == 0
    bool support_in_fibers = false;  // every w cell lies over the base in its fiber complex
    bool all() const { return boundary_matches && gamma_closed && support_in_fibers; }
};

Lemma31Report verify_assembly(const AssemblyResult& result, const SimplicialComplex& base,
                              const FiberAssignment& fibers);

// Test/demo helper: a random acyclic fiber assignment over `base` (cones
// over random graphs, with randomly chosen distinct endpoint vertices and a
// random path per top cell). Deterministic in `seed`.
FiberAssignment random_fiber_assignment(const SimplicialComplex& base, uint64_t seed);

}  // namespace ivs
