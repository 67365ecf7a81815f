#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ivs/simplicial_complex.hpp"

namespace ivs {

// Formal sum of k-cells with Z2 coefficients: a set of cell indices into a
// host complex, with symmetric-difference addition.
class Z2Chain {
public:
    Z2Chain() = default;
    explicit Z2Chain(int dim) : dim_(dim) {}
    Z2Chain(int dim, std::vector<int> cells);

    int dim() const { return dim_; }
    bool empty() const { return support_.empty(); }
    int size() const { return static_cast<int>(support_.size()); }
    const std::vector<int>& support() const { return support_; }
    bool contains(int cell) const;

    // Adding a cell twice removes it.
    void toggle(int cell);
    Z2Chain& operator+=(const Z2Chain& other);
    friend Z2Chain operator+(Z2Chain a, const Z2Chain& b) { return a += b; }
    bool operator==(const Z2Chain&) const = default;

private:
    int dim_ = 0;
    std::vector<int> support_;  // sorted, unique
};

using BettiVector = std::vector<int>;

// Simplicial boundary mod 2. Errors on 0-chains.
Z2Chain boundary(const SimplicialComplex& host, const Z2Chain& c);

// Unreduced Betti numbers b_0..b_dim over GF(2). Empty complex -> {}.
BettiVector betti(const SimplicialComplex& host);

// Non-empty with the homology of a point: b0 = 1 and b_k = 0 for k >= 1.
bool is_acyclic(const SimplicialComplex& host);

// True iff boundary(c) is empty. Errors on 0-chains like boundary.
bool is_cycle(const SimplicialComplex& host, const Z2Chain& c);

// Finds W with boundary(W) = u exactly, or nullopt when u is not a boundary.
// For u of dimension >= 1 the input must be a cycle (throws otherwise); for
// 0-chains the GF(2) system itself decides solvability. The seed permutes the
// candidate-cell order, selecting among equally valid solutions
// deterministically.
std::optional<Z2Chain> solve_bounding_chain(const SimplicialComplex& host, const Z2Chain& u,
                                            uint64_t seed);

// Rank of the k-th boundary matrix over GF(2). Exposed for diagnostics.
int boundary_rank(const SimplicialComplex& host, int k);

}  // namespace ivs
