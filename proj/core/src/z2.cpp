#include "ivs/z2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ivs {

namespace {

// Column bitset over row indices, packed 64 per word.
struct BitColumn {
    std::vector<uint64_t> words;

    explicit BitColumn(size_t rows = 0) : words((rows + 63) / 64, 0) {}
    void set(int row) { words[static_cast<size_t>(row) / 64] ^= 1ULL << (row % 64); }
    bool any() const {
        for (uint64_t w : words)
            if (w) return true;
        return false;
    }
    int low() const {  // highest set row, -1 when empty
        for (size_t i = words.size(); i-- > 0;)
            if (words[i]) return static_cast<int>(i * 64 + 63 - std::countl_zero(words[i]));
        return -1;
    }
    void operator^=(const BitColumn& o) {
        for (size_t i = 0; i < words.size(); ++i) words[i] ^= o.words[i];
    }
};

// Left-to-right column reduction of a GF(2) matrix given as columns.
// Returns the rank; when `combos` is non-null, tracks for every processed
// column the set of original columns summed into it, so that a right-hand
// side reduced against the pivots yields an explicit solution.
struct ColumnReduction {
    std::vector<BitColumn> reduced;
    std::vector<std::vector<int>> combo;  // original column indices, xor-set
    std::vector<int> pivot_col;           // low row -> index into `reduced`
    size_t rows;

    ColumnReduction(size_t rows_, size_t cols) : rows(rows_), pivot_col(rows_, -1) {
        reduced.reserve(cols);
        combo.reserve(cols);
    }

    // Reduces `col` (xor-ing combo sets into `who`) until its low row is
    // unclaimed or it vanishes. Returns true when a new pivot was added.
    bool add_column(BitColumn col, std::vector<int> who) {
        for (int lw = col.low(); lw >= 0; lw = col.low()) {
            const int other = pivot_col[static_cast<size_t>(lw)];
            if (other < 0) {
                pivot_col[static_cast<size_t>(lw)] = static_cast<int>(reduced.size());
                reduced.push_back(std::move(col));
                combo.push_back(std::move(who));
                return true;
            }
            col ^= reduced[static_cast<size_t>(other)];
            xor_set(who, combo[static_cast<size_t>(other)]);
        }
        return false;
    }

    // Reduces a right-hand side; empty optional when inconsistent.
    std::optional<std::vector<int>> solve(BitColumn rhs) const {
        std::vector<int> who;
        for (int lw = rhs.low(); lw >= 0; lw = rhs.low()) {
            const int other = pivot_col[static_cast<size_t>(lw)];
            if (other < 0) return std::nullopt;
            rhs ^= reduced[static_cast<size_t>(other)];
            xor_set(who, combo[static_cast<size_t>(other)]);
        }
        return who;
    }

    static void xor_set(std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> out;
        out.reserve(a.size() + b.size());
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        a = std::move(out);
    }
};

BitColumn facet_column(const SimplicialComplex& host, int k, int cell, size_t rows) {
    BitColumn col(rows);
    for (int f : host.facets(k, cell)) col.set(f);
    return col;
}

// Deterministic Fisher-Yates; avoids std::shuffle so results are identical
// across standard-library implementations.
std::vector<int> seeded_order(int count, uint64_t seed) {
    std::vector<int> order(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) order[static_cast<size_t>(i)] = i;
    uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x4242424242ULL;
    for (int i = count - 1; i > 0; --i) {
        const int j = static_cast<int>(splitmix64(state) % static_cast<uint64_t>(i + 1));
        std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
    }
    return order;
}

}  // namespace

Z2Chain::Z2Chain(int dim, std::vector<int> cells) : dim_(dim) {
    for (int c : cells) toggle(c);
}

bool Z2Chain::contains(int cell) const {
    return std::binary_search(support_.begin(), support_.end(), cell);
}

void Z2Chain::toggle(int cell) {
    auto it = std::lower_bound(support_.begin(), support_.end(), cell);
    if (it != support_.end() && *it == cell)
        support_.erase(it);
    else
        support_.insert(it, cell);
}

Z2Chain& Z2Chain::operator+=(const Z2Chain& other) {
    if (other.empty()) return *this;
    if (empty()) {
        *this = other;
        return *this;
    }
    if (dim_ != other.dim_) throw std::invalid_argument("chain dimension mismatch");
    std::vector<int> out;
    out.reserve(support_.size() + other.support_.size());
    std::set_symmetric_difference(support_.begin(), support_.end(), other.support_.begin(),
                                  other.support_.end(), std::back_inserter(out));
    support_ = std::move(out);
    return *this;
}

Z2Chain boundary(const SimplicialComplex& host, const Z2Chain& c) {
    if (c.dim() < 1) throw std::invalid_argument("cannot take boundary of 0-chain");
    Z2Chain out(c.dim() - 1);
    for (int idx : c.support()) {
        if (idx < 0 || idx >= host.num_cells(c.dim()))
            throw std::out_of_range("cell out of range");
        for (int f : host.facets(c.dim(), idx)) out.toggle(f);
    }
    return out;
}

int boundary_rank(const SimplicialComplex& host, int k) {
    if (k <= 0 || k > host.dim()) return 0;
    const size_t rows = static_cast<size_t>(host.num_cells(k - 1));
    ColumnReduction red(rows, static_cast<size_t>(host.num_cells(k)));
    int rank = 0;
    for (int c = 0; c < host.num_cells(k); ++c)
        if (red.add_column(facet_column(host, k, c, rows), {})) ++rank;
    return rank;
}

BettiVector betti(const SimplicialComplex& host) {
    BettiVector out;
    if (host.empty()) return out;
    out.resize(static_cast<size_t>(host.dim() + 1));
    for (int k = 0; k <= host.dim(); ++k) {
        const int cycles = host.num_cells(k) - boundary_rank(host, k);
        out[static_cast<size_t>(k)] = cycles - boundary_rank(host, k + 1);
    }
    return out;
}

bool is_acyclic(const SimplicialComplex& host) {
    const BettiVector b = betti(host);
    if (b.empty() || b[0] != 1) return false;
    for (size_t k = 1; k < b.size(); ++k)
        if (b[k] != 0) return false;
    return true;
}

bool is_cycle(const SimplicialComplex& host, const Z2Chain& c) {
    return boundary(host, c).empty();
}

std::optional<Z2Chain> solve_bounding_chain(const SimplicialComplex& host, const Z2Chain& u,
                                            uint64_t seed) {
    if (u.dim() >= 1 && !is_cycle(host, u)) throw std::invalid_argument("input chain is not a cycle");
    const int k = u.dim();
    if (u.empty()) return Z2Chain(k + 1);
    if (k + 1 > host.dim()) return std::nullopt;

    const size_t rows = static_cast<size_t>(host.num_cells(k));
    const int cols = host.num_cells(k + 1);
    ColumnReduction red(rows, static_cast<size_t>(cols));
    for (int c : seeded_order(cols, seed))
        red.add_column(facet_column(host, k + 1, c, rows), {c});

    BitColumn rhs(rows);
    for (int cellidx : u.support()) {
        if (cellidx < 0 || cellidx >= host.num_cells(k)) throw std::out_of_range("cell out of range");
        rhs.set(cellidx);
    }
    auto combo = red.solve(std::move(rhs));
    if (!combo) return std::nullopt;
    Z2Chain w(k + 1, std::move(*combo));
    return w;
}

}  // namespace ivs
