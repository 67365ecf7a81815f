#include "ivs/product_chain.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace ivs {

void ProductChain::toggle(const ProductCell& cell) {
    if (cell.dim() != dim_) throw std::invalid_argument("product cell dimension mismatch");
    auto it = support_.find(cell);
    if (it != support_.end())
        support_.erase(it);
    else
        support_.insert(cell);
}

ProductChain& ProductChain::operator+=(const ProductChain& other) {
    if (other.empty()) return *this;
    if (empty()) {
        *this = other;
        return *this;
    }
    if (dim_ != other.dim_) throw std::invalid_argument("product chain dimension mismatch");
    for (const auto& cell : other.support_) toggle(cell);
    return *this;
}

ProductChain leibniz_boundary(const FiberPool& pool, const SimplicialComplex& base,
                              const ProductChain& p) {
    if (p.dim() < 1) throw std::invalid_argument("cannot take boundary of 0-dimensional product chain");
    ProductChain out(p.dim() - 1);
    for (const ProductCell& cell : p.support()) {
        const SimplicialComplex& fiber = pool.at(static_cast<size_t>(cell.fiber_complex));
        if (cell.fiber_dim >= 1) {
            for (int f : fiber.facets(cell.fiber_dim, cell.fiber_cell))
                out.toggle({cell.fiber_complex, cell.fiber_dim - 1, f, cell.base});
        }
        if (cell.base.dim >= 1) {
            for (int f : base.facets(cell.base.dim, cell.base.index))
                out.toggle({cell.fiber_complex, cell.fiber_dim, cell.fiber_cell,
                            CellRef{cell.base.dim - 1, f}});
        }
    }
    return out;
}

std::string StepTrace::to_json() const {
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        steps.push_back({{"step", e.step},
                         {"base_dim", e.base_cell.dim},
                         {"base_index", e.base_cell.index},
                         {"cycle_size", e.cycle_size},
                         {"chain_size", e.chain_size},
                         {"seed", e.seed}});
    }
    return nlohmann::ordered_json{{"entries", steps}}.dump(2);
}

namespace {

uint64_t cell_seed(uint64_t seed, int step, int index) {
    uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(step + 1));
    s ^= 0xc2b2ae3d27d4eb4fULL * static_cast<uint64_t>(index + 1);
    return splitmix64(s);
}

// Pool id per base cell, derived top-down; cells whose cofaces disagree are
// rejected, since chains from different fiber complexes cannot be summed.
std::vector<std::vector<int>> derive_pool_ids(const SimplicialComplex& base,
                                              const FiberAssignment& fibers) {
    const int d = base.dim();
    std::vector<std::vector<int>> id(static_cast<size_t>(d + 1));
    for (int k = 0; k <= d; ++k) id[static_cast<size_t>(k)].assign(static_cast<size_t>(base.num_cells(k)), -1);
    id[static_cast<size_t>(d)] = fibers.top_complex;
    for (int k = d - 1; k >= 0; --k) {
        for (int i = 0; i < base.num_cells(k); ++i) {
            int common = -1;
            for (const CellRef& cf : base.star({k, i})) {
                if (cf.dim != k + 1) continue;
                const int cf_id = id[static_cast<size_t>(k + 1)][static_cast<size_t>(cf.index)];
                if (common == -1) common = cf_id;
                if (cf_id != common)
                    throw std::invalid_argument("fiber complexes disagree across incident cells");
            }
            id[static_cast<size_t>(k)][static_cast<size_t>(i)] = common;
        }
    }
    return id;
}

void validate_assignment(const SimplicialComplex& base, const FiberAssignment& fibers) {
    const int d = base.dim();
    const size_t tops = static_cast<size_t>(base.num_cells(d));
    if (fibers.top_complex.size() != tops || fibers.top_chain.size() != tops)
        throw std::invalid_argument("fiber assignment does not cover the top cells");
    for (const SimplicialComplex& f : fibers.pool)
        if (!is_acyclic(f)) throw std::invalid_argument("fiber violates acyclicity hypothesis");
    if (!fibers.closed_mode() && fibers.endpoint0 == fibers.endpoint1)
        throw std::invalid_argument("endpoint vertices must differ");
    for (size_t i = 0; i < tops; ++i) {
        const int pid = fibers.top_complex[i];
        if (pid < 0 || pid >= static_cast<int>(fibers.pool.size()))
            throw std::invalid_argument("fiber complex id out of range");
        const SimplicialComplex& fiber = fibers.pool[static_cast<size_t>(pid)];
        const Z2Chain& chain = fibers.top_chain[i];
        if (fibers.closed_mode()) {
            if (chain.dim() != 0 || chain.size() != 1)
                throw std::invalid_argument("closed-mode assignments need single-point 0-chains");
        } else {
            if (chain.dim() != 1) throw std::invalid_argument("assigned chains must be paths");
            Z2Chain expected(0, {fibers.endpoint0, fibers.endpoint1});
            if (!(boundary(fiber, chain) == expected))
                throw std::invalid_argument("assigned path does not join the endpoint vertices");
        }
    }
}

}  // namespace

AssemblyResult assemble_gamma(const SimplicialComplex& base, const FiberAssignment& fibers,
                              uint64_t seed) {
    validate_assignment(base, fibers);
    const int d = base.dim();
    const bool closed = fibers.closed_mode();
    const int step0_dim = closed ? 0 : 1;
    const auto pool_ids = derive_pool_ids(base, fibers);

    AssemblyResult result;
    result.base_cone = cone(base);

    // step_chains[k][cell] = fiber chain built over base cell (d-k, cell).
    std::vector<std::vector<Z2Chain>> step_chains(static_cast<size_t>(d + 1));
    step_chains[0] = fibers.top_chain;
    for (size_t i = 0; i < fibers.top_chain.size(); ++i)
        result.trace.entries.push_back(
            {0, CellRef{d, static_cast<int>(i)}, 0, fibers.top_chain[i].size(), seed});

    for (int k = 1; k <= d; ++k) {
        const int cdim = d - k;
        step_chains[static_cast<size_t>(k)].assign(static_cast<size_t>(base.num_cells(cdim)),
                                                   Z2Chain(step0_dim + k));
        for (int m = 0; m < base.num_cells(cdim); ++m) {
            const int pid = pool_ids[static_cast<size_t>(cdim)][static_cast<size_t>(m)];
            const SimplicialComplex& fiber = fibers.pool[static_cast<size_t>(pid)];
            Z2Chain gathered(step0_dim + k - 1);
            for (const CellRef& cf : base.star({cdim, m})) {
                if (cf.dim != cdim + 1) continue;
                gathered += step_chains[static_cast<size_t>(k - 1)][static_cast<size_t>(cf.index)];
            }
            // The construction guarantees cancellation: every deeper coface is
            // counted an even number of times. Anything else is a bug.
            if (gathered.dim() >= 1 && !is_cycle(fiber, gathered))
                throw std::runtime_error("internal: cancellation failure");
            if (gathered.dim() == 0 && gathered.size() % 2 != 0)
                throw std::runtime_error("internal: cancellation failure");
            const uint64_t s = cell_seed(seed, k, m);
            auto filled = solve_bounding_chain(fiber, gathered, s);
            if (!filled) throw std::runtime_error("internal: cancellation failure");
            step_chains[static_cast<size_t>(k)][static_cast<size_t>(m)] = *filled;
            result.trace.entries.push_back({k, CellRef{cdim, m}, gathered.size(), filled->size(), s});
        }
    }

    const int product_dim = closed ? d : d + 1;
    result.w = ProductChain(product_dim);
    for (int k = 0; k <= d; ++k) {
        const int cdim = d - k;
        for (int m = 0; m < base.num_cells(cdim); ++m) {
            const Z2Chain& chain = step_chains[static_cast<size_t>(k)][static_cast<size_t>(m)];
            const int pid = pool_ids[static_cast<size_t>(cdim)][static_cast<size_t>(m)];
            for (int fc : chain.support())
                result.w.toggle({pid, chain.dim(), fc, CellRef{cdim, m}});
        }
    }

    result.cap0 = ProductChain(product_dim);
    result.cap1 = ProductChain(product_dim);
    if (!closed) {
        const int apex = base.num_vertices();
        for (int m = 0; m < base.num_cells(d); ++m) {
            auto verts = base.cell(d, m);
            verts.push_back(apex);
            const auto cone_idx = result.base_cone.index_of(d + 1, verts);
            if (!cone_idx) throw std::logic_error("cone cell missing");
            const int pid = fibers.top_complex[static_cast<size_t>(m)];
            result.cap0.toggle({pid, 0, fibers.endpoint0, CellRef{d + 1, *cone_idx}});
            result.cap1.toggle({pid, 0, fibers.endpoint1, CellRef{d + 1, *cone_idx}});
        }
    }
    result.gamma = result.cap0 + result.w + result.cap1;
    return result;
}

Lemma31Report verify_assembly(const AssemblyResult& result, const SimplicialComplex& base,
                              const FiberAssignment& fibers) {
    Lemma31Report report;
    const ProductChain dw = leibniz_boundary(fibers.pool, result.base_cone, result.w);
    const ProductChain dcaps = leibniz_boundary(fibers.pool, result.base_cone, result.cap0) +
                               leibniz_boundary(fibers.pool, result.base_cone, result.cap1);
    report.boundary_matches = (dw == dcaps);
    report.gamma_closed = leibniz_boundary(fibers.pool, result.base_cone, result.gamma).empty();

    report.support_in_fibers = true;
    for (const ProductCell& cell : result.w.support()) {
        const bool base_ok = cell.base.dim >= 0 && cell.base.dim <= base.dim() &&
                             cell.base.index < base.num_cells(cell.base.dim);
        const bool pool_ok = cell.fiber_complex >= 0 &&
                             cell.fiber_complex < static_cast<int>(fibers.pool.size());
        const bool fiber_ok =
            pool_ok && cell.fiber_cell >= 0 &&
            cell.fiber_cell <
                fibers.pool[static_cast<size_t>(cell.fiber_complex)].num_cells(cell.fiber_dim);
        if (!base_ok || !fiber_ok) {
            report.support_in_fibers = false;
            break;
        }
    }
    return report;
}

namespace {

// Randomized simple path between two vertices of a 1-skeleton (DFS with
// seeded neighbor order). The fibers used here are cones, hence connected.
std::vector<int> random_vertex_path(const SimplicialComplex& fiber, int from, int to,
                                    uint64_t& state) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(fiber.num_vertices()));
    for (int e = 0; e < fiber.num_cells(1); ++e) {
        const auto& verts = fiber.cell(1, e);
        adj[static_cast<size_t>(verts[0])].push_back(verts[1]);
        adj[static_cast<size_t>(verts[1])].push_back(verts[0]);
    }
    std::vector<bool> visited(static_cast<size_t>(fiber.num_vertices()), false);
    std::vector<int> path;
    auto dfs = [&](auto&& self, int at) -> bool {
        visited[static_cast<size_t>(at)] = true;
        path.push_back(at);
        if (at == to) return true;
        auto order = adj[static_cast<size_t>(at)];
        for (size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[splitmix64(state) % i]);
        for (int next : order)
            if (!visited[static_cast<size_t>(next)] && self(self, next)) return true;
        path.pop_back();
        return false;
    };
    if (!dfs(dfs, from)) throw std::logic_error("fiber not connected");
    return path;
}

Z2Chain path_to_chain(const SimplicialComplex& fiber, const std::vector<int>& vertices) {
    Z2Chain chain(1);
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
        std::vector<int> edge = {vertices[i], vertices[i + 1]};
        std::sort(edge.begin(), edge.end());
        const auto idx = fiber.index_of(1, edge);
        if (!idx) throw std::logic_error("path edge missing");
        chain.toggle(*idx);
    }
    return chain;
}

SimplicialComplex random_cone_fiber(uint64_t& state) {
    const int verts = 6 + static_cast<int>(splitmix64(state) % 5);
    SimplicialComplex graph(verts);
    for (int i = 0; i < verts; ++i)
        for (int j = i + 1; j < verts; ++j)
            if (splitmix64(state) % 100 < 40) graph.add_cell({i, j});
    return cone(graph);
}

}  // namespace

FiberAssignment random_fiber_assignment(const SimplicialComplex& base, uint64_t seed) {
    uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 1;
    FiberAssignment fibers;
    fibers.pool.push_back(random_cone_fiber(state));
    const SimplicialComplex& fiber = fibers.pool.front();
    const int non_apex = fiber.num_vertices() - 1;
    fibers.endpoint0 = static_cast<int>(splitmix64(state) % static_cast<uint64_t>(non_apex));
    do {
        fibers.endpoint1 = static_cast<int>(splitmix64(state) % static_cast<uint64_t>(non_apex));
    } while (fibers.endpoint1 == fibers.endpoint0);

    const int tops = base.num_cells(base.dim());
    for (int m = 0; m < tops; ++m) {
        fibers.top_complex.push_back(0);
        fibers.top_chain.push_back(
            path_to_chain(fiber, random_vertex_path(fiber, fibers.endpoint0, fibers.endpoint1, state)));
    }
    return fibers;
}

}  // namespace ivs
