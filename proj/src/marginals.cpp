#include "arboreal/marginals.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "arboreal/error.hpp"

namespace arboreal {

namespace {

constexpr std::size_t kMaxSubsetEdges = 20;

void reject_duplicates(std::span<const LatticeEdge> edges) {
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (edges[i] == edges[j] || edges[i] == edges[j].reversed())
                throw ValidationError("duplicate edge in request: " + format_edge(edges[i]));
}

std::vector<std::string> labels_of(std::span<const LatticeEdge> edges) {
    std::vector<std::string> out;
    for (const auto& e : edges) out.push_back(format_edge(e));
    return out;
}

}  // namespace

EdgeEvent EdgeEvent::all_included(std::size_t n) {
    EdgeEvent ev;
    ev.include.resize(n);
    std::iota(ev.include.begin(), ev.include.end(), std::size_t{0});
    return ev;
}

TransferMatrix build_matrix(const PeriodicLattice& lat, std::span<const LatticeEdge> edges,
                            const QuadratureSpec& spec) {
    reject_duplicates(edges);
    auto im = transfer_impedance_matrix(lat, edges, edges, spec);
    if (!im.converged)
        throw ConvergenceError("transfer impedance quadrature did not reach tolerance", im.error_estimate);
    return {std::move(im.values), im.error_estimate, labels_of(edges)};
}

TransferMatrix build_matrix_z2(std::span<const LatticeEdge> edges) {
    reject_duplicates(edges);
    return {z2_impedance_matrix(edges), 0.0, labels_of(edges)};
}

TransferMatrix build_matrix(const FiniteGraph& g, std::span<const EdgeRef> edges) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].id < 0 || edges[i].id >= g.edge_count()) throw ValidationError("edge id out of range");
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (edges[i].id == edges[j].id)
                throw ValidationError("duplicate edge in request: " + std::to_string(edges[i].id));
    }
    TransferMatrix tm;
    tm.m = FiniteGreen(g).impedance_matrix(edges);
    for (const auto& e : edges)
        tm.labels.push_back(std::to_string(e.tail(g)) + ":" + std::to_string(e.head(g)) + "#" + std::to_string(e.id));
    return tm;
}

EventProbability event_probability(const TransferMatrix& tm, const EdgeEvent& ev) {
    const std::size_t n = tm.size();
    std::vector<int> role(n, 0);
    for (std::size_t i : ev.exclude) {
        if (i >= n || role[i] != 0) throw ValidationError("event: bad or repeated exclude index");
        role[i] = -1;
    }
    for (std::size_t i : ev.include) {
        if (i >= n || role[i] != 0) throw ValidationError("event: bad or repeated include index");
        role[i] = 1;
    }
    if (std::find(role.begin(), role.end(), 0) != role.end())
        throw ValidationError("event: every edge must be either included or excluded");
    Matrix m = tm.m;
    for (std::size_t i = 0; i < n; ++i) {
        if (role[i] != -1) continue;
        for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? 1.0 : 0.0) - m(i, j);
    }
    const double raw = determinant(m);
    return {raw, std::clamp(raw, 0.0, 1.0)};
}

std::vector<double> count_distribution(const TransferMatrix& tm) {
    const std::size_t n = tm.size();
    if (n > kMaxSubsetEdges)
        throw BudgetError("count distribution: at most " + std::to_string(kMaxSubsetEdges) + " edges");
    std::vector<double> p(n + 1, 0.0);
    Matrix m(n, n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) {
            const bool in = (mask >> i) & 1U;
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = in ? tm.m(i, j) : (i == j ? 1.0 : 0.0) - tm.m(i, j);
        }
        p[static_cast<std::size_t>(std::popcount(mask))] += determinant(m);
    }
    return p;
}

DegreeDistribution degree_distribution(const PeriodicLattice& lat, const LatticeVertex& v,
                                       const QuadratureSpec& spec) {
    const auto edges = lat.incident_edges(v);
    const auto tm = build_matrix(lat, edges, spec);
    // Each determinant is a polynomial in the entries; propagate the entry
    // error bound crudely through the 2^n terms.
    return {count_distribution(tm), tm.error_estimate * static_cast<double>(edges.size())};
}

DegreeDistribution degree_distribution_z2(const LatticeVertex& v) {
    const auto edges = lattices::square().incident_edges(v);
    return {count_distribution(build_matrix_z2(edges)), 0.0};
}

DegreeDistribution degree_distribution(const FiniteGraph& g, int v) {
    std::vector<EdgeRef> edges;
    for (int id : g.incident(v)) {
        const auto& e = g.edge(id);
        if (e.is_loop()) continue;
        edges.push_back({id, e.u != v});
    }
    return {count_distribution(build_matrix(g, edges)), 0.0};
}

TreeDeterminant tree_structured_det(std::span<const double> weights, std::span<const GraphEdge> shape) {
    const std::size_t vertices = weights.size();
    if (vertices < 2 || shape.size() + 1 != vertices)
        throw ValidationError("tree determinant: need k edges on k+1 vertices");
    for (double a : weights)
        if (!(a > 0.0)) throw ValidationError("tree determinant: weights must be positive");
    std::vector<int> parent(vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& e : shape) {
        if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= vertices ||
            static_cast<std::size_t>(e.v) >= vertices)
            throw ValidationError("tree determinant: vertex out of range");
        const int a = find(e.u), b = find(e.v);
        if (a == b) throw ValidationError("tree determinant: shape is not a tree");
        parent[a] = b;
    }
    const std::size_t k = shape.size();
    TreeDeterminant out;
    out.matrix = Matrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        out.matrix(i, i) = weights[shape[i].u] + weights[shape[i].v];
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            for (int r : {shape[i].u, shape[i].v})
                if (r == shape[j].u || r == shape[j].v) out.matrix(i, j) = weights[r];
        }
    }
    double prod = 1.0, inv_sum = 0.0;
    for (double a : weights) {
        prod *= a;
        inv_sum += 1.0 / a;
    }
    out.closed_form = prod * inv_sum;
    out.direct = determinant(out.matrix);
    return out;
}

}  // namespace arboreal
