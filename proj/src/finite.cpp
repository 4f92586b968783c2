#include "arboreal/finite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arboreal/error.hpp"
#include "arboreal/spectral.hpp"

namespace arboreal {

namespace {

// Union-find without path compression so unions can be undone in order.
class RollbackSets {
public:
    explicit RollbackSets(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int a) const {
        while (parent_[a] != a) a = parent_[a];
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        history_.push_back(b);
        return true;
    }
    void undo() {
        const int b = history_.back();
        history_.pop_back();
        size_[parent_[b]] -= size_[b];
        parent_[b] = b;
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<int> history_;
};

bool connected_using(int n, std::span<const GraphEdge> edges, std::span<const char> usable) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    int components = n;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!usable[i]) continue;
        const int a = find(edges[i].u), b = find(edges[i].v);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

}  // namespace

mpz_class spanning_tree_count(const FiniteGraph& input) {
    const FiniteGraph g = input.identify_boundary();
    const int n = g.vertex_count();
    if (n <= 1) return 1;
    if (!g.connected()) return 0;
    if (n > kExactCountMaxVertices)
        throw BudgetError("exact tree count limited to " + std::to_string(kExactCountMaxVertices) + " vertices");
    const int m = n - 1;  // ground vertex n-1
    std::vector<mpz_class> a(static_cast<std::size_t>(m) * m, 0);
    auto at = [&](int i, int j) -> mpz_class& { return a[static_cast<std::size_t>(i) * m + j]; };
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        if (e.u < m) at(e.u, e.u) += 1;
        if (e.v < m) at(e.v, e.v) += 1;
        if (e.u < m && e.v < m) {
            at(e.u, e.v) -= 1;
            at(e.v, e.u) -= 1;
        }
    }
    // Bareiss: every intermediate entry is a minor, hence an integer.  The
    // reduced Laplacian is positive definite, so no pivoting is needed.
    mpz_class prev = 1, t;
    for (int k = 0; k < m - 1; ++k) {
        const mpz_class& piv = at(k, k);
        for (int i = k + 1; i < m; ++i) {
            const bool zero_ik = sgn(at(i, k)) == 0;
            for (int j = k + 1; j < m; ++j) {
                if (zero_ik) {
                    at(i, j) *= piv;
                } else {
                    t = at(i, k) * at(k, j);
                    at(i, j) *= piv;
                    at(i, j) -= t;
                }
                mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = piv;
    }
    return at(m - 1, m - 1);
}

double spanning_tree_log_count(const FiniteGraph& input) {
    const FiniteGraph g = input.identify_boundary();
    const int n = g.vertex_count();
    if (n <= 1) return 0.0;
    if (!g.connected()) return -INFINITY;
    const int m = n - 1;
    Matrix lap(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (const auto& e : g.edges()) {
        if (e.is_loop()) continue;
        if (e.u < m) lap(e.u, e.u) += 1;
        if (e.v < m) lap(e.v, e.v) += 1;
        if (e.u < m && e.v < m) {
            lap(e.u, e.v) -= 1;
            lap(e.v, e.u) -= 1;
        }
    }
    return Cholesky(lap).log_determinant();
}

double torus_tree_count(const PeriodicLattice& lat, int n) {
    if (n <= 2 * lat.max_offset_norm())
        throw ValidationError("torus size must exceed twice the largest offset norm");
    const int d = lat.dim();
    const SymbolEvaluator q(lat);
    const double degree = q.degree();
    std::size_t cells = 1;
    for (int t = 0; t < d; ++t) cells *= static_cast<std::size_t>(n);
    std::vector<double> terms;
    terms.reserve(cells * static_cast<std::size_t>(lat.classes()));
    std::vector<double> alpha(static_cast<std::size_t>(d));
    CMatrix sym;
    for (std::size_t c = 0; c < cells; ++c) {
        std::size_t rest = c;
        for (int t = 0; t < d; ++t) {
            alpha[t] = static_cast<double>(rest % n) / n;
            rest /= n;
        }
        q.evaluate(alpha, sym);
        const auto eig = eigh(sym);
        // At alpha = 0 the top eigenvalue is the zero mode of the Laplacian.
        const std::size_t skip = (c == 0) ? 1 : 0;
        for (std::size_t i = 0; i + skip < eig.eigenvalues.size(); ++i)
            terms.push_back(std::log(degree * (1.0 - eig.eigenvalues[i])));
    }
    return pairwise_sum(terms) - std::log(static_cast<double>(lat.classes()) * static_cast<double>(cells));
}

std::vector<std::vector<int>> enumerate_spanning_trees(const FiniteGraph& input, std::size_t budget) {
    const FiniteGraph g = input.identify_boundary();
    const int n = g.vertex_count();
    std::vector<std::vector<int>> out;
    if (!g.connected()) return out;
    std::vector<int> ids;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!g.edge(e).is_loop()) ids.push_back(e);
    std::vector<GraphEdge> edges;
    for (int e : ids) edges.push_back(g.edge(e));
    std::vector<char> usable(edges.size(), 1);
    RollbackSets sets(n);
    std::vector<int> chosen;
    const std::size_t need = static_cast<std::size_t>(n - 1);

    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (chosen.size() == need) {
            if (out.size() >= budget) throw BudgetError("spanning tree enumeration budget exceeded");
            out.push_back(chosen);
            return;
        }
        if (pos == edges.size() || edges.size() - pos < need - chosen.size()) return;
        if (sets.unite(edges[pos].u, edges[pos].v)) {
            chosen.push_back(ids[pos]);
            self(self, pos + 1);
            chosen.pop_back();
            sets.undo();
        }
        usable[pos] = 0;
        if (connected_using(n, edges, usable)) self(self, pos + 1);
        usable[pos] = 1;
    };
    if (n == 1) {
        out.emplace_back();
        return out;
    }
    rec(rec, 0);
    return out;
}

SpanningTreeSample wilson_sample(const FiniteGraph& input, Philox& rng) {
    const FiniteGraph g = input.identify_boundary();
    const int n = g.vertex_count();
    if (!g.connected()) throw ValidationError("wilson_sample: graph is disconnected");
    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    std::vector<int> next_edge(static_cast<std::size_t>(n), -1);
    in_tree[0] = 1;
    SpanningTreeSample s;
    s.root = 0;
    for (int start = 1; start < n; ++start) {
        if (in_tree[start]) continue;
        // Random walk until the tree is hit, remembering the last exit edge
        // of each vertex; following those edges afterwards is the loop erasure.
        int v = start;
        while (!in_tree[v]) {
            const auto& inc = g.incident(v);
            const int e = inc[rng.below(static_cast<std::uint32_t>(inc.size()))];
            next_edge[v] = e;
            v = g.other_end(e, v);
        }
        for (v = start; !in_tree[v]; v = g.other_end(next_edge[v], v)) {
            in_tree[v] = 1;
            s.edges.push_back(next_edge[v]);
        }
    }
    std::sort(s.edges.begin(), s.edges.end());
    return s;
}

bool event_holds(std::span<const int> tree_edges, std::span<const EdgeRef> edges, const EdgeEvent& ev) {
    auto in_tree = [&](std::size_t i) {
        return std::binary_search(tree_edges.begin(), tree_edges.end(), edges[i].id);
    };
    for (std::size_t i : ev.include)
        if (!in_tree(i)) return false;
    for (std::size_t i : ev.exclude)
        if (in_tree(i)) return false;
    return true;
}

EstimateReport estimate_event(const FiniteGraph& g, std::span<const EdgeRef> edges, const EdgeEvent& ev,
                              std::size_t samples, std::uint64_t seed, int threads) {
    if (samples == 0) throw ValidationError("estimate_event: need at least one sample");
    for (std::size_t i : ev.include)
        if (i >= edges.size()) throw ValidationError("estimate_event: include index out of range");
    for (std::size_t i : ev.exclude)
        if (i >= edges.size()) throw ValidationError("estimate_event: exclude index out of range");
    const FiniteGraph h = g.identify_boundary();
    const auto hits = map_indices<char>(samples, threads, [&](std::size_t i) -> char {
        Philox rng(seed, i);
        return event_holds(wilson_sample(h, rng).edges, edges, ev) ? 1 : 0;
    });
    const auto count = static_cast<double>(std::count(hits.begin(), hits.end(), 1));
    EstimateReport r;
    r.samples = samples;
    r.seed = seed;
    r.estimate = count / static_cast<double>(samples);
    r.standard_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(samples));
    return r;
}

}  // namespace arboreal
