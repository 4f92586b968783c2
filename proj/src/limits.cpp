#include "arboreal/limits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "arboreal/error.hpp"
#include "arboreal/finite.hpp"
#include "arboreal/marginals.hpp"
#include "arboreal/quadrature.hpp"

namespace arboreal {

namespace {

constexpr int kMaxChildren = 20;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw BudgetError("tree map count overflows 64 bits");
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw BudgetError("tree map count overflows 64 bits");
    return r;
}

TreeMomentEstimate summarize(const RootedTree& t, std::span<const std::uint64_t> counts) {
    const double n = static_cast<double>(counts.size());
    double mean = 0.0;
    for (auto c : counts) mean += static_cast<double>(c);
    mean /= n;
    double ss = 0.0;
    for (auto c : counts) ss += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
    TreeMomentEstimate e;
    e.tree = t.to_string();
    e.size = t.size();
    e.estimate = mean;
    e.standard_error = counts.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return e;
}

int panel_height(std::span<const RootedTree> panel) {
    int h = 0;
    for (const auto& t : panel) h = std::max(h, t.height());
    return h;
}

// Per-sample counts for every panel tree, then one summary per tree.
template <class Sampler>
std::vector<TreeMomentEstimate> tree_moments(std::span<const RootedTree> panel, std::size_t samples,
                                             std::uint64_t seed, int threads, Sampler&& sample) {
    if (samples == 0) throw ValidationError("tree moments: need at least one sample");
    const auto rows = map_indices<std::vector<std::uint64_t>>(samples, threads, [&](std::size_t i) {
        Philox rng(seed, i);
        const RootedTree u = sample(rng);
        std::vector<std::uint64_t> c;
        for (const auto& t : panel) c.push_back(tree_map_count(u, t));
        return c;
    });
    std::vector<TreeMomentEstimate> out;
    std::vector<std::uint64_t> column(samples);
    for (std::size_t j = 0; j < panel.size(); ++j) {
        for (std::size_t i = 0; i < samples; ++i) column[i] = rows[i][j];
        out.push_back(summarize(panel[j], column));
    }
    return out;
}

}  // namespace

RootedTree::RootedTree(std::vector<int> parents) : parent_(std::move(parents)) {
    if (parent_.empty() || parent_[0] != -1) throw ValidationError("rooted tree: vertex 0 must be the root");
    children_.assign(parent_.size(), {});
    depth_.assign(parent_.size(), 0);
    for (std::size_t v = 1; v < parent_.size(); ++v) {
        const int p = parent_[v];
        if (p < 0 || static_cast<std::size_t>(p) >= v)
            throw ValidationError("rooted tree: parents must precede their children");
        children_[static_cast<std::size_t>(p)].push_back(static_cast<int>(v));
        depth_[v] = depth_[static_cast<std::size_t>(p)] + 1;
    }
}

RootedTree RootedTree::path(int vertices) {
    if (vertices < 1) throw ValidationError("path: need at least one vertex");
    std::vector<int> p{-1};
    for (int v = 1; v < vertices; ++v) p.push_back(v - 1);
    return RootedTree(std::move(p));
}

RootedTree RootedTree::star(int leaves) {
    if (leaves < 0) throw ValidationError("star: negative leaf count");
    std::vector<int> p{-1};
    for (int v = 0; v < leaves; ++v) p.push_back(0);
    return RootedTree(std::move(p));
}

int RootedTree::height() const { return *std::max_element(depth_.begin(), depth_.end()); }

int RootedTree::add_child(int v) {
    if (v < 0 || v >= size()) throw ValidationError("rooted tree: no such vertex");
    const int c = size();
    parent_.push_back(v);
    children_.emplace_back();
    children_[static_cast<std::size_t>(v)].push_back(c);
    depth_.push_back(depth_[static_cast<std::size_t>(v)] + 1);
    return c;
}

RootedTree RootedTree::truncated(int r) const {
    std::vector<int> keep(parent_.size(), -1);
    std::vector<int> p;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
        if (depth_[v] > r) continue;
        keep[v] = static_cast<int>(p.size());
        p.push_back(v == 0 ? -1 : keep[static_cast<std::size_t>(parent_[v])]);
    }
    return RootedTree(std::move(p));
}

std::string RootedTree::to_string() const {
    std::string s;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
        if (v) s += ',';
        s += std::to_string(parent_[v]);
    }
    return s;
}

std::uint64_t tree_map_count(const RootedTree& u, const RootedTree& t) {
    if (t.size() > u.size() || t.height() > u.height()) return 0;
    // In a tree the parent of f(x) is f(parent(x)), already used, so children
    // of x go to distinct children of f(x).
    std::function<std::uint64_t(int, int)> count = [&](int a, int x) -> std::uint64_t {
        const auto& cx = t.children(x);
        const auto& ca = u.children(a);
        if (cx.empty()) return 1;
        if (cx.size() > ca.size()) return 0;
        if (cx.size() > static_cast<std::size_t>(kMaxChildren)) throw BudgetError("tree map count: too many children");
        const std::size_t full = (std::size_t{1} << cx.size()) - 1;
        std::vector<std::uint64_t> dp(full + 1, 0), next;
        dp[0] = 1;
        for (int b : ca) {
            std::vector<std::uint64_t> sub(cx.size());
            for (std::size_t i = 0; i < cx.size(); ++i) sub[i] = count(b, cx[i]);
            next = dp;
            for (std::size_t mask = 0; mask <= full; ++mask) {
                if (dp[mask] == 0) continue;
                for (std::size_t i = 0; i < cx.size(); ++i)
                    if (!(mask >> i & 1U) && sub[i] != 0)
                        next[mask | (std::size_t{1} << i)] =
                            checked_add(next[mask | (std::size_t{1} << i)], checked_mul(dp[mask], sub[i]));
            }
            dp.swap(next);
        }
        return dp[full];
    };
    return count(0, 0);
}

std::uint64_t tree_map_count(const FiniteGraph& u, int root, const RootedTree& t) {
    const int n = u.vertex_count();
    if (root < 0 || root >= n) throw ValidationError("tree map count: root out of range");
    if (t.size() > n) return 0;
    std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
    for (const auto& e : u.edges()) {
        if (e.is_loop()) continue;
        nbrs[static_cast<std::size_t>(e.u)].push_back(e.v);
        nbrs[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& l : nbrs) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    std::vector<int> image(static_cast<std::size_t>(t.size()), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    image[0] = root;
    used[static_cast<std::size_t>(root)] = 1;
    // Parents precede children in the vertex order.
    std::function<std::uint64_t(int)> rec = [&](int x) -> std::uint64_t {
        if (x == t.size()) return 1;
        std::uint64_t total = 0;
        for (int w : nbrs[static_cast<std::size_t>(image[static_cast<std::size_t>(t.parent(x))])]) {
            if (used[static_cast<std::size_t>(w)]) continue;
            used[static_cast<std::size_t>(w)] = 1;
            image[static_cast<std::size_t>(x)] = w;
            total = checked_add(total, rec(x + 1));
            used[static_cast<std::size_t>(w)] = 0;
        }
        return total;
    };
    return rec(1);
}

RootedTree rooted_tree_from_edges(const FiniteGraph& g, std::span<const int> edge_ids, int root, int max_depth) {
    const int n = g.vertex_count();
    if (root < 0 || root >= n) throw ValidationError("rooted tree: root out of range");
    std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
    for (int id : edge_ids) {
        const auto& e = g.edge(id);
        if (e.is_loop()) continue;
        nbrs[static_cast<std::size_t>(e.u)].push_back(e.v);
        nbrs[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    RootedTree t;
    std::vector<int> node(static_cast<std::size_t>(n), -1);
    node[static_cast<std::size_t>(root)] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        const int a = q.front();
        q.pop();
        const int ta = node[static_cast<std::size_t>(a)];
        if (t.depth(ta) >= max_depth) continue;
        for (int b : nbrs[static_cast<std::size_t>(a)]) {
            if (node[static_cast<std::size_t>(b)] >= 0) continue;
            node[static_cast<std::size_t>(b)] = t.add_child(ta);
            q.push(b);
        }
    }
    return t;
}

namespace {

void grow_gw(RootedTree& t, int start, int r, Philox& rng) {
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        if (t.depth(v) >= r) continue;
        const int kids = rng.poisson(1.0);
        for (int c = 0; c < kids; ++c) q.push(t.add_child(v));
    }
}

}  // namespace

RootedTree sample_gw_tree(int r, Philox& rng) {
    if (r < 0) throw ValidationError("gw tree: negative height");
    RootedTree t;
    grow_gw(t, 0, r, rng);
    return t;
}

RootedTree sample_poisson1_tree(int r, Philox& rng) {
    if (r < 0) throw ValidationError("poisson tree: negative height");
    RootedTree t;
    std::vector<int> spine{0};
    for (int i = 1; i <= r; ++i) spine.push_back(t.add_child(spine.back()));
    for (int i = 0; i < r; ++i) {
        const int kids = rng.poisson(1.0);
        for (int c = 0; c < kids; ++c) grow_gw(t, t.add_child(spine[static_cast<std::size_t>(i)]), r, rng);
    }
    return t;
}

MomentReport factorial_moments_degree(const FiniteGraph& g, int v, int s_max, std::size_t subset_cap) {
    if (v < 0 || v >= g.vertex_count()) throw ValidationError("moments: vertex out of range");
    if (s_max < 1) throw ValidationError("moments: s_max must be positive");
    std::vector<EdgeRef> edges;
    double lambda = 0.0;
    for (int id : g.incident(v)) {
        const auto& e = g.edge(id);
        if (e.is_loop()) continue;
        edges.push_back({id, e.u != v});
        lambda += 1.0 / g.non_loop_degree(g.other_end(id, v));
    }
    const std::size_t m = edges.size();
    // C(m, s) subsets for each s.
    std::size_t total = 0;
    for (int s = 1; s <= s_max; ++s) {
        double c = 1.0;
        for (int i = 0; i < s; ++i) c = c * static_cast<double>(m - static_cast<std::size_t>(i)) / (i + 1);
        if (s > static_cast<int>(m)) c = 0.0;
        total += static_cast<std::size_t>(c);
        if (c > static_cast<double>(subset_cap) || total > subset_cap)
            throw BudgetError("moments: more than " + std::to_string(subset_cap) + " edge subsets");
    }
    const auto tm = build_matrix(g, edges);

    MomentReport r;
    r.family = "graph";
    r.n = g.vertex_count();
    r.lambda = lambda;
    for (int s = 1; s <= s_max; ++s) {
        double sum = 0.0;
        if (s <= static_cast<int>(m)) {
            std::vector<std::size_t> idx(static_cast<std::size_t>(s));
            for (int i = 0; i < s; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
            Matrix sub(static_cast<std::size_t>(s), static_cast<std::size_t>(s));
            std::vector<double> terms;
            while (true) {
                for (int a = 0; a < s; ++a)
                    for (int b = 0; b < s; ++b)
                        sub(a, b) = tm.m(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
                terms.push_back(determinant(sub));
                int pos = s - 1;
                while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - static_cast<std::size_t>(s - pos)) --pos;
                if (pos < 0) break;
                ++idx[static_cast<std::size_t>(pos)];
                for (int q = pos + 1; q < s; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
            }
            sum = pairwise_sum(terms);
            for (int f = 2; f <= s; ++f) sum *= f;
        }
        r.s.push_back(s);
        r.moments.push_back(sum);
        const double target = std::pow(lambda, s) + s * std::pow(lambda, s - 1);
        r.targets.push_back(target);
        r.deviations.push_back(sum - target);
    }
    return r;
}

FiniteGraph complete_graph(int n) {
    if (n < 1) throw ValidationError("complete graph: need at least one vertex");
    std::vector<GraphEdge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) edges.push_back({a, b});
    return FiniteGraph(n, std::move(edges));
}

FiniteGraph counterexample_graph(int k) {
    if (k < 1) throw ValidationError("counterexample: k must be positive");
    const int z_per = 4 * k;
    auto x = [&](int i) { return 1 + i; };
    auto y = [&](int i) { return 1 + k + i; };
    auto z = [&](int i, int j) { return 1 + 2 * k + i * z_per + j; };
    std::vector<GraphEdge> edges;
    for (int i = 0; i < k; ++i) {
        edges.push_back({0, x(i)});
        edges.push_back({0, y(i)});
        for (int j = 0; j < z_per; ++j) {
            edges.push_back({x(i), z(i, j)});
            edges.push_back({y(i), z(i, j)});
        }
    }
    return FiniteGraph(1 + 2 * k + k * z_per, std::move(edges));
}

std::vector<RootedTree> tree_panel() {
    return {RootedTree::single_vertex(), RootedTree::path(2), RootedTree::path(3), RootedTree::star(2),
            RootedTree({-1, 0, 0, 1, 2})};
}

std::vector<TreeMomentEstimate> tree_moments_ust(const FiniteGraph& g, int v, std::span<const RootedTree> panel,
                                                 std::size_t samples, std::uint64_t seed, int threads) {
    const int h = panel_height(panel);
    return tree_moments(panel, samples, seed, threads, [&](Philox& rng) {
        return rooted_tree_from_edges(g, wilson_sample(g, rng).edges, v, h);
    });
}

std::vector<TreeMomentEstimate> tree_moments_gw(int r, std::span<const RootedTree> panel, std::size_t samples,
                                                std::uint64_t seed, int threads) {
    return tree_moments(panel, samples, seed, threads, [&](Philox& rng) { return sample_gw_tree(r, rng); });
}

std::vector<TreeMomentEstimate> tree_moments_poisson1(int r, std::span<const RootedTree> panel,
                                                      std::size_t samples, std::uint64_t seed, int threads) {
    return tree_moments(panel, samples, seed, threads, [&](Philox& rng) { return sample_poisson1_tree(r, rng); });
}

std::vector<PoissonLimitRow> poisson_limit_report(std::span<const int> ns, int s_max,
                                                  std::span<const RootedTree> panel, std::size_t samples,
                                                  std::uint64_t seed, int threads) {
    std::vector<PoissonLimitRow> out;
    for (int n : ns) {
        if (n < 2 || n > 400) throw ValidationError("poisson limit: n must lie in [2, 400]");
        const auto g = complete_graph(n);
        PoissonLimitRow row;
        row.moments = factorial_moments_degree(g, 0, s_max);
        row.moments.family = "complete";
        if (samples > 0) row.trees = tree_moments_ust(g, 0, panel, samples, seed, threads);
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace arboreal
