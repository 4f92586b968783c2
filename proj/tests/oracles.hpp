#pragma once

// Independent reference computations used by the tests.  Nothing here calls
// into the library's numerical routines; only its plain data types are used.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "arboreal/lattice.hpp"

namespace oracle {

using arboreal::FiniteGraph;
using arboreal::GraphEdge;

inline constexpr double pi = std::numbers::pi;

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    }
    bool join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

// All spanning trees by scanning every (n-1)-subset of edges.
inline std::vector<std::vector<int>> all_spanning_trees(const FiniteGraph& g) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    std::vector<std::vector<int>> trees;
    if (n == 1) return {{}};
    for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
        if (std::popcount(mask) != n - 1) continue;
        Dsu d(n);
        bool ok = true;
        std::vector<int> ids;
        for (int e = 0; e < m && ok; ++e) {
            if (!((mask >> e) & 1U)) continue;
            ok = d.join(g.edge(e).u, g.edge(e).v);
            ids.push_back(e);
        }
        if (ok) trees.push_back(ids);
    }
    return trees;
}

// Fixed corpus of small connected multigraphs with parallel edges and loops.
inline std::vector<FiniteGraph> multigraph_corpus() {
    std::mt19937 gen(20240611);
    std::vector<FiniteGraph> out;
    while (out.size() < 25) {
        const int n = 2 + static_cast<int>(out.size() % 4);  // 2..5 vertices
        std::vector<GraphEdge> edges;
        for (int v = 1; v < n; ++v) edges.push_back({static_cast<int>(gen() % v), v});
        const int extra = 1 + static_cast<int>(gen() % static_cast<unsigned>(8 - (n - 1)));
        for (int i = 0; i < extra; ++i) {
            const int a = static_cast<int>(gen() % n);
            const int kind = static_cast<int>(gen() % 4);
            if (kind == 0) {
                edges.push_back({a, a});
            } else if (kind == 1) {
                edges.push_back(edges[gen() % edges.size()]);
            } else {
                edges.push_back({a, static_cast<int>(gen() % n)});
            }
        }
        std::shuffle(edges.begin(), edges.end(), gen);
        out.emplace_back(n, edges);
    }
    return out;
}

// Number of spanning trees of the n x n torus of Z^2 from its Laplacian spectrum.
inline double torus_log_tree_count_z2(int n) {
    double s = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == 0 && b == 0) continue;
            s += std::log(4.0 - 2.0 * std::cos(2 * pi * a / n) - 2.0 * std::cos(2 * pi * b / n));
        }
    return s - std::log(static_cast<double>(n) * n);
}

inline double catalan_constant() {
    double s = 0.0;
    for (int k = 200000; k >= 0; --k) s += (k % 2 ? -1.0 : 1.0) / ((2.0 * k + 1) * (2.0 * k + 1));
    return s;
}

// Spanning tree entropy per vertex of the triangular lattice:
// (3 sqrt3 / pi)(1 - 1/5^2 + 1/7^2 - 1/11^2 + 1/13^2 - ...).
inline double triangular_entropy() {
    double s = 0.0;
    for (int k = 2000000; k >= 0; --k) {
        const double a = 6.0 * k + 1, b = 6.0 * k + 5;
        s += 1.0 / (a * a) - 1.0 / (b * b);
    }
    return 3.0 * std::sqrt(3.0) / pi * s;
}

inline double falling(double x, int s) {
    double r = 1.0;
    for (int i = 0; i < s; ++i) r *= x - i;
    return r;
}

// Upper 1e-3 quantile of chi-square with 15 degrees of freedom.
inline constexpr double chi2_15_crit_1e3 = 37.697;

// Escape-current harmonic measure of a finite set seen from the boundary of
// a (2R+1)^2 box of Z^2, by successive over-relaxation.
inline std::vector<double> box_harmonic_measure(const std::vector<std::array<int, 2>>& set, int radius) {
    const int w = 2 * radius + 1;
    std::vector<double> h(static_cast<std::size_t>(w) * w, 0.0);
    std::vector<char> fixed(h.size(), 0);
    auto at = [&](int x, int y) { return static_cast<std::size_t>(x + radius) + static_cast<std::size_t>(y + radius) * w; };
    for (int x = -radius; x <= radius; ++x)
        for (int y = -radius; y <= radius; ++y)
            if (std::abs(x) == radius || std::abs(y) == radius) {
                h[at(x, y)] = 1.0;
                fixed[at(x, y)] = 1;
            }
    for (const auto& p : set) fixed[at(p[0], p[1])] = 1;
    const double omega = 2.0 / (1.0 + std::sin(pi / w));
    for (int sweep = 0; sweep < 20 * w; ++sweep) {
        double change = 0.0;
        for (int y = -radius + 1; y < radius; ++y)
            for (int x = -radius + 1; x < radius; ++x) {
                const auto i = at(x, y);
                if (fixed[i]) continue;
                const double avg = 0.25 * (h[at(x + 1, y)] + h[at(x - 1, y)] + h[at(x, y + 1)] + h[at(x, y - 1)]);
                const double next = h[i] + omega * (avg - h[i]);
                change = std::max(change, std::abs(next - h[i]));
                h[i] = next;
            }
        if (change < 1e-13) break;
    }
    std::vector<double> current;
    double total = 0.0;
    for (const auto& p : set) {
        double c = 0.0;
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) c += h[at(p[0] + dx, p[1] + dy)];
        current.push_back(c);
        total += c;
    }
    for (double& c : current) c /= total;
    return current;
}

}  // namespace oracle
