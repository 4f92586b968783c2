#include <doctest.h>

#include <cmath>
#include <vector>

#include "arboreal/error.hpp"
#include "arboreal/finite.hpp"
#include "arboreal/limits.hpp"
#include "arboreal/marginals.hpp"
#include "arboreal/random.hpp"
#include "oracles.hpp"

using namespace arboreal;

namespace {

// Injective root- and adjacency-preserving maps of t into u, by brute force
// over all injections.
std::uint64_t brute_tree_maps(const RootedTree& u, const RootedTree& t) {
    std::vector<int> image(static_cast<std::size_t>(t.size()), -1);
    std::vector<char> used(static_cast<std::size_t>(u.size()), 0);
    std::uint64_t count = 0;
    auto go = [&](auto&& self, int i) -> void {
        if (i == t.size()) {
            ++count;
            return;
        }
        for (int x = 0; x < u.size(); ++x) {
            if (used[x]) continue;
            if (i == 0 ? x != 0 : u.parent(x) != image[t.parent(i)]) continue;
            used[x] = 1;
            image[i] = x;
            self(self, i + 1);
            used[x] = 0;
        }
    };
    go(go, 0);
    return count;
}

}  // namespace

TEST_CASE("tree-map counts on stars are falling factorials") {
    for (int r = 0; r <= 8; ++r)
        for (int s = 0; s <= 8; ++s)
            CHECK(tree_map_count(RootedTree::star(r), RootedTree::star(s)) ==
                  static_cast<std::uint64_t>(oracle::falling(r, s)));
    CHECK(tree_map_count(RootedTree::star(8), RootedTree::star(3)) == 336);
}

TEST_CASE("tree-map counts agree with brute force") {
    const std::vector<RootedTree> us = {RootedTree({-1, 0, 0, 1, 1, 2, 3}), RootedTree::path(5), RootedTree::star(4),
                                        RootedTree({-1, 0, 0, 0, 1, 1, 2})};
    for (const auto& u : us)
        for (const auto& t : tree_panel()) CHECK(tree_map_count(u, t) == brute_tree_maps(u, t));
    // The graph version agrees on trees.
    const FiniteGraph g(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}});
    const RootedTree u({-1, 0, 0, 1, 1});
    for (const auto& t : tree_panel()) CHECK(tree_map_count(g, 0, t) == tree_map_count(u, t));
}

TEST_CASE("rooted trees") {
    const RootedTree t({-1, 0, 0, 1, 3});
    CHECK(t.height() == 3);
    CHECK(t.truncated(1).size() == 3);
    CHECK(t.to_string() == "-1,0,0,1,3");
    CHECK_THROWS_AS(RootedTree({-1, 2, 1}), ValidationError);
    CHECK_THROWS_AS(RootedTree({0, 0}), ValidationError);
}

TEST_CASE("factorial moments on K_n match the closed form and enumeration") {
    for (int n : {4, 7, 25}) {
        const auto r = factorial_moments_degree(complete_graph(n), 0, 3);
        CHECK(r.lambda == doctest::Approx(1.0));
        for (std::size_t i = 0; i < r.s.size(); ++i) {
            const int s = r.s[i];
            CHECK(r.moments[i] == doctest::Approx((s + 1) * oracle::falling(n - 1, s) / std::pow(n, s)).epsilon(1e-10));
            CHECK(r.targets[i] == doctest::Approx(1.0 + s));
        }
    }
    // Enumeration on K5.
    const auto g = complete_graph(5);
    const auto trees = oracle::all_spanning_trees(g);
    std::vector<double> e(4, 0.0);
    for (const auto& t : trees) {
        int deg = 0;
        for (int id : t) deg += g.edge(id).u == 0 || g.edge(id).v == 0;
        for (int s = 1; s <= 3; ++s) e[s] += oracle::falling(deg, s) / trees.size();
    }
    const auto r = factorial_moments_degree(g, 0, 3);
    for (int s = 1; s <= 3; ++s) CHECK(r.moments[s - 1] == doctest::Approx(e[s]).epsilon(1e-12));
}

TEST_CASE("the first moment is the sum of edge marginals") {
    const auto g = counterexample_graph(2);
    const auto r = factorial_moments_degree(g, 0, 1);
    const auto d = degree_distribution(g, 0);
    double mean = 0.0;
    for (std::size_t s = 0; s < d.p.size(); ++s) mean += static_cast<double>(s) * d.p[s];
    CHECK(r.moments[0] == doctest::Approx(mean).epsilon(1e-10));
}

TEST_CASE("counterexample vertex has large degree") {
    const auto g = counterexample_graph(3);
    CHECK(g.vertex_count() == 1 + 2 * 3 + 4 * 9);
    const auto d = degree_distribution(g, 0);
    double mean = 0.0;
    for (std::size_t s = 0; s < d.p.size(); ++s) mean += static_cast<double>(s) * d.p[s];
    CHECK(mean >= 3.0);
    for (std::size_t s = 0; s < 3 && s < d.p.size(); ++s) CHECK(std::abs(d.p[s]) < 1e-9);
}

TEST_CASE("Galton-Watson samplers") {
    Philox rng(3, 0);
    double mean_size = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const auto t = sample_gw_tree(1, rng);
        CHECK(t.height() <= 1);
        mean_size += t.size();
    }
    // Root plus Poisson(1) children.
    CHECK(mean_size / n == doctest::Approx(2.0).epsilon(0.03));
    for (int i = 0; i < 100; ++i) {
        const auto t = sample_poisson1_tree(3, rng);
        CHECK(t.height() == 3);  // the spine always survives
    }
}

TEST_CASE("tree moments of GW and P1 trees") {
    const auto panel = tree_panel();
    const auto gw = tree_moments_gw(3, panel, 40000, 5);
    const auto p1 = tree_moments_poisson1(3, panel, 40000, 5);
    for (std::size_t i = 0; i < panel.size(); ++i) {
        CHECK(std::abs(gw[i].estimate - 1.0) < 4 * gw[i].standard_error + 1e-12);
        CHECK(std::abs(p1[i].estimate - p1[i].size) < 4 * p1[i].standard_error + 1e-12);
    }
}

TEST_CASE("tree moments under the uniform spanning tree of K_n") {
    const auto panel = tree_panel();
    const int n = 30;
    const auto est = tree_moments_ust(complete_graph(n), 0, panel, 4000, 2);
    for (std::size_t i = 0; i < panel.size(); ++i) {
        const int k = panel[i].size();
        // Rooted forests of K_n: E N(T; t) = |t| (n-1)_{|t|-1} / n^{|t|-1}.
        const double exact = k * oracle::falling(n - 1, k - 1) / std::pow(n, k - 1);
        CHECK(std::abs(est[i].estimate - exact) < 4 * est[i].standard_error + 1e-12);
    }
}

TEST_CASE("moment caps are enforced") {
    CHECK_THROWS_AS(factorial_moments_degree(complete_graph(60), 0, 5, 1000), BudgetError);
}
