#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "arboreal/error.hpp"
#include "arboreal/finite.hpp"
#include "arboreal/random.hpp"
#include "oracles.hpp"

using namespace arboreal;

namespace {

const FiniteGraph& k4() {
    static const FiniteGraph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    return g;
}

}  // namespace

TEST_CASE("exact tree counts match enumeration on the corpus") {
    for (const auto& g : oracle::multigraph_corpus()) {
        const auto trees = oracle::all_spanning_trees(g);
        CHECK(spanning_tree_count(g) == static_cast<unsigned long>(trees.size()));
        CHECK(enumerate_spanning_trees(g).size() == trees.size());
        CHECK(std::exp(spanning_tree_log_count(g)) == doctest::Approx(static_cast<double>(trees.size())));
    }
}

TEST_CASE("deletion and contraction split the tree count exactly") {
    for (const auto& g : oracle::multigraph_corpus())
        for (int e = 0; e < g.edge_count(); ++e) {
            if (g.edge(e).is_loop()) continue;
            std::vector<GraphEdge> rest = g.edges();
            rest.erase(rest.begin() + e);
            if (!FiniteGraph(g.vertex_count(), rest).connected()) continue;  // bridge
            const std::vector<int> ids = {e};
            CHECK(spanning_tree_count(g) ==
                  spanning_tree_count(delete_edges(g, ids).graph) + spanning_tree_count(contract(g, ids).graph));
        }
}

TEST_CASE("tree counts ignore self-loops") {
    const FiniteGraph g(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}});
    const FiniteGraph looped(3, {{0, 1}, {1, 1}, {1, 2}, {2, 0}, {0, 1}, {2, 2}});
    CHECK(spanning_tree_count(g) == 5);
    CHECK(spanning_tree_count(looped) == 5);
}

TEST_CASE("known tree counts") {
    CHECK(spanning_tree_count(k4()) == 16);
    CHECK(spanning_tree_count(FiniteGraph(3, {{0, 1}})) == 0);
    // Cayley: n^(n-2) for K_n.
    std::vector<GraphEdge> k8;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) k8.push_back({a, b});
    CHECK(spanning_tree_count(FiniteGraph(8, k8)) == 262144);
    // Wired boundary: identifying the two ends of a path makes a cycle.
    const FiniteGraph wired(4, {{0, 1}, {1, 2}, {2, 3}}, {{0, 3}});
    CHECK(spanning_tree_count(wired) == 3);
}

TEST_CASE("torus log counts agree with the spectral oracle and the exact count") {
    const auto lat = lattices::square();
    for (int n : {3, 4, 5, 8}) CHECK(torus_tree_count(lat, n) == doctest::Approx(oracle::torus_log_tree_count_z2(n)).epsilon(1e-11));
    for (int n : {3, 4}) {
        const auto exact = spanning_tree_count(torus_graph(lat, n));
        CHECK(torus_tree_count(lat, n) == doctest::Approx(std::log(exact.get_d())).epsilon(1e-11));
    }
    const auto hex = lattices::hexagonal();
    CHECK(torus_tree_count(hex, 4) == doctest::Approx(std::log(spanning_tree_count(torus_graph(hex, 4)).get_d())).epsilon(1e-11));
}

TEST_CASE("Wilson's algorithm is uniform on K4") {
    const std::size_t n = 100000;
    std::map<std::vector<int>, std::size_t> freq;
    for (std::size_t i = 0; i < n; ++i) {
        Philox rng(7, i);
        ++freq[wilson_sample(k4(), rng).edges];
    }
    CHECK(freq.size() == 16);
    const double expect = static_cast<double>(n) / 16;
    double chi2 = 0.0;
    for (const auto& [tree, count] : freq) chi2 += (count - expect) * (count - expect) / expect;
    CHECK(chi2 < oracle::chi2_15_crit_1e3);
}

TEST_CASE("Wilson samples are spanning trees with loops and parallels present") {
    const FiniteGraph g(4, {{0, 1}, {0, 1}, {1, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 2}});
    for (std::uint64_t i = 0; i < 200; ++i) {
        Philox rng(1, i);
        const auto t = wilson_sample(g, rng);
        REQUIRE(t.edges.size() == 3);
        oracle::Dsu d(4);
        for (int e : t.edges) CHECK(d.join(g.edge(e).u, g.edge(e).v));
    }
}

TEST_CASE("Monte Carlo estimates are deterministic and thread independent") {
    const std::vector<EdgeRef> edges = {{0, false}, {3, false}};
    EdgeEvent ev;
    ev.include = {0};
    ev.exclude = {1};
    const auto a = estimate_event(k4(), edges, ev, 5000, 11, 1);
    const auto b = estimate_event(k4(), edges, ev, 5000, 11, 3);
    CHECK(a.estimate == b.estimate);
    CHECK(a.standard_error == b.standard_error);
    // Exact: 1/2 - P(both) = 1/2 - 8/16 * ... by enumeration.
    const auto trees = oracle::all_spanning_trees(k4());
    double hits = 0;
    for (const auto& t : trees)
        hits += std::count(t.begin(), t.end(), 0) && !std::count(t.begin(), t.end(), 3);
    CHECK(std::abs(a.estimate - hits / 16) < 4 * a.standard_error);
}

TEST_CASE("torus edge frequency is close to the exact marginal") {
    const auto lat = lattices::square();
    const int n = 32;
    const auto g = torus_graph(lat, n);
    const LatticeEdge e{{{0, 0}, 0}, {{1, 0}, 0}};
    const std::vector<EdgeRef> edges = {{torus_edge_id(lat, n, e), false}};
    const auto r = estimate_event(g, edges, EdgeEvent::all_included(1), 20000, 5, 1);
    const double exact = (n * n - 1.0) / (2.0 * n * n);
    CHECK(std::abs(r.estimate - exact) < 3 * r.standard_error);
    CHECK(std::abs(r.estimate - 0.5) < 3 * r.standard_error);
}

TEST_CASE("cubic lattice edge marginal is one third") {
    const auto lat = lattices::cubic(3);
    const int n = 8;
    const auto g = torus_graph(lat, n);
    const LatticeEdge e{{{0, 0, 0}, 0}, {{1, 0, 0}, 0}};
    const std::vector<EdgeRef> edges = {{torus_edge_id(lat, n, e), false}};
    const auto r = estimate_event(g, edges, EdgeEvent::all_included(1), 20000, 9, 1);
    CHECK(std::abs(r.estimate - 1.0 / 3.0) < 4 * r.standard_error + 1e-3);
}

TEST_CASE("budgets are enforced") {
    std::vector<GraphEdge> k9;
    for (int a = 0; a < 9; ++a)
        for (int b = a + 1; b < 9; ++b) k9.push_back({a, b});
    CHECK_THROWS_AS(enumerate_spanning_trees(FiniteGraph(9, k9), 1000), BudgetError);
    CHECK_THROWS_AS(spanning_tree_count(torus_graph(lattices::square(), 23)), BudgetError);
}
