#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "arboreal/dimer.hpp"
#include "arboreal/error.hpp"
#include "arboreal/lattice.hpp"
#include "oracles.hpp"

using namespace arboreal;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("grid windows satisfy Euler's formula") {
    for (auto [w, h] : {std::pair{2, 2}, {3, 4}, {5, 2}}) {
        const auto map = grid_window(w, h);
        CHECK(map.vertex_count() - map.edge_count() + map.face_count() == 2);
        CHECK(map.face_count() == (w - 1) * (h - 1) + 1);
        // The outer face runs around the whole boundary.
        CHECK(map.face(map.outer_face()).size() == static_cast<std::size_t>(2 * (w - 1) + 2 * (h - 1)));
    }
    const auto tri = triangular_window(3, 3);
    CHECK(tri.face_count() == 2 * 4 + 1);
}

TEST_CASE("every edge separates its left and right faces consistently") {
    const auto map = grid_window(4, 3);
    for (int f = 0; f < map.face_count(); ++f)
        for (int half : map.face(f)) {
            const int e = half / 2;
            CHECK((half % 2 == 0 ? map.left_face(e) : map.right_face(e)) == f);
        }
}

TEST_CASE("matchings of the Temperley graph are counted by spanning trees") {
    for (auto [w, h] : {std::pair{1, 2}, {2, 2}, {2, 3}, {3, 3}}) {
        const TemperleyGraph tg(grid_window(w, h), 0);
        const auto trees = oracle::all_spanning_trees(tg.map().graph());
        CHECK(enumerate_matchings(tg).size() == trees.size());
    }
    const TemperleyGraph tri(triangular_window(3, 3), 0);
    CHECK(enumerate_matchings(tri).size() == oracle::all_spanning_trees(tri.map().graph()).size());
    CHECK(enumerate_matchings(tri).size() == 2080);
}

TEST_CASE("the bijection round-trips on every tree of a window") {
    for (const auto& map : {grid_window(3, 3), triangular_window(3, 2)}) {
        const TemperleyGraph tg(map, 0);
        const auto trees = oracle::all_spanning_trees(map.graph());
        std::set<std::vector<int>> images;
        for (const auto& t : trees) {
            const auto pair = forest_pair_from_tree(tg, t);
            const auto tiling = forest_pair_to_matching(tg, pair);
            CHECK(matching_to_forest_pair(tg, tiling) == pair);
            auto back = tree_of(pair);
            std::sort(back.begin(), back.end());
            CHECK(back == t);
            images.insert(tiling.partner);
        }
        // Distinct trees give distinct tilings and every tiling arises.
        CHECK(images.size() == trees.size());
        for (const auto& m : enumerate_matchings(tg)) CHECK(images.count(m.partner) == 1);
    }
}

TEST_CASE("non-forest pairs are rejected") {
    const TemperleyGraph tg(grid_window(2, 2), 0);
    const std::vector<int> tree = {0, 1, 2};
    auto pair = forest_pair_from_tree(tg, std::span<const int>(tree));
    // Put every edge in the primal tree: the cycle around the square has no valid orientation.
    for (auto& p : pair.primal) p = 1;
    CHECK_THROWS_AS(forest_pair_to_matching(tg, pair), ValidationError);
}

TEST_CASE("faces per fundamental domain") {
    const std::vector<Point> one = {{0.0, 0.0}};
    const std::vector<Point> two = {{0.0, 0.0}, {1.0 / 3, 1.0 / 3}};
    CHECK(periodic_face_count(lattices::square(), one) == 1);
    CHECK(periodic_face_count(lattices::triangular(), one) == 2);
    CHECK(periodic_face_count(lattices::hexagonal(), two) == 1);
}

TEST_CASE("catalogued domino events") {
    const auto sq = domino_event_probability("square_two_vertical");
    CHECK(std::abs(sq.value - (2 / (pi * pi) - 4 / (pi * pi * pi))) < 1e-9);
    CHECK(std::abs(sq.value - sq.cross_check) < 1e-12);
    const auto vt = domino_event_probability("vertical_plus_top_horizontal");
    CHECK(std::abs(vt.value - 1 / (4 * pi)) < 1e-9);
    CHECK(domino_event_probability("single_domino_up").value == 0.25);
    CHECK_THROWS_AS(domino_event_probability("no_such_event"), ValidationError);
    CHECK(domino_event_ids().size() == 3);
}

TEST_CASE("Temperley Monte Carlo agrees with the catalogue") {
    for (const char* id : {"square_two_vertical", "vertical_plus_top_horizontal"}) {
        const auto exact = domino_event_probability(id).value;
        const auto mc = domino_pattern_frequency(id, 64, 20, 100, 3, 1);
        CHECK(mc.samples == 100);
        // Finite windows carry an O(1/n) bias on top of the sampling error.
        CHECK(std::abs(mc.estimate - exact) < 4 * mc.standard_error + 2e-3);
    }
    // A hitting weight of pi/(6pi-8) would give 0.0628; the simulation excludes it.
    const auto mc = domino_pattern_frequency("vertical_plus_top_horizontal", 64, 20, 100, 3, 1);
    CHECK(std::abs(mc.estimate - 0.0628311535) > 10 * mc.standard_error);
}

TEST_CASE("pattern frequencies are reproducible across thread counts") {
    const auto a = domino_pattern_frequency("square_two_vertical", 24, 6, 12, 17, 1);
    const auto b = domino_pattern_frequency("square_two_vertical", 24, 6, 12, 17, 3);
    CHECK(a.estimate == b.estimate);
    CHECK(a.standard_error == b.standard_error);
}
