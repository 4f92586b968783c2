#include <doctest.h>

#include <vector>

#include "arboreal/error.hpp"
#include "arboreal/lattice.hpp"

using namespace arboreal;

TEST_CASE("regularization adds self-loops up to one above the largest degree") {
    CHECK(lattices::square().degree() == 5);
    CHECK(lattices::square().self_loops() == std::vector<int>{1});
    CHECK(lattices::triangular().degree() == 7);
    CHECK(lattices::hexagonal().degree() == 4);
    CHECK(lattices::cubic(3).degree() == 7);

    // Unequal class degrees are topped up separately.
    const auto lat = parse_lattice(R"({"d":1,"k":2,"edges":[
        {"i":1,"j":2,"offset":[0]},{"i":2,"j":1,"offset":[1]},{"i":1,"j":1,"offset":[1]}]})");
    CHECK(lat.degree() == 5);
    CHECK(lat.self_loops() == std::vector<int>{1, 3});
}

TEST_CASE("lattice JSON round-trips") {
    for (const auto& lat : {lattices::square(), lattices::triangular(), lattices::hexagonal(), lattices::cubic(3)}) {
        const auto again = parse_lattice(lat.to_json());
        CHECK(again.families() == lat.families());
        CHECK(again.self_loops() == lat.self_loops());
        CHECK(again.degree() == lat.degree());
    }
}

TEST_CASE("malformed and disconnected lattices are rejected") {
    CHECK_THROWS_AS(parse_lattice("not json"), ValidationError);
    CHECK_THROWS_AS(parse_lattice(R"({"d":2,"k":1})"), ValidationError);
    CHECK_THROWS_AS(parse_lattice(R"({"d":2,"k":1,"edges":[{"i":2,"j":1,"offset":[1,0]}]})"), ValidationError);
    CHECK_THROWS_AS(parse_lattice(R"({"d":2,"k":1,"edges":[{"i":1,"j":1,"offset":[1]}]})"), ValidationError);
    // Translations generate only a sublattice.
    CHECK_THROWS_AS(parse_lattice(R"({"d":2,"k":1,"edges":[{"i":1,"j":1,"offset":[1,0]}]})"), ValidationError);
    CHECK_THROWS_AS(parse_lattice(R"({"d":1,"k":1,"edges":[{"i":1,"j":1,"offset":[2]}]})"), ValidationError);
    // Two classes that never meet.
    CHECK_THROWS_AS(parse_lattice(R"({"d":1,"k":2,"edges":[
        {"i":1,"j":1,"offset":[1]},{"i":2,"j":2,"offset":[1]}]})"), ValidationError);
    // Index 2 sublattice plus a class bridge spans everything.
    CHECK_NOTHROW(parse_lattice(R"({"d":1,"k":2,"edges":[
        {"i":1,"j":1,"offset":[2]},{"i":1,"j":2,"offset":[0]},{"i":2,"j":1,"offset":[1]}]})"));
}

TEST_CASE("incident edges and adjacency agree") {
    const auto lat = lattices::hexagonal();
    for (int cls = 0; cls < 2; ++cls) {
        const LatticeVertex v{{3, -2}, cls};
        const auto inc = lat.incident_edges(v);
        CHECK(inc.size() == 3);
        for (const auto& e : inc) {
            CHECK(e.tail == v);
            CHECK(lat.adjacent(e.tail, e.head));
            CHECK(lat.adjacent(e.head, e.tail));
        }
    }
    CHECK_FALSE(lattices::square().adjacent({{0, 0}, 0}, {{1, 1}, 0}));
    CHECK(lattices::triangular().adjacent({{0, 0}, 0}, {{1, 1}, 0}));
}

TEST_CASE("edge text parses and formats with one-based classes") {
    const auto e = parse_edge("0,0,1:1,0,1", 2);
    CHECK(e.tail == LatticeVertex{{0, 0}, 0});
    CHECK(e.head == LatticeVertex{{1, 0}, 0});
    CHECK(format_edge(e) == "0,0,1:1,0,1");
    CHECK_THROWS_AS(parse_edge("0,0,1", 2), ValidationError);
    CHECK_THROWS_AS(parse_edge("0,0,0:1,0,1", 2), ValidationError);
    CHECK_THROWS_AS(parse_vertex("a,0,1", 2), ValidationError);
}

TEST_CASE("contraction removes contracted edges and keeps the rest") {
    const std::vector<GraphEdge> k4 = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    const FiniteGraph g(4, k4);
    const std::vector<int> ids = {0};
    const auto c = contract(g, ids);
    CHECK(c.graph.vertex_count() == 3);
    CHECK(c.graph.edge_count() == 5);
    const std::vector<int> path = {0, 3};
    const auto c2 = contract(g, path);
    CHECK(c2.graph.vertex_count() == 2);
    CHECK(c2.graph.edge_count() == 4);  // edge 0-2 survives as a loop
    const std::vector<int> triangle = {0, 1, 3};
    CHECK_THROWS_AS(contract(g, triangle), ValidationError);
    const auto d = delete_edges(g, ids);
    CHECK(d.graph.vertex_count() == 4);
    CHECK(d.graph.edge_count() == 5);
}

TEST_CASE("torus and box graphs have the expected shape") {
    const auto lat = lattices::square();
    const auto t = torus_graph(lat, 4);
    CHECK(t.vertex_count() == 16);
    int non_loops = 0;
    for (const auto& e : t.edges()) non_loops += !e.is_loop();
    CHECK(non_loops == 32);
    CHECK(t.connected());
    const LatticeEdge e{{{3, 0}, 0}, {{4, 0}, 0}};
    const int id = torus_edge_id(lat, 4, e);
    const auto& ge = t.edge(id);
    const int a = torus_vertex_id(lat, 4, e.tail), b = torus_vertex_id(lat, 4, e.head);
    CHECK(((ge.u == a && ge.v == b) || (ge.u == b && ge.v == a)));
    CHECK(torus_vertex(lat, 4, b) == LatticeVertex{{0, 0}, 0});
}

TEST_CASE("graph JSON validates and round-trips") {
    const FiniteGraph g(3, {{0, 1}, {1, 2}, {2, 2}, {0, 1}});
    CHECK(parse_graph(graph_to_json(g)) == g);
    CHECK_THROWS_AS(parse_graph(R"({"n":2,"edges":[[0,2]]})"), ValidationError);
    CHECK_THROWS_AS(parse_graph(R"({"edges":[]})"), ValidationError);
    CHECK(g.degree(2) == 2);
    CHECK(g.non_loop_degree(2) == 1);
}
