#pragma once

// Periodic lattices (Z^d-invariant graphs with a k-class fundamental domain)
// and the finite multigraphs cut out of them.
//
// Class indices are 0-based inside the library; the JSON format and the CLI
// use 1-based classes.  A self-loop contributes 1 to a vertex degree and 1 to
// R^0(i,i), so that the row sums of sum_x R^x are exactly D.

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arboreal/linalg.hpp"

namespace arboreal {

using IntVec = std::vector<int>;

struct LatticeVertex {
    IntVec x;
    int cls = 0;

    auto operator<=>(const LatticeVertex&) const = default;
};

struct LatticeEdge {
    LatticeVertex tail;
    LatticeVertex head;

    LatticeEdge reversed() const { return {head, tail}; }
    LatticeEdge translated(std::span<const int> by) const;
    auto operator<=>(const LatticeEdge&) const = default;
};

// The undirected family (z,i) ~ (z+offset, j) for all z.
struct EdgeFamily {
    int i = 0;
    int j = 0;
    IntVec offset;

    bool is_loop() const;
    EdgeFamily reversed() const;
    EdgeFamily canonical() const;
    auto operator<=>(const EdgeFamily&) const = default;
};

// Unvalidated lattice description, as read from a file.
struct RawLattice {
    int d = 0;
    int k = 0;
    std::vector<EdgeFamily> edges;
    std::vector<int> self_loops;  // optional, per class; empty means none
    std::string name;
};

// R^x as a k x k count matrix.
struct OffsetBlock {
    IntVec offset;
    Matrix counts;
};

class PeriodicLattice {
public:
    int dim() const noexcept { return d_; }
    int classes() const noexcept { return k_; }
    int degree() const noexcept { return degree_; }
    const std::string& name() const noexcept { return name_; }

    // Canonical non-loop families, sorted.
    const std::vector<EdgeFamily>& families() const noexcept { return families_; }
    const std::vector<int>& self_loops() const noexcept { return self_loops_; }

    int non_loop_degree(int cls) const;
    int max_offset_norm() const;

    // All R^x with at least one nonzero entry, sorted by offset; self-loops
    // are counted in R^0.
    std::vector<OffsetBlock> offset_matrices() const;

    // Non-loop edges at v, oriented away from v, one per edge endpoint.
    std::vector<LatticeEdge> incident_edges(const LatticeVertex& v) const;

    // True when tail and head are joined by at least one non-loop edge.
    bool adjacent(const LatticeVertex& a, const LatticeVertex& b) const;

    std::string to_json() const;

private:
    friend PeriodicLattice regularize(const RawLattice& raw);
    friend PeriodicLattice with_extra_self_loops(const PeriodicLattice& lat, int per_class);

    int d_ = 0;
    int k_ = 0;
    int degree_ = 0;
    std::vector<EdgeFamily> families_;
    std::vector<int> self_loops_;
    std::string name_;
};

RawLattice parse_raw_lattice(std::string_view json_text);

// Validates the raw description and pads every class with self-loops up to a
// common degree D = (max raw degree) + 1.  An input that is already regular
// with at least one self-loop per class keeps its D.
PeriodicLattice regularize(const RawLattice& raw);

PeriodicLattice parse_lattice(std::string_view json_text);
PeriodicLattice load_lattice(const std::string& path);

PeriodicLattice with_extra_self_loops(const PeriodicLattice& lat, int per_class);

namespace lattices {
PeriodicLattice square();       // Z^2 nearest neighbour
PeriodicLattice triangular();   // Z^2 plus the (1,1) diagonal
PeriodicLattice hexagonal();    // honeycomb, k = 2
PeriodicLattice cubic(int d);   // Z^d nearest neighbour
}  // namespace lattices

struct GraphEdge {
    int u = 0;
    int v = 0;

    bool is_loop() const noexcept { return u == v; }
    bool operator==(const GraphEdge&) const = default;
};

// Finite multigraph; self-loops and parallel edges allowed.  Optional
// boundary classes list vertex sets to be identified (wired boundary).
class FiniteGraph {
public:
    FiniteGraph() = default;
    FiniteGraph(int n_vertices, std::vector<GraphEdge> edges,
                std::vector<std::vector<int>> boundary_classes = {});

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
    const GraphEdge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }
    const std::vector<std::vector<int>>& boundary_classes() const noexcept { return boundary_; }

    // Edge ids at v; a loop appears once.
    const std::vector<int>& incident(int v) const { return incident_.at(static_cast<std::size_t>(v)); }
    int degree(int v) const;
    int non_loop_degree(int v) const;
    int other_end(int edge_id, int v) const;

    bool connected() const;
    bool regular() const;

    // Merge each boundary class into a single vertex.
    FiniteGraph identify_boundary() const;
    // Pad with self-loops so every vertex has degree max+1.
    FiniteGraph regularized() const;

    bool operator==(const FiniteGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    int n_ = 0;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<int>> boundary_;
    std::vector<std::vector<int>> incident_;
};

// An oriented use of a finite-graph edge: u -> v, or v -> u when flipped.
struct EdgeRef {
    int id = 0;
    bool flip = false;

    int tail(const FiniteGraph& g) const { return flip ? g.edge(id).v : g.edge(id).u; }
    int head(const FiniteGraph& g) const { return flip ? g.edge(id).u : g.edge(id).v; }
    bool operator==(const EdgeRef&) const = default;
};

FiniteGraph parse_graph(std::string_view json_text);
FiniteGraph load_graph(const std::string& path);
std::string graph_to_json(const FiniteGraph& g);

// Result of contraction or deletion.  vertex_map[old] = new vertex id;
// edge_map[old] = new edge id, or -1 if the edge was removed.
struct Minor {
    FiniteGraph graph;
    std::vector<int> vertex_map;
    std::vector<int> edge_map;
};

// Contracts the given edges (removing them) and merges their endpoints.
// New vertex ids follow the order of the smallest original vertex in each
// merged class; the remaining edges keep their relative order.
Minor contract(const FiniteGraph& g, std::span<const int> edge_ids);

// Removes the given edges; throws if the result is disconnected.
Minor delete_edges(const FiniteGraph& g, std::span<const int> edge_ids);

// Torus (Z_n)^d x S with all families wrapped.  Vertex (z,i) gets id
// i + k * (z_0 + n z_1 + n^2 z_2 + ...); family f at cell z gets edge id
// z_index * F + f, followed by the self-loops.
FiniteGraph torus_graph(const PeriodicLattice& lat, int n);
int torus_vertex_id(const PeriodicLattice& lat, int n, const LatticeVertex& v);
LatticeVertex torus_vertex(const PeriodicLattice& lat, int n, int id);
int torus_edge_id(const PeriodicLattice& lat, int n, const LatticeEdge& e);

// Induced subgraph on {(x,i) : |x|_inf <= n} with per-class self-loops
// copied; boundary degrees are not regular.
FiniteGraph box_graph(const PeriodicLattice& lat, int n);
int box_vertex_id(const PeriodicLattice& lat, int n, const LatticeVertex& v);

std::string format_vertex(const LatticeVertex& v);  // "x1,...,xd,i" (1-based class)
std::string format_edge(const LatticeEdge& e);      // "tail:head"
LatticeVertex parse_vertex(std::string_view text, int d);
LatticeEdge parse_edge(std::string_view text, int d);

}  // namespace arboreal
