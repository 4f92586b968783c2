#pragma once

// Temperley's correspondence between directed spanning-forest pairs of a
// planar graph and its dual and perfect matchings (domino tilings) of the
// bipartite graph on vertices, faces and edges.
//
// Finite windows use the removed-corner convention: the outer face and one
// root vertex on the outer boundary are deleted, which makes the
// correspondence an exact bijection with spanning trees of the window.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arboreal/lattice.hpp"

namespace arboreal {

using Point = std::array<double, 2>;

// Connected loopless plane multigraph given by a counterclockwise rotation
// of edge ids around each vertex.  Half-edge 2e runs u -> v, 2e+1 runs v -> u.
class PlanarMap {
public:
    PlanarMap(int n_vertices, std::vector<GraphEdge> edges, std::vector<std::vector<int>> rotation);
    // Rotations sorted by angle; the outer face is the one traced clockwise.
    static PlanarMap from_coordinates(std::vector<Point> coords, std::vector<GraphEdge> edges);

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    int face_count() const noexcept { return static_cast<int>(faces_.size()); }
    const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
    const std::vector<int>& rotation(int v) const { return rotation_.at(static_cast<std::size_t>(v)); }

    // Face to the left of u -> v, and to its right.
    int left_face(int e) const { return face_of_half_[2 * static_cast<std::size_t>(e)]; }
    int right_face(int e) const { return face_of_half_[2 * static_cast<std::size_t>(e) + 1]; }
    // Half-edges of a face in traversal order, face on the left.
    const std::vector<int>& face(int f) const { return faces_.at(static_cast<std::size_t>(f)); }

    int outer_face() const noexcept { return outer_; }
    void set_outer_face(int f);

    bool has_coordinates() const noexcept { return !coords_.empty(); }
    const Point& vertex_point(int v) const { return coords_.at(static_cast<std::size_t>(v)); }
    Point face_point(int f) const;  // centroid of the boundary vertices

    FiniteGraph graph() const { return FiniteGraph(n_, edges_); }

private:
    int n_;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<int>> rotation_;
    std::vector<int> face_of_half_;
    std::vector<std::vector<int>> faces_;
    std::vector<Point> coords_;
    int outer_ = -1;
};

// W x H grid of vertices (x, y), id x + W y; the root corner is vertex 0.
PlanarMap grid_window(int width, int height);
// The grid plus the (1,1) diagonal in every square.
PlanarMap triangular_window(int width, int height);

enum class NodeKind { primal, dual, edge };

class TemperleyGraph {
public:
    TemperleyGraph(PlanarMap map, int root_vertex);

    const PlanarMap& map() const noexcept { return map_; }
    int root_vertex() const noexcept { return root_; }

    // Nodes: vertices 0..V-1, then faces, then edges.
    int node_count() const noexcept { return map_.vertex_count() + map_.face_count() + map_.edge_count(); }
    int primal_node(int v) const noexcept { return v; }
    int dual_node(int f) const noexcept { return map_.vertex_count() + f; }
    int edge_node(int e) const noexcept { return map_.vertex_count() + map_.face_count() + e; }
    NodeKind kind(int node) const;
    int element(int node) const;  // vertex, face or edge index
    bool removed(int node) const;

    // Neighbours of a node among the surviving nodes.  An edge node sees its
    // two endpoints and the faces on either side; a face on both sides of a
    // bridge is dropped since a dual loop never lies in a dual tree.
    const std::vector<int>& neighbors(int node) const { return adj_.at(static_cast<std::size_t>(node)); }

private:
    PlanarMap map_;
    int root_;
    std::vector<std::vector<int>> adj_;
};

// Perfect matching of the surviving nodes: partner[e] is the primal or dual
// node matched with the node of edge e.  Every edge node is covered.
struct DominoTiling {
    std::vector<int> partner;
    bool operator==(const DominoTiling&) const = default;
};

// Every edge lies in T (primal) or T* (dual) and is oriented out of `tail`,
// a vertex for primal edges and a face for dual ones.
struct DirectedForestPair {
    std::vector<char> primal;
    std::vector<int> tail;
    bool operator==(const DirectedForestPair&) const = default;
};

// Psi: edge node e is matched to the tail of e.  Throws on a vertex or face
// with out-degree other than one (zero for the roots) or a directed cycle.
DominoTiling forest_pair_to_matching(const TemperleyGraph& tg, const DirectedForestPair& pair);
// Phi: the inverse map.  Throws when the input is not a perfect matching.
DirectedForestPair matching_to_forest_pair(const TemperleyGraph& tg, const DominoTiling& tiling);

// Orients a spanning tree of the window toward the root and the dual edges
// of the remaining edges toward the outer face.
DirectedForestPair forest_pair_from_tree(const TemperleyGraph& tg, std::span<const int> tree_edges);
std::vector<int> tree_of(const DirectedForestPair& pair);

std::vector<DominoTiling> enumerate_matchings(const TemperleyGraph& tg, std::size_t budget = 1000000);

// Faces per fundamental domain of a planar periodic lattice, found by tracing
// the straight-line embedding on an n-torus with the given class positions
// (in lattice coordinates).  Throws unless k + f = e.
int periodic_face_count(const PeriodicLattice& lat, std::span<const Point> class_positions);

// The closed catalogue of exactly computable domino events on Z^2.
struct DominoEventValue {
    std::string id;
    double value = 0.0;
    // Second, independent route where one exists (NaN otherwise).
    double cross_check = 0.0;
};

std::vector<std::string> domino_event_ids();
DominoEventValue domino_event_probability(std::string_view id);

// Local pattern on the doubled grid, relative to a primal site at (0,0):
// the listed dominos are present and every region cell is matched inside
// the region.
struct DominoPattern {
    std::vector<std::array<int, 4>> dominos;
    std::vector<std::array<int, 2>> region;
};
DominoPattern catalogued_pattern(std::string_view id);

// Doubled-grid partner table for a grid window: cell (X,Y), 0 <= X < 2W-1,
// 0 <= Y < 2H-1, at index X + (2W-1) Y holds its partner index, or -1.
std::vector<int> doubled_partners(const TemperleyGraph& tg, const DominoTiling& tiling, int width, int height);
bool pattern_at(std::span<const int> partners, int width, int height, int x, int y, const DominoPattern& p);

struct PatternEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;  // batch means over samples
    std::size_t samples = 0;
    std::size_t sites = 0;
    std::uint64_t seed = 0;
};

// Frequency of a catalogued pattern in tilings from uniform spanning trees
// of an n x n grid window, over primal sites at least `margin` from the edge.
PatternEstimate domino_pattern_frequency(std::string_view id, int n, int margin, std::size_t samples,
                                         std::uint64_t seed, int threads = 1);

}  // namespace arboreal
