#include "arboreal/dimer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>

#include "arboreal/error.hpp"
#include "arboreal/finite.hpp"
#include "arboreal/green.hpp"
#include "arboreal/marginals.hpp"
#include "arboreal/quadrature.hpp"

namespace arboreal {

namespace {

int half_tail(const std::vector<GraphEdge>& edges, int h) {
    const auto& e = edges[static_cast<std::size_t>(h / 2)];
    return (h % 2 == 0) ? e.u : e.v;
}

int out_half(const std::vector<GraphEdge>& edges, int e, int v) {
    return edges[static_cast<std::size_t>(e)].u == v ? 2 * e : 2 * e + 1;
}

// Traces the faces of a rotation system, face on the left of each half-edge:
// after arriving at b along a -> b, leave along the edge clockwise from b -> a.
std::vector<std::vector<int>> trace_faces(int n, const std::vector<GraphEdge>& edges,
                                          const std::vector<std::vector<int>>& rotation,
                                          std::vector<int>& face_of_half) {
    if (static_cast<int>(rotation.size()) != n) throw ValidationError("planar map: one rotation per vertex");
    std::vector<int> position(2 * edges.size(), -1);
    for (int v = 0; v < n; ++v) {
        const auto& rot = rotation[static_cast<std::size_t>(v)];
        for (std::size_t p = 0; p < rot.size(); ++p) {
            const int e = rot[p];
            if (e < 0 || static_cast<std::size_t>(e) >= edges.size())
                throw ValidationError("planar map: rotation names an unknown edge");
            const auto& ed = edges[static_cast<std::size_t>(e)];
            if (ed.u != v && ed.v != v) throw ValidationError("planar map: rotation edge not incident to vertex");
            const int h = out_half(edges, e, v);
            if (position[static_cast<std::size_t>(h)] >= 0) throw ValidationError("planar map: edge repeated in rotation");
            position[static_cast<std::size_t>(h)] = static_cast<int>(p);
        }
    }
    for (int p : position)
        if (p < 0) throw ValidationError("planar map: edge missing from a rotation");

    face_of_half.assign(2 * edges.size(), -1);
    std::vector<std::vector<int>> faces;
    for (std::size_t start = 0; start < face_of_half.size(); ++start) {
        if (face_of_half[start] >= 0) continue;
        const int f = static_cast<int>(faces.size());
        faces.emplace_back();
        int h = static_cast<int>(start);
        while (face_of_half[static_cast<std::size_t>(h)] < 0) {
            face_of_half[static_cast<std::size_t>(h)] = f;
            faces.back().push_back(h);
            const int twin = h ^ 1;
            const int b = half_tail(edges, twin);
            const auto& rot = rotation[static_cast<std::size_t>(b)];
            const int deg = static_cast<int>(rot.size());
            const int p = position[static_cast<std::size_t>(twin)];
            h = out_half(edges, rot[static_cast<std::size_t>((p - 1 + deg) % deg)], b);
        }
        if (h != static_cast<int>(start)) throw ValidationError("planar map: inconsistent rotation system");
    }
    return faces;
}

std::vector<std::vector<int>> rotations_by_angle(int n, const std::vector<GraphEdge>& edges,
                                                 const std::vector<Point>& direction_of_half) {
    std::vector<std::vector<std::pair<double, int>>> by_angle(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        for (int s = 0; s < 2; ++s) {
            const auto& d = direction_of_half[2 * e + s];
            const int tail = s == 0 ? edges[e].u : edges[e].v;
            by_angle[static_cast<std::size_t>(tail)].push_back({std::atan2(d[1], d[0]), static_cast<int>(e)});
        }
    }
    std::vector<std::vector<int>> rotation(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        auto& list = by_angle[static_cast<std::size_t>(v)];
        std::sort(list.begin(), list.end());
        for (std::size_t t = 1; t < list.size(); ++t)
            if (list[t].first == list[t - 1].first) throw ValidationError("planar map: overlapping edges");
        for (const auto& [angle, e] : list) rotation[static_cast<std::size_t>(v)].push_back(e);
    }
    return rotation;
}

}  // namespace

PlanarMap::PlanarMap(int n_vertices, std::vector<GraphEdge> edges, std::vector<std::vector<int>> rotation)
    : n_(n_vertices), edges_(std::move(edges)), rotation_(std::move(rotation)) {
    if (n_ <= 0) throw ValidationError("planar map: need at least one vertex");
    for (const auto& e : edges_) {
        if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) throw ValidationError("planar map: vertex out of range");
        if (e.is_loop()) throw ValidationError("planar map: self-loops are not supported");
    }
    if (!FiniteGraph(n_, edges_).connected()) throw ValidationError("planar map: graph is disconnected");
    faces_ = trace_faces(n_, edges_, rotation_, face_of_half_);
    if (n_ - edge_count() + face_count() != 2)
        throw ValidationError("planar map: rotation system is not a sphere embedding");
    outer_ = 0;
}

PlanarMap PlanarMap::from_coordinates(std::vector<Point> coords, std::vector<GraphEdge> edges) {
    const int n = static_cast<int>(coords.size());
    std::vector<Point> dir(2 * edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].u < 0 || edges[e].v < 0 || edges[e].u >= n || edges[e].v >= n)
            throw ValidationError("planar map: vertex out of range");
        const auto& a = coords[static_cast<std::size_t>(edges[e].u)];
        const auto& b = coords[static_cast<std::size_t>(edges[e].v)];
        dir[2 * e] = {b[0] - a[0], b[1] - a[1]};
        dir[2 * e + 1] = {a[0] - b[0], a[1] - b[1]};
    }
    PlanarMap map(n, edges, rotations_by_angle(n, edges, dir));
    map.coords_ = std::move(coords);
    int outer = -1;
    for (int f = 0; f < map.face_count(); ++f) {
        double area = 0.0;
        for (int h : map.face(f)) {
            const auto& a = map.coords_[static_cast<std::size_t>(half_tail(map.edges_, h))];
            const auto& b = map.coords_[static_cast<std::size_t>(half_tail(map.edges_, h ^ 1))];
            area += a[0] * b[1] - a[1] * b[0];
        }
        if (area < 0.0) {
            if (outer >= 0) throw ValidationError("planar map: more than one clockwise face");
            outer = f;
        }
    }
    if (outer < 0) {
        if (map.face_count() != 1) throw ValidationError("planar map: no outer face found");
        outer = 0;  // a tree has a single face
    }
    map.outer_ = outer;
    return map;
}

void PlanarMap::set_outer_face(int f) {
    if (f < 0 || f >= face_count()) throw ValidationError("planar map: face out of range");
    outer_ = f;
}

Point PlanarMap::face_point(int f) const {
    if (coords_.empty()) throw ValidationError("planar map: no coordinates");
    Point c{0.0, 0.0};
    const auto& hs = face(f);
    for (int h : hs) {
        const auto& p = coords_[static_cast<std::size_t>(half_tail(edges_, h))];
        c[0] += p[0];
        c[1] += p[1];
    }
    c[0] /= static_cast<double>(hs.size());
    c[1] /= static_cast<double>(hs.size());
    return c;
}

PlanarMap grid_window(int width, int height) {
    if (width < 1 || height < 1) throw ValidationError("grid window: positive size required");
    std::vector<Point> coords;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) coords.push_back({static_cast<double>(x), static_cast<double>(y)});
    std::vector<GraphEdge> edges;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x + 1 < width; ++x) edges.push_back({x + width * y, x + 1 + width * y});
    for (int y = 0; y + 1 < height; ++y)
        for (int x = 0; x < width; ++x) edges.push_back({x + width * y, x + width * (y + 1)});
    return PlanarMap::from_coordinates(std::move(coords), std::move(edges));
}

PlanarMap triangular_window(int width, int height) {
    if (width < 1 || height < 1) throw ValidationError("triangular window: positive size required");
    std::vector<Point> coords;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) coords.push_back({static_cast<double>(x), static_cast<double>(y)});
    std::vector<GraphEdge> edges;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x + 1 < width; ++x) edges.push_back({x + width * y, x + 1 + width * y});
    for (int y = 0; y + 1 < height; ++y)
        for (int x = 0; x < width; ++x) edges.push_back({x + width * y, x + width * (y + 1)});
    for (int y = 0; y + 1 < height; ++y)
        for (int x = 0; x + 1 < width; ++x) edges.push_back({x + width * y, x + 1 + width * (y + 1)});
    return PlanarMap::from_coordinates(std::move(coords), std::move(edges));
}

TemperleyGraph::TemperleyGraph(PlanarMap map, int root_vertex) : map_(std::move(map)), root_(root_vertex) {
    if (root_ < 0 || root_ >= map_.vertex_count()) throw ValidationError("temperley: root vertex out of range");
    bool on_outer = false;
    for (int h : map_.face(map_.outer_face()))
        if (half_tail(map_.edges(), h) == root_) on_outer = true;
    if (!on_outer && map_.vertex_count() > 1) throw ValidationError("temperley: root must lie on the outer face");
    adj_.assign(static_cast<std::size_t>(node_count()), {});
    for (int e = 0; e < map_.edge_count(); ++e) {
        const auto& ed = map_.edges()[static_cast<std::size_t>(e)];
        std::vector<int> ends{primal_node(ed.u), primal_node(ed.v)};
        const int lf = map_.left_face(e), rf = map_.right_face(e);
        if (lf != rf) {
            ends.push_back(dual_node(lf));
            ends.push_back(dual_node(rf));
        }
        for (int w : ends) {
            if (removed(w)) continue;
            adj_[static_cast<std::size_t>(edge_node(e))].push_back(w);
            adj_[static_cast<std::size_t>(w)].push_back(edge_node(e));
        }
    }
}

NodeKind TemperleyGraph::kind(int node) const {
    if (node < 0 || node >= node_count()) throw ValidationError("temperley: node out of range");
    if (node < map_.vertex_count()) return NodeKind::primal;
    if (node < map_.vertex_count() + map_.face_count()) return NodeKind::dual;
    return NodeKind::edge;
}

int TemperleyGraph::element(int node) const {
    switch (kind(node)) {
        case NodeKind::primal: return node;
        case NodeKind::dual: return node - map_.vertex_count();
        default: return node - map_.vertex_count() - map_.face_count();
    }
}

bool TemperleyGraph::removed(int node) const {
    return node == primal_node(root_) || node == dual_node(map_.outer_face());
}

namespace {

// Follows out-edges from every vertex and face; all must end at a root.
void check_acyclic(const TemperleyGraph& tg, const DirectedForestPair& pair) {
    const auto& map = tg.map();
    const int nv = map.vertex_count(), nf = map.face_count();
    std::vector<int> out(static_cast<std::size_t>(nv + nf), -1);
    for (int e = 0; e < map.edge_count(); ++e) {
        const int tail = pair.tail[static_cast<std::size_t>(e)];
        const int node = pair.primal[static_cast<std::size_t>(e)] ? tail : nv + tail;
        out[static_cast<std::size_t>(node)] = e;
    }
    auto head_of = [&](int node) {
        const int e = out[static_cast<std::size_t>(node)];
        const auto& ed = map.edges()[static_cast<std::size_t>(e)];
        if (node < nv) return ed.u == node ? ed.v : ed.u;
        const int f = node - nv;
        return nv + (map.left_face(e) == f ? map.right_face(e) : map.left_face(e));
    };
    // 0 unvisited, 1 on the current path, 2 known to reach a root.
    std::vector<char> state(out.size(), 0);
    state[static_cast<std::size_t>(tg.root_vertex())] = 2;
    state[static_cast<std::size_t>(nv + map.outer_face())] = 2;
    std::vector<int> path;
    for (int s = 0; s < nv + nf; ++s) {
        int v = s;
        while (state[static_cast<std::size_t>(v)] == 0) {
            state[static_cast<std::size_t>(v)] = 1;
            path.push_back(v);
            v = head_of(v);
        }
        if (state[static_cast<std::size_t>(v)] == 1) throw ValidationError("forest pair contains a directed cycle");
        for (int p : path) state[static_cast<std::size_t>(p)] = 2;
        path.clear();
    }
}

void check_pair_shape(const TemperleyGraph& tg, const DirectedForestPair& pair) {
    const auto& map = tg.map();
    const auto ne = static_cast<std::size_t>(map.edge_count());
    if (pair.primal.size() != ne || pair.tail.size() != ne) throw ValidationError("forest pair: wrong edge count");
    const int nv = map.vertex_count();
    std::vector<int> outdeg(static_cast<std::size_t>(nv + map.face_count()), 0);
    for (std::size_t e = 0; e < ne; ++e) {
        const auto& ed = map.edges()[e];
        const int tail = pair.tail[e];
        int node;
        if (pair.primal[e]) {
            if (tail != ed.u && tail != ed.v) throw ValidationError("forest pair: tail is not an endpoint");
            node = tail;
        } else {
            const int lf = map.left_face(static_cast<int>(e)), rf = map.right_face(static_cast<int>(e));
            if (lf == rf) throw ValidationError("forest pair: dual loop in T*");
            if (tail != lf && tail != rf) throw ValidationError("forest pair: tail face does not border the edge");
            node = nv + tail;
        }
        ++outdeg[static_cast<std::size_t>(node)];
    }
    for (std::size_t node = 0; node < outdeg.size(); ++node) {
        const bool root = tg.removed(static_cast<int>(node));
        if (outdeg[node] != (root ? 0 : 1))
            throw ValidationError("forest pair: out-degree " + std::to_string(outdeg[node]) + " at " +
                                  (node < static_cast<std::size_t>(nv) ? "vertex " : "face ") +
                                  std::to_string(node < static_cast<std::size_t>(nv) ? node : node - nv));
    }
}

}  // namespace

DominoTiling forest_pair_to_matching(const TemperleyGraph& tg, const DirectedForestPair& pair) {
    check_pair_shape(tg, pair);
    check_acyclic(tg, pair);
    DominoTiling t;
    t.partner.resize(pair.tail.size());
    for (std::size_t e = 0; e < pair.tail.size(); ++e)
        t.partner[e] = pair.primal[e] ? tg.primal_node(pair.tail[e]) : tg.dual_node(pair.tail[e]);
    return t;
}

DirectedForestPair matching_to_forest_pair(const TemperleyGraph& tg, const DominoTiling& tiling) {
    const auto& map = tg.map();
    const auto ne = static_cast<std::size_t>(map.edge_count());
    if (tiling.partner.size() != ne) throw ValidationError("tiling: wrong edge count");
    std::vector<char> covered(static_cast<std::size_t>(tg.node_count()), 0);
    DirectedForestPair pair;
    pair.primal.resize(ne);
    pair.tail.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        const int w = tiling.partner[e];
        const auto& nb = tg.neighbors(tg.edge_node(static_cast<int>(e)));
        if (std::find(nb.begin(), nb.end(), w) == nb.end()) throw ValidationError("tiling: partner not adjacent");
        if (covered[static_cast<std::size_t>(w)]++) throw ValidationError("tiling: node covered twice");
        pair.primal[e] = tg.kind(w) == NodeKind::primal;
        pair.tail[e] = tg.element(w);
    }
    for (int node = 0; node < map.vertex_count() + map.face_count(); ++node)
        if (!tg.removed(node) && !covered[static_cast<std::size_t>(node)])
            throw ValidationError("tiling: node left uncovered");
    check_acyclic(tg, pair);
    return pair;
}

DirectedForestPair forest_pair_from_tree(const TemperleyGraph& tg, std::span<const int> tree_edges) {
    const auto& map = tg.map();
    const int nv = map.vertex_count(), nf = map.face_count(), ne = map.edge_count();
    if (static_cast<int>(tree_edges.size()) != nv - 1) throw ValidationError("tree: wrong edge count");
    std::vector<char> in_tree(static_cast<std::size_t>(ne), 0);
    for (int e : tree_edges) {
        if (e < 0 || e >= ne || in_tree[static_cast<std::size_t>(e)]) throw ValidationError("tree: bad edge id");
        in_tree[static_cast<std::size_t>(e)] = 1;
    }
    DirectedForestPair pair;
    pair.primal.assign(in_tree.begin(), in_tree.end());
    pair.tail.assign(static_cast<std::size_t>(ne), -1);

    // Orient toward the root, then the dual tree toward the outer face.
    auto orient = [&](int count, int root, bool primal, auto&& neighbours) {
        std::vector<char> seen(static_cast<std::size_t>(count), 0);
        std::queue<int> q;
        q.push(root);
        seen[static_cast<std::size_t>(root)] = 1;
        int reached = 1;
        while (!q.empty()) {
            const int a = q.front();
            q.pop();
            neighbours(a, [&](int e, int b) {
                if (seen[static_cast<std::size_t>(b)]) return;
                seen[static_cast<std::size_t>(b)] = 1;
                ++reached;
                pair.tail[static_cast<std::size_t>(e)] = b;
                q.push(b);
            });
        }
        if (reached != count)
            throw ValidationError(primal ? "tree: edges do not span the window" : "tree: complement is not a dual tree");
    };
    std::vector<std::vector<int>> at_vertex(static_cast<std::size_t>(nv)), at_face(static_cast<std::size_t>(nf));
    for (int e = 0; e < ne; ++e) {
        const auto& ed = map.edges()[static_cast<std::size_t>(e)];
        if (in_tree[static_cast<std::size_t>(e)]) {
            at_vertex[static_cast<std::size_t>(ed.u)].push_back(e);
            at_vertex[static_cast<std::size_t>(ed.v)].push_back(e);
        } else {
            at_face[static_cast<std::size_t>(map.left_face(e))].push_back(e);
            at_face[static_cast<std::size_t>(map.right_face(e))].push_back(e);
        }
    }
    orient(nv, tg.root_vertex(), true, [&](int a, auto&& visit) {
        for (int e : at_vertex[static_cast<std::size_t>(a)]) {
            const auto& ed = map.edges()[static_cast<std::size_t>(e)];
            visit(e, ed.u == a ? ed.v : ed.u);
        }
    });
    orient(nf, map.outer_face(), false, [&](int f, auto&& visit) {
        for (int e : at_face[static_cast<std::size_t>(f)])
            visit(e, map.left_face(e) == f ? map.right_face(e) : map.left_face(e));
    });
    return pair;
}

std::vector<int> tree_of(const DirectedForestPair& pair) {
    std::vector<int> out;
    for (std::size_t e = 0; e < pair.primal.size(); ++e)
        if (pair.primal[e]) out.push_back(static_cast<int>(e));
    return out;
}

std::vector<DominoTiling> enumerate_matchings(const TemperleyGraph& tg, std::size_t budget) {
    const int ne = tg.map().edge_count();
    const int nodes = tg.node_count();
    std::vector<char> matched(static_cast<std::size_t>(nodes), 0);
    // Unprocessed edge nodes still able to cover each vertex or face node.
    std::vector<int> remaining(static_cast<std::size_t>(nodes), 0);
    for (int e = 0; e < ne; ++e)
        for (int w : tg.neighbors(tg.edge_node(e))) ++remaining[static_cast<std::size_t>(w)];
    for (int node = 0; node < tg.map().vertex_count() + tg.map().face_count(); ++node)
        if (!tg.removed(node) && remaining[static_cast<std::size_t>(node)] == 0) return {};

    std::vector<DominoTiling> out;
    DominoTiling current;
    current.partner.assign(static_cast<std::size_t>(ne), -1);
    auto rec = [&](auto&& self, int e) -> void {
        if (e == ne) {
            if (out.size() >= budget) throw BudgetError("matching enumeration budget exceeded");
            out.push_back(current);
            return;
        }
        const auto& nb = tg.neighbors(tg.edge_node(e));
        for (int w : nb) --remaining[static_cast<std::size_t>(w)];
        // Try each free neighbour; prune when some other neighbour is stranded.
        for (int w : nb) {
            if (matched[static_cast<std::size_t>(w)]) continue;
            bool ok = true;
            for (int x : nb)
                if (x != w && !matched[static_cast<std::size_t>(x)] && remaining[static_cast<std::size_t>(x)] == 0)
                    ok = false;
            if (!ok) continue;
            matched[static_cast<std::size_t>(w)] = 1;
            current.partner[static_cast<std::size_t>(e)] = w;
            self(self, e + 1);
            matched[static_cast<std::size_t>(w)] = 0;
        }
        current.partner[static_cast<std::size_t>(e)] = -1;
        for (int w : nb) ++remaining[static_cast<std::size_t>(w)];
    };
    rec(rec, 0);
    return out;
}

int periodic_face_count(const PeriodicLattice& lat, std::span<const Point> class_positions) {
    if (lat.dim() != 2) throw ValidationError("face count: planar lattices are two-dimensional");
    if (static_cast<int>(class_positions.size()) != lat.classes())
        throw ValidationError("face count: one position per class required");
    const int n = 2 * lat.max_offset_norm() + 3;
    const int k = lat.classes();
    const auto& fams = lat.families();
    const int nv = k * n * n;
    std::vector<GraphEdge> edges;
    std::vector<Point> dir;
    for (int z1 = 0; z1 < n; ++z1)
        for (int z0 = 0; z0 < n; ++z0)
            for (const auto& f : fams) {
                const LatticeVertex a{{z0, z1}, f.i};
                const LatticeVertex b{{z0 + f.offset[0], z1 + f.offset[1]}, f.j};
                edges.push_back({torus_vertex_id(lat, n, a), torus_vertex_id(lat, n, b)});
                const auto& pi = class_positions[static_cast<std::size_t>(f.i)];
                const auto& pj = class_positions[static_cast<std::size_t>(f.j)];
                const Point d{f.offset[0] + pj[0] - pi[0], f.offset[1] + pj[1] - pi[1]};
                dir.push_back(d);
                dir.push_back({-d[0], -d[1]});
            }
    std::vector<int> face_of_half;
    const auto faces = trace_faces(nv, edges, rotations_by_angle(nv, edges, dir), face_of_half);
    const int total = static_cast<int>(faces.size());
    if (nv - static_cast<int>(edges.size()) + total != 0)
        throw ValidationError("face count: embedding is not cellular on the torus");
    if (total % (n * n) != 0) throw ValidationError("face count: faces do not tile the torus periodically");
    const int f = total / (n * n);
    if (k + f != static_cast<int>(fams.size())) throw ValidationError("face count: Euler relation k + f = e fails");
    return f;
}

std::vector<std::string> domino_event_ids() {
    return {"square_two_vertical", "vertical_plus_top_horizontal", "single_domino_up"};
}

namespace {

LatticeEdge z2_edge(int x0, int y0, int x1, int y1) { return {{{x0, y0}, 0}, {{x1, y1}, 0}}; }

}  // namespace

DominoEventValue domino_event_probability(std::string_view id) {
    DominoEventValue out;
    out.id = std::string(id);
    out.cross_check = std::numeric_limits<double>::quiet_NaN();
    if (id == "single_domino_up") {
        // Each vertex is matched along exactly one of its four edges, and the
        // four directions are equally likely.
        out.value = 0.25;
        return out;
    }
    if (id == "square_two_vertical") {
        // The contour around the 2x2 square of two vertical dominos: T holds
        // three of the four edges of the unit square at the origin and the
        // path to infinity leaves at the lower right, which by symmetry is a
        // quarter of P(exactly three square edges in T).
        const std::vector<LatticeEdge> square{z2_edge(0, 0, 1, 0), z2_edge(1, 0, 1, 1), z2_edge(1, 1, 0, 1),
                                              z2_edge(0, 1, 0, 0)};
        const auto sq = build_matrix_z2(square);
        double three = 0.0;
        for (std::size_t missing = 0; missing < 4; ++missing) {
            EdgeEvent ev;
            for (std::size_t i = 0; i < 4; ++i) (i == missing ? ev.exclude : ev.include).push_back(i);
            three += event_probability(sq, ev).raw;
        }
        out.value = three / 4.0;
        // By self-duality this is a quarter of the leaf probability of a
        // vertex: P(w1, w2, w3 not in T, w4 in T) for the star at the origin.
        const std::vector<LatticeEdge> star{z2_edge(0, 0, 1, 0), z2_edge(0, 0, 0, 1), z2_edge(0, 0, -1, 0),
                                            z2_edge(0, 0, 0, -1)};
        out.cross_check = event_probability(build_matrix_z2(star), EdgeEvent{{0, 1, 2}, {3}}).raw;
        return out;
    }
    if (id == "vertical_plus_top_horizontal") {
        // Oriented edges (0,0) -> (0,1) -> (1,1): both edges in T, times the
        // chance that a walk from infinity first meets the path at (1,1).
        const std::vector<LatticeEdge> pair{z2_edge(0, 0, 0, 1), z2_edge(0, 1, 1, 1)};
        const double both = event_probability(build_matrix_z2(pair), EdgeEvent::all_included(2)).raw;
        const std::array<std::array<int, 2>, 3> pts{{{0, 0}, {0, 1}, {1, 1}}};
        out.value = both * hitting_from_infinity_z2(pts)[2];
        return out;
    }
    throw ValidationError("unknown domino event: " + std::string(id));
}

DominoPattern catalogued_pattern(std::string_view id) {
    if (id == "single_domino_up") return {{{0, 0, 0, 1}}, {}};
    if (id == "vertical_plus_top_horizontal") return {{{0, 0, 0, 1}, {0, 2, 1, 2}}, {}};
    if (id == "square_two_vertical")
        return {{}, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}}};
    throw ValidationError("unknown domino event: " + std::string(id));
}

std::vector<int> doubled_partners(const TemperleyGraph& tg, const DominoTiling& tiling, int width, int height) {
    const auto& map = tg.map();
    if (!map.has_coordinates()) throw ValidationError("doubled grid: map has no coordinates");
    const int cw = 2 * width - 1, ch = 2 * height - 1;
    auto cell_of = [&](int node) {
        Point p;
        switch (tg.kind(node)) {
            case NodeKind::primal: {
                const auto& q = map.vertex_point(node);
                p = {2 * q[0], 2 * q[1]};
                break;
            }
            case NodeKind::dual: {
                const auto q = map.face_point(tg.element(node));
                p = {2 * q[0], 2 * q[1]};
                break;
            }
            default: {
                const auto& ed = map.edges()[static_cast<std::size_t>(tg.element(node))];
                const auto& a = map.vertex_point(ed.u);
                const auto& b = map.vertex_point(ed.v);
                p = {a[0] + b[0], a[1] + b[1]};
            }
        }
        const int x = static_cast<int>(std::lround(p[0])), y = static_cast<int>(std::lround(p[1]));
        if (x < 0 || y < 0 || x >= cw || y >= ch) throw ValidationError("doubled grid: node outside the window");
        return x + cw * y;
    };
    std::vector<int> partners(static_cast<std::size_t>(cw * ch), -1);
    for (int e = 0; e < map.edge_count(); ++e) {
        const int a = cell_of(tg.edge_node(e));
        const int b = cell_of(tiling.partner[static_cast<std::size_t>(e)]);
        partners[static_cast<std::size_t>(a)] = b;
        partners[static_cast<std::size_t>(b)] = a;
    }
    return partners;
}

bool pattern_at(std::span<const int> partners, int width, int height, int x, int y, const DominoPattern& p) {
    const int cw = 2 * width - 1, ch = 2 * height - 1;
    auto index = [&](int dx, int dy) {
        const int cx = 2 * x + dx, cy = 2 * y + dy;
        if (cx < 0 || cy < 0 || cx >= cw || cy >= ch) return -1;
        return cx + cw * cy;
    };
    for (const auto& d : p.dominos) {
        const int a = index(d[0], d[1]), b = index(d[2], d[3]);
        if (a < 0 || b < 0 || partners[static_cast<std::size_t>(a)] != b) return false;
    }
    if (!p.region.empty()) {
        std::vector<int> cells;
        for (const auto& c : p.region) {
            const int a = index(c[0], c[1]);
            if (a < 0) return false;
            cells.push_back(a);
        }
        std::sort(cells.begin(), cells.end());
        for (int a : cells) {
            const int b = partners[static_cast<std::size_t>(a)];
            if (b < 0 || !std::binary_search(cells.begin(), cells.end(), b)) return false;
        }
    }
    return true;
}

namespace {

// The eight symmetries of the square applied to a pattern about its site.
std::vector<DominoPattern> symmetric_images(const DominoPattern& p) {
    std::vector<DominoPattern> out;
    for (int s = 0; s < 8; ++s) {
        auto map = [s](int x, int y) {
            for (int r = 0; r < s % 4; ++r) {
                const int t = x;
                x = -y;
                y = t;
            }
            if (s >= 4) x = -x;
            return std::array<int, 2>{x, y};
        };
        DominoPattern q;
        for (const auto& d : p.dominos) {
            const auto a = map(d[0], d[1]), b = map(d[2], d[3]);
            q.dominos.push_back({a[0], a[1], b[0], b[1]});
        }
        for (const auto& c : p.region) q.region.push_back(map(c[0], c[1]));
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace

PatternEstimate domino_pattern_frequency(std::string_view id, int n, int margin, std::size_t samples,
                                         std::uint64_t seed, int threads) {
    if (samples < 2) throw ValidationError("pattern frequency: need at least two samples");
    if (margin < 2 || 2 * margin >= n) throw ValidationError("pattern frequency: margin must leave interior sites");
    const auto images = symmetric_images(catalogued_pattern(id));
    const TemperleyGraph tg(grid_window(n, n), 0);
    const FiniteGraph g = tg.map().graph();
    const int lo = margin, hi = n - margin;
    const std::size_t sites = static_cast<std::size_t>(hi - lo) * static_cast<std::size_t>(hi - lo);
    // Every site is scored by the average over the eight images, which share
    // the infinite-volume probability; this cancels the first-order pull of
    // the root corner on orientations.
    const auto fractions = map_indices<double>(samples, threads, [&](std::size_t i) {
        Philox rng(seed, i);
        const auto tree = wilson_sample(g, rng);
        const auto tiling = forest_pair_to_matching(tg, forest_pair_from_tree(tg, tree.edges));
        const auto partners = doubled_partners(tg, tiling, n, n);
        std::size_t hits = 0;
        for (int y = lo; y < hi; ++y)
            for (int x = lo; x < hi; ++x)
                for (const auto& p : images) hits += pattern_at(partners, n, n, x, y, p) ? 1 : 0;
        return static_cast<double>(hits) / static_cast<double>(sites * images.size());
    });
    const double mean = pairwise_sum(fractions) / static_cast<double>(samples);
    double ss = 0.0;
    for (double f : fractions) ss += (f - mean) * (f - mean);
    PatternEstimate r;
    r.estimate = mean;
    r.standard_error = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));
    r.samples = samples;
    r.sites = sites * samples;
    r.seed = seed;
    return r;
}

}  // namespace arboreal
