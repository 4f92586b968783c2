#include "arboreal/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace arboreal {

namespace {

using json = nlohmann::json;

IntVec negate(IntVec v) {
    for (int& c : v) c = -c;
    return v;
}

bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](int c) { return c == 0; });
}

int positive_mod(long long a, int n) {
    long long r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

// True when the integer vectors generate all of Z^d.
bool generates_full_lattice(std::vector<std::vector<long long>> rows, int d) {
    std::size_t pivot_row = 0;
    for (int c = 0; c < d; ++c) {
        // Euclid on column c across rows pivot_row.. until one nonzero remains.
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t r = pivot_row; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                if (best == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[best][c])) best = r;
            }
            if (best == rows.size()) return false;
            std::swap(rows[pivot_row], rows[best]);
            bool reduced = true;
            for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                const long long q = rows[r][c] / rows[pivot_row][c];
                for (int t = 0; t < d; ++t) rows[r][t] -= q * rows[pivot_row][t];
                if (rows[r][c] != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (std::llabs(rows[pivot_row][c]) != 1) return false;
        ++pivot_row;
    }
    return true;
}

void check_connected(int d, int k, const std::vector<EdgeFamily>& families) {
    // Place each class at an integer potential via BFS on the class graph;
    // every family then closes a cycle whose displacement must, together,
    // span Z^d.
    std::vector<std::vector<std::pair<int, IntVec>>> adj(static_cast<std::size_t>(k));
    for (const auto& f : families) {
        adj[f.i].emplace_back(f.j, f.offset);
        adj[f.j].emplace_back(f.i, negate(f.offset));
    }
    std::vector<IntVec> potential(static_cast<std::size_t>(k));
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    std::queue<int> frontier;
    potential[0] = IntVec(static_cast<std::size_t>(d), 0);
    seen[0] = true;
    frontier.push(0);
    while (!frontier.empty()) {
        const int c = frontier.front();
        frontier.pop();
        for (const auto& [nb, off] : adj[c]) {
            if (seen[nb]) continue;
            seen[nb] = true;
            potential[nb] = potential[c];
            for (int t = 0; t < d; ++t) potential[nb][t] += off[t];
            frontier.push(nb);
        }
    }
    for (int c = 0; c < k; ++c)
        if (!seen[c]) throw ValidationError("lattice is disconnected: class " + std::to_string(c + 1) + " unreachable");

    std::vector<std::vector<long long>> cycles;
    for (const auto& f : families) {
        std::vector<long long> v(static_cast<std::size_t>(d));
        for (int t = 0; t < d; ++t) v[t] = potential[f.i][t] + f.offset[t] - potential[f.j][t];
        if (std::any_of(v.begin(), v.end(), [](long long x) { return x != 0; })) cycles.push_back(std::move(v));
    }
    if (!generates_full_lattice(std::move(cycles), d))
        throw ValidationError("lattice is disconnected: translations reachable from the origin do not span Z^d");
}

}  // namespace

// ---------------------------------------------------------------------------
// Edges and families

LatticeEdge LatticeEdge::translated(std::span<const int> by) const {
    LatticeEdge e = *this;
    for (std::size_t t = 0; t < by.size(); ++t) {
        e.tail.x[t] += by[t];
        e.head.x[t] += by[t];
    }
    return e;
}

bool EdgeFamily::is_loop() const { return i == j && is_zero(offset); }

EdgeFamily EdgeFamily::reversed() const { return {j, i, negate(offset)}; }

EdgeFamily EdgeFamily::canonical() const { return std::min(*this, reversed()); }

// ---------------------------------------------------------------------------
// PeriodicLattice

int PeriodicLattice::non_loop_degree(int cls) const {
    int deg = 0;
    for (const auto& f : families_) {
        if (f.i == cls) ++deg;
        if (f.j == cls) ++deg;
    }
    return deg;
}

int PeriodicLattice::max_offset_norm() const {
    int m = 0;
    for (const auto& f : families_)
        for (int c : f.offset) m = std::max(m, std::abs(c));
    return m;
}

std::vector<OffsetBlock> PeriodicLattice::offset_matrices() const {
    std::map<IntVec, Matrix> blocks;
    auto block = [&](const IntVec& x) -> Matrix& {
        auto it = blocks.find(x);
        if (it == blocks.end()) it = blocks.emplace(x, Matrix(k_, k_)).first;
        return it->second;
    };
    for (const auto& f : families_) {
        block(f.offset)(f.i, f.j) += 1.0;
        block(negate(f.offset))(f.j, f.i) += 1.0;
    }
    const IntVec zero(static_cast<std::size_t>(d_), 0);
    for (int c = 0; c < k_; ++c)
        if (self_loops_[c] > 0) block(zero)(c, c) += self_loops_[c];
    std::vector<OffsetBlock> out;
    out.reserve(blocks.size());
    for (auto& [x, m] : blocks) out.push_back({x, std::move(m)});
    return out;
}

std::vector<LatticeEdge> PeriodicLattice::incident_edges(const LatticeVertex& v) const {
    std::vector<LatticeEdge> out;
    for (const auto& f : families_) {
        if (f.i == v.cls) {
            LatticeVertex h{v.x, f.j};
            for (int t = 0; t < d_; ++t) h.x[t] += f.offset[t];
            out.push_back({v, std::move(h)});
        }
        if (f.j == v.cls) {
            LatticeVertex h{v.x, f.i};
            for (int t = 0; t < d_; ++t) h.x[t] -= f.offset[t];
            out.push_back({v, std::move(h)});
        }
    }
    return out;
}

bool PeriodicLattice::adjacent(const LatticeVertex& a, const LatticeVertex& b) const {
    if (static_cast<int>(a.x.size()) != d_ || static_cast<int>(b.x.size()) != d_) return false;
    IntVec diff(static_cast<std::size_t>(d_));
    for (int t = 0; t < d_; ++t) diff[t] = b.x[t] - a.x[t];
    const EdgeFamily want = EdgeFamily{a.cls, b.cls, diff}.canonical();
    return std::binary_search(families_.begin(), families_.end(), want);
}

std::string PeriodicLattice::to_json() const {
    json j;
    j["d"] = d_;
    j["k"] = k_;
    if (!name_.empty()) j["name"] = name_;
    j["edges"] = json::array();
    for (const auto& f : families_) j["edges"].push_back({{"i", f.i + 1}, {"j", f.j + 1}, {"offset", f.offset}});
    j["self_loops"] = self_loops_;
    return j.dump();
}

RawLattice parse_raw_lattice(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("lattice JSON: ") + e.what());
    }
    auto require_int = [](const json& obj, const char* key, const std::string& where) {
        if (!obj.is_object() || !obj.contains(key) || !obj[key].is_number_integer())
            throw ValidationError(where + ": missing integer field '" + key + "'");
        return obj[key].get<int>();
    };
    RawLattice raw;
    raw.d = require_int(j, "d", "lattice");
    raw.k = require_int(j, "k", "lattice");
    if (raw.d <= 0) throw ValidationError("lattice: d must be positive");
    if (raw.k <= 0) throw ValidationError("lattice: k must be positive");
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ValidationError("lattice: 'name' must be a string");
        raw.name = j["name"].get<std::string>();
    }
    if (!j.contains("edges") || !j["edges"].is_array()) throw ValidationError("lattice: missing array 'edges'");
    std::vector<int> loops(static_cast<std::size_t>(raw.k), 0);
    bool any_loops = false;
    for (std::size_t n = 0; n < j["edges"].size(); ++n) {
        const json& e = j["edges"][n];
        const std::string where = "edges[" + std::to_string(n) + "]";
        EdgeFamily f;
        f.i = require_int(e, "i", where) - 1;
        f.j = require_int(e, "j", where) - 1;
        if (f.i < 0 || f.i >= raw.k || f.j < 0 || f.j >= raw.k)
            throw ValidationError(where + ": class index out of range 1.." + std::to_string(raw.k));
        if (!e.contains("offset") || !e["offset"].is_array())
            throw ValidationError(where + ": missing array 'offset'");
        for (const auto& c : e["offset"]) {
            if (!c.is_number_integer()) throw ValidationError(where + ": offset entries must be integers");
            f.offset.push_back(c.get<int>());
        }
        if (static_cast<int>(f.offset.size()) != raw.d)
            throw ValidationError(where + ": offset length " + std::to_string(f.offset.size()) + " != d = " +
                                  std::to_string(raw.d));
        if (f.is_loop()) {
            ++loops[f.i];
            any_loops = true;
        } else {
            raw.edges.push_back(std::move(f));
        }
    }
    if (j.contains("self_loops")) {
        const json& s = j["self_loops"];
        if (!s.is_array() || static_cast<int>(s.size()) != raw.k)
            throw ValidationError("lattice: 'self_loops' must be an array of length k");
        for (int c = 0; c < raw.k; ++c) {
            if (!s[c].is_number_integer() || s[c].get<int>() < 0)
                throw ValidationError("lattice: 'self_loops' entries must be nonnegative integers");
            loops[c] += s[c].get<int>();
        }
        any_loops = true;
    }
    if (any_loops) raw.self_loops = std::move(loops);
    return raw;
}

PeriodicLattice regularize(const RawLattice& raw) {
    if (raw.d <= 0) throw ValidationError("lattice: d must be positive");
    if (raw.k <= 0) throw ValidationError("lattice: k must be positive");
    PeriodicLattice lat;
    lat.d_ = raw.d;
    lat.k_ = raw.k;
    lat.name_ = raw.name;
    std::vector<int> loops(static_cast<std::size_t>(raw.k), 0);
    if (!raw.self_loops.empty()) {
        if (static_cast<int>(raw.self_loops.size()) != raw.k) throw ValidationError("self_loops must have length k");
        loops = raw.self_loops;
    }
    for (const auto& f : raw.edges) {
        if (f.i < 0 || f.i >= raw.k || f.j < 0 || f.j >= raw.k) throw ValidationError("class index out of range");
        if (static_cast<int>(f.offset.size()) != raw.d) throw ValidationError("offset length must equal d");
        if (f.is_loop()) {
            ++loops[f.i];
            continue;
        }
        lat.families_.push_back(f.canonical());
    }
    std::sort(lat.families_.begin(), lat.families_.end());

    std::vector<int> total(static_cast<std::size_t>(raw.k));
    for (int c = 0; c < raw.k; ++c) {
        const int deg = lat.non_loop_degree(c);
        if (deg == 0) throw ValidationError("class " + std::to_string(c + 1) + " has no non-loop edges");
        total[c] = deg + loops[c];
    }
    check_connected(raw.d, raw.k, lat.families_);

    const int max_total = *std::max_element(total.begin(), total.end());
    const bool already_regular = std::all_of(total.begin(), total.end(), [&](int t) { return t == max_total; }) &&
                                 std::all_of(loops.begin(), loops.end(), [](int l) { return l >= 1; });
    lat.degree_ = already_regular ? max_total : max_total + 1;
    for (int c = 0; c < raw.k; ++c) loops[c] += lat.degree_ - total[c];
    lat.self_loops_ = std::move(loops);
    return lat;
}

PeriodicLattice parse_lattice(std::string_view json_text) { return regularize(parse_raw_lattice(json_text)); }

PeriodicLattice load_lattice(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open lattice file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_lattice(buf.str());
}

PeriodicLattice with_extra_self_loops(const PeriodicLattice& lat, int per_class) {
    if (per_class < 0) throw ValidationError("extra self-loops must be nonnegative");
    PeriodicLattice out = lat;
    for (int& l : out.self_loops_) l += per_class;
    out.degree_ += per_class;
    return out;
}

namespace lattices {

PeriodicLattice square() {
    return regularize({2, 1, {{0, 0, {1, 0}}, {0, 0, {0, 1}}}, {}, "square"});
}

PeriodicLattice triangular() {
    return regularize({2, 1, {{0, 0, {1, 0}}, {0, 0, {0, 1}}, {0, 0, {1, 1}}}, {}, "triangular"});
}

PeriodicLattice hexagonal() {
    return regularize({2, 2, {{0, 1, {0, 0}}, {0, 1, {-1, 0}}, {0, 1, {0, -1}}}, {}, "hexagonal"});
}

PeriodicLattice cubic(int d) {
    if (d <= 0) throw ValidationError("cubic lattice: d must be positive");
    RawLattice raw{d, 1, {}, {}, "Z" + std::to_string(d)};
    for (int t = 0; t < d; ++t) {
        IntVec x(static_cast<std::size_t>(d), 0);
        x[t] = 1;
        raw.edges.push_back({0, 0, x});
    }
    return regularize(raw);
}

}  // namespace lattices

// ---------------------------------------------------------------------------
// FiniteGraph

FiniteGraph::FiniteGraph(int n_vertices, std::vector<GraphEdge> edges, std::vector<std::vector<int>> boundary_classes)
    : n_(n_vertices), edges_(std::move(edges)), boundary_(std::move(boundary_classes)) {
    if (n_ < 0) throw ValidationError("graph: negative vertex count");
    incident_.assign(static_cast<std::size_t>(n_), {});
    for (std::size_t id = 0; id < edges_.size(); ++id) {
        const auto& e = edges_[id];
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw ValidationError("graph: edge " + std::to_string(id) + " has an endpoint out of range");
        incident_[e.u].push_back(static_cast<int>(id));
        if (!e.is_loop()) incident_[e.v].push_back(static_cast<int>(id));
    }
    std::vector<bool> used(static_cast<std::size_t>(n_), false);
    for (const auto& cls : boundary_) {
        for (int v : cls) {
            if (v < 0 || v >= n_) throw ValidationError("graph: boundary vertex out of range");
            if (used[v]) throw ValidationError("graph: boundary classes must be disjoint");
            used[v] = true;
        }
    }
}

int FiniteGraph::degree(int v) const { return static_cast<int>(incident(v).size()); }

int FiniteGraph::non_loop_degree(int v) const {
    int d = 0;
    for (int id : incident(v))
        if (!edges_[id].is_loop()) ++d;
    return d;
}

int FiniteGraph::other_end(int edge_id, int v) const {
    const auto& e = edge(edge_id);
    if (e.u == v) return e.v;
    if (e.v == v) return e.u;
    throw ValidationError("graph: vertex is not an endpoint of the edge");
}

bool FiniteGraph::connected() const {
    if (n_ <= 1) return true;
    DisjointSets ds(n_);
    int components = n_;
    for (const auto& e : edges_)
        if (ds.unite(e.u, e.v)) --components;
    return components == 1;
}

bool FiniteGraph::regular() const {
    for (int v = 1; v < n_; ++v)
        if (degree(v) != degree(0)) return false;
    return true;
}

FiniteGraph FiniteGraph::identify_boundary() const {
    if (boundary_.empty()) return *this;
    DisjointSets ds(n_);
    for (const auto& cls : boundary_)
        for (std::size_t t = 1; t < cls.size(); ++t) ds.unite(cls[0], cls[t]);
    std::vector<int> relabel(static_cast<std::size_t>(n_), -1);
    int next = 0;
    for (int v = 0; v < n_; ++v) {
        const int r = ds.find(v);
        if (relabel[r] < 0) relabel[r] = next++;
        relabel[v] = relabel[r];
    }
    std::vector<GraphEdge> edges;
    edges.reserve(edges_.size());
    for (const auto& e : edges_) edges.push_back({relabel[e.u], relabel[e.v]});
    return FiniteGraph(next, std::move(edges));
}

FiniteGraph FiniteGraph::regularized() const {
    int max_deg = 0;
    for (int v = 0; v < n_; ++v) max_deg = std::max(max_deg, degree(v));
    std::vector<GraphEdge> edges = edges_;
    for (int v = 0; v < n_; ++v)
        for (int t = degree(v); t < max_deg + 1; ++t) edges.push_back({v, v});
    return FiniteGraph(n_, std::move(edges), boundary_);
}

FiniteGraph parse_graph(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw ValidationError("graph: missing integer field 'n'");
    if (!j.contains("edges") || !j["edges"].is_array()) throw ValidationError("graph: missing array 'edges'");
    std::vector<GraphEdge> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ValidationError("graph: each edge must be a pair of integers");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    std::vector<std::vector<int>> boundary;
    if (j.contains("boundary")) boundary = j["boundary"].get<std::vector<std::vector<int>>>();
    return FiniteGraph(j["n"].get<int>(), std::move(edges), std::move(boundary));
}

FiniteGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open graph file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

std::string graph_to_json(const FiniteGraph& g) {
    json j;
    j["n"] = g.vertex_count();
    j["edges"] = json::array();
    for (const auto& e : g.edges()) j["edges"].push_back({e.u, e.v});
    if (!g.boundary_classes().empty()) j["boundary"] = g.boundary_classes();
    return j.dump();
}

Minor contract(const FiniteGraph& g, std::span<const int> edge_ids) {
    DisjointSets ds(g.vertex_count());
    std::vector<bool> removed(static_cast<std::size_t>(g.edge_count()), false);
    for (int id : edge_ids) {
        const auto& e = g.edge(id);
        if (removed[id]) throw ValidationError("contract: edge listed twice");
        if (!ds.unite(e.u, e.v)) throw ValidationError("contract: edges contain a cycle");
        removed[id] = true;
    }
    Minor m;
    m.vertex_map.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    int next = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const int r = ds.find(v);
        if (m.vertex_map[r] < 0) m.vertex_map[r] = next++;
        m.vertex_map[v] = m.vertex_map[r];
    }
    std::vector<GraphEdge> edges;
    m.edge_map.assign(static_cast<std::size_t>(g.edge_count()), -1);
    for (int id = 0; id < g.edge_count(); ++id) {
        if (removed[id]) continue;
        const auto& e = g.edge(id);
        m.edge_map[id] = static_cast<int>(edges.size());
        edges.push_back({m.vertex_map[e.u], m.vertex_map[e.v]});
    }
    std::vector<std::vector<int>> boundary;
    for (const auto& cls : g.boundary_classes()) {
        std::vector<int> mapped;
        for (int v : cls) {
            const int nv = m.vertex_map[v];
            if (std::find(mapped.begin(), mapped.end(), nv) == mapped.end()) mapped.push_back(nv);
        }
        boundary.push_back(std::move(mapped));
    }
    m.graph = FiniteGraph(next, std::move(edges), std::move(boundary));
    return m;
}

Minor delete_edges(const FiniteGraph& g, std::span<const int> edge_ids) {
    std::vector<bool> removed(static_cast<std::size_t>(g.edge_count()), false);
    for (int id : edge_ids) {
        if (id < 0 || id >= g.edge_count()) throw ValidationError("delete: edge id out of range");
        if (removed[id]) throw ValidationError("delete: edge listed twice");
        removed[id] = true;
    }
    Minor m;
    m.vertex_map.resize(static_cast<std::size_t>(g.vertex_count()));
    std::iota(m.vertex_map.begin(), m.vertex_map.end(), 0);
    m.edge_map.assign(static_cast<std::size_t>(g.edge_count()), -1);
    std::vector<GraphEdge> edges;
    for (int id = 0; id < g.edge_count(); ++id) {
        if (removed[id]) continue;
        m.edge_map[id] = static_cast<int>(edges.size());
        edges.push_back(g.edge(id));
    }
    m.graph = FiniteGraph(g.vertex_count(), std::move(edges), g.boundary_classes());
    if (!m.graph.connected()) throw ValidationError("delete: removal disconnects the graph");
    return m;
}

// ---------------------------------------------------------------------------
// Windows cut from a lattice

namespace {

int cell_count(int n, int d) {
    long long c = 1;
    for (int t = 0; t < d; ++t) c *= n;
    if (c > (1LL << 30)) throw ValidationError("window too large");
    return static_cast<int>(c);
}

void check_torus_size(const PeriodicLattice& lat, int n) {
    if (n <= 2 * lat.max_offset_norm())
        throw ValidationError("torus size n = " + std::to_string(n) + " must exceed twice the max offset norm (" +
                              std::to_string(lat.max_offset_norm()) + ")");
}

int cell_index(std::span<const int> z, int n) {
    int idx = 0;
    for (std::size_t t = z.size(); t-- > 0;) idx = idx * n + positive_mod(z[t], n);
    return idx;
}

}  // namespace

int torus_vertex_id(const PeriodicLattice& lat, int n, const LatticeVertex& v) {
    if (static_cast<int>(v.x.size()) != lat.dim() || v.cls < 0 || v.cls >= lat.classes())
        throw ValidationError("torus vertex: wrong dimension or class");
    return v.cls + lat.classes() * cell_index(v.x, n);
}

LatticeVertex torus_vertex(const PeriodicLattice& lat, int n, int id) {
    LatticeVertex v;
    v.cls = id % lat.classes();
    int cell = id / lat.classes();
    v.x.resize(static_cast<std::size_t>(lat.dim()));
    for (int t = 0; t < lat.dim(); ++t) {
        v.x[t] = cell % n;
        cell /= n;
    }
    return v;
}

FiniteGraph torus_graph(const PeriodicLattice& lat, int n) {
    check_torus_size(lat, n);
    const int d = lat.dim();
    const int cells = cell_count(n, d);
    std::vector<GraphEdge> edges;
    edges.reserve(static_cast<std::size_t>(cells) * (lat.families().size() + lat.classes()));
    IntVec z(static_cast<std::size_t>(d), 0);
    for (int c = 0; c < cells; ++c) {
        int rem = c;
        for (int t = 0; t < d; ++t) {
            z[t] = rem % n;
            rem /= n;
        }
        for (const auto& f : lat.families()) {
            LatticeVertex head{z, f.j};
            for (int t = 0; t < d; ++t) head.x[t] += f.offset[t];
            edges.push_back({torus_vertex_id(lat, n, {z, f.i}), torus_vertex_id(lat, n, head)});
        }
    }
    const int nv = cells * lat.classes();
    for (int v = 0; v < nv; ++v)
        for (int l = 0; l < lat.self_loops()[v % lat.classes()]; ++l) edges.push_back({v, v});
    return FiniteGraph(nv, std::move(edges));
}

int torus_edge_id(const PeriodicLattice& lat, int n, const LatticeEdge& e) {
    check_torus_size(lat, n);
    const int d = lat.dim();
    const auto& fam = lat.families();
    for (std::size_t f = 0; f < fam.size(); ++f) {
        for (const LatticeEdge& cand : {e, e.reversed()}) {
            if (cand.tail.cls != fam[f].i || cand.head.cls != fam[f].j) continue;
            bool match = true;
            for (int t = 0; t < d && match; ++t)
                match = positive_mod(static_cast<long long>(cand.head.x[t]) - cand.tail.x[t] - fam[f].offset[t], n) == 0;
            if (match) return cell_index(cand.tail.x, n) * static_cast<int>(fam.size()) + static_cast<int>(f);
        }
    }
    throw ValidationError("edge " + format_edge(e) + " is not an edge of the lattice");
}

int box_vertex_id(const PeriodicLattice& lat, int n, const LatticeVertex& v) {
    const int side = 2 * n + 1;
    int idx = 0;
    for (std::size_t t = v.x.size(); t-- > 0;) {
        if (std::abs(v.x[t]) > n) return -1;
        idx = idx * side + (v.x[t] + n);
    }
    return v.cls + lat.classes() * idx;
}

FiniteGraph box_graph(const PeriodicLattice& lat, int n) {
    if (n < 0) throw ValidationError("box radius must be nonnegative");
    const int d = lat.dim();
    const int side = 2 * n + 1;
    const int cells = cell_count(side, d);
    std::vector<GraphEdge> edges;
    IntVec z(static_cast<std::size_t>(d));
    for (int c = 0; c < cells; ++c) {
        int rem = c;
        for (int t = 0; t < d; ++t) {
            z[t] = rem % side - n;
            rem /= side;
        }
        for (const auto& f : lat.families()) {
            LatticeVertex head{z, f.j};
            for (int t = 0; t < d; ++t) head.x[t] += f.offset[t];
            const int h = box_vertex_id(lat, n, head);
            if (h >= 0) edges.push_back({box_vertex_id(lat, n, {z, f.i}), h});
        }
    }
    const int nv = cells * lat.classes();
    for (int v = 0; v < nv; ++v)
        for (int l = 0; l < lat.self_loops()[v % lat.classes()]; ++l) edges.push_back({v, v});
    return FiniteGraph(nv, std::move(edges));
}

// ---------------------------------------------------------------------------
// Text forms

std::string format_vertex(const LatticeVertex& v) {
    std::string s;
    for (int c : v.x) s += std::to_string(c) + ",";
    return s + std::to_string(v.cls + 1);
}

std::string format_edge(const LatticeEdge& e) { return format_vertex(e.tail) + ":" + format_vertex(e.head); }

LatticeVertex parse_vertex(std::string_view text, int d) {
    std::vector<int> nums;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view tok = text.substr(pos, comma - pos);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
            throw ValidationError("malformed vertex '" + std::string(text) + "'");
        nums.push_back(value);
        pos = comma + 1;
    }
    if (static_cast<int>(nums.size()) != d + 1)
        throw ValidationError("vertex '" + std::string(text) + "' needs " + std::to_string(d) +
                              " coordinates and a class index");
    LatticeVertex v;
    v.x.assign(nums.begin(), nums.end() - 1);
    v.cls = nums.back() - 1;
    if (v.cls < 0) throw ValidationError("vertex class index is 1-based");
    return v;
}

LatticeEdge parse_edge(std::string_view text, int d) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ValidationError("edge '" + std::string(text) + "' must be tail:head");
    return {parse_vertex(text.substr(0, colon), d), parse_vertex(text.substr(colon + 1), d)};
}

}  // namespace arboreal
