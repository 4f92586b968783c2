#include "arboreal/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "arboreal/spectral.hpp"

namespace arboreal {

namespace {

void check_lattice_edge(const PeriodicLattice& lat, const LatticeEdge& e) {
    if (static_cast<int>(e.tail.x.size()) != lat.dim() || static_cast<int>(e.head.x.size()) != lat.dim())
        throw ValidationError("edge " + format_edge(e) + " has the wrong dimension");
    if (e.tail == e.head) throw ValidationError("self-loops carry no current: " + format_edge(e));
    if (!lat.adjacent(e.tail, e.head)) throw ValidationError("not a lattice edge: " + format_edge(e));
}

// phi_e(alpha) written into a k-vector.
void edge_vector(const LatticeEdge& e, std::span<const double> alpha, std::span<Complex> out) {
    std::fill(out.begin(), out.end(), Complex{});
    double ta = 0.0, tb = 0.0;
    for (std::size_t t = 0; t < alpha.size(); ++t) {
        ta += alpha[t] * e.tail.x[t];
        tb += alpha[t] * e.head.x[t];
    }
    out[e.tail.cls] += std::polar(1.0, 2.0 * std::numbers::pi * ta);
    out[e.head.cls] -= std::polar(1.0, 2.0 * std::numbers::pi * tb);
}

}  // namespace

ImpedanceMatrix transfer_impedance_matrix(const PeriodicLattice& lat, std::span<const LatticeEdge> rows,
                                          std::span<const LatticeEdge> cols, const QuadratureSpec& spec) {
    for (const auto& e : rows) check_lattice_edge(lat, e);
    for (const auto& e : cols) check_lattice_edge(lat, e);
    const std::size_t k = static_cast<std::size_t>(lat.classes());
    const std::size_t nr = rows.size(), nc = cols.size();
    const SymbolEvaluator symbol(lat);
    const double inv_degree = 1.0 / lat.degree();
    const std::vector<LatticeEdge> row_edges(rows.begin(), rows.end());
    const std::vector<LatticeEdge> col_edges(cols.begin(), cols.end());

    IntegrandFactory make = [&, k, nr, nc] {
        struct Scratch {
            CMatrix q;
            std::vector<Complex> phi;
            std::vector<Complex> rhs;
            std::vector<std::vector<Complex>> solved;
            std::vector<Complex> col_phi;
        };
        auto s = std::make_shared<Scratch>();
        s->phi.resize(k);
        s->col_phi.resize(nc * k);
        s->solved.resize(nr);
        return TorusIntegrand([&, k, nr, nc, s](std::span<const double> alpha, std::span<double> out) {
            symbol.evaluate(alpha, s->q);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) s->q(i, j) = (i == j ? 1.0 : 0.0) - s->q(i, j);
            const LuFactor<Complex> lu(s->q);
            for (std::size_t r = 0; r < nr; ++r) {
                edge_vector(row_edges[r], alpha, s->phi);
                for (auto& z : s->phi) z = std::conj(z);
                s->solved[r] = lu.solve(s->phi);
            }
            for (std::size_t c = 0; c < nc; ++c)
                edge_vector(col_edges[c], alpha, std::span<Complex>(s->col_phi).subspan(c * k, k));
            for (std::size_t r = 0; r < nr; ++r)
                for (std::size_t c = 0; c < nc; ++c) {
                    Complex acc{};
                    for (std::size_t i = 0; i < k; ++i) acc += s->col_phi[c * k + i] * s->solved[r][i];
                    out[r * nc + c] = acc.real() * inv_degree;
                }
        });
    };

    const TorusIntegral integral = integrate_torus(lat.dim(), nr * nc, make, spec);
    ImpedanceMatrix out;
    out.values = Matrix(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) out.values(r, c) = integral.value[r * nc + c];
    out.error_estimate = integral.error_estimate;
    out.converged = integral.converged;
    out.levels_used = integral.levels_used;
    return out;
}

Impedance transfer_impedance(const PeriodicLattice& lat, const LatticeEdge& e, const LatticeEdge& f,
                             const QuadratureSpec& spec) {
    const LatticeEdge row[] = {e};
    const LatticeEdge col[] = {f};
    const auto m = transfer_impedance_matrix(lat, row, col, spec);
    return {m.values(0, 0), m.error_estimate, m.converged};
}

// ---------------------------------------------------------------------------
// Square lattice, exact

namespace {

std::array<int, 2> planar(const LatticeVertex& v) {
    if (v.x.size() != 2 || v.cls != 0) throw ValidationError("not a Z^2 vertex: " + format_vertex(v));
    return {v.x[0], v.x[1]};
}

void check_z2_edge(const LatticeEdge& e) {
    const auto a = planar(e.tail);
    const auto b = planar(e.head);
    if (std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) != 1)
        throw ValidationError("not a nearest-neighbour Z^2 edge: " + format_edge(e));
}

double kernel(const std::array<int, 2>& from, const std::array<int, 2>& to) {
    return potential_kernel_z2(to[0] - from[0], to[1] - from[1]);
}

}  // namespace

double z2_impedance(const LatticeEdge& e, const LatticeEdge& f) {
    check_z2_edge(e);
    check_z2_edge(f);
    const auto x = planar(e.tail), y = planar(e.head), z = planar(f.tail), w = planar(f.head);
    return (kernel(x, w) + kernel(y, z) - kernel(x, z) - kernel(y, w)) / 4.0;
}

Matrix z2_impedance_matrix(std::span<const LatticeEdge> edges) {
    Matrix m(edges.size(), edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = 0; j < edges.size(); ++j) m(i, j) = z2_impedance(edges[i], edges[j]);
    return m;
}

std::vector<double> hitting_from_infinity_z2(std::span<const std::array<int, 2>> points) {
    const std::size_t n = points.size();
    if (n < 2) throw ValidationError("hitting distribution needs at least two points");
    if (n > 64) throw BudgetError("hitting distribution: at most 64 points (dense Green matrix)");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j]) throw ValidationError("hitting distribution: points must be distinct");
    Matrix green(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) green(i, j) = -kernel(points[i], points[j]);
    // (1,...,1) H^{-1} is the solution of H^T w = 1.
    const LuFactor<double> lu(transpose(green));
    if (lu.singular()) throw ValidationError("hitting distribution: Green matrix is singular");
    const std::vector<double> ones(n, 1.0);
    std::vector<double> w = lu.solve(ones);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(std::abs(total) > 0.0) || !std::isfinite(total))
        throw ValidationError("hitting distribution: degenerate configuration");
    for (double& x : w) x /= total;
    return w;
}

// ---------------------------------------------------------------------------
// Finite graphs

namespace {

constexpr int kDenseLimit = 1500;

}  // namespace

FiniteGreen::FiniteGreen(const FiniteGraph& g, int pinned_vertex) {
    const FiniteGraph merged = g.identify_boundary();
    if (!merged.connected()) throw ValidationError("impedance: graph is disconnected (singular system)");
    graph_ = g;
    map_.resize(static_cast<std::size_t>(g.vertex_count()));
    {
        // identify_boundary relabels in first-appearance order; recover the map.
        std::vector<int> cls(static_cast<std::size_t>(g.vertex_count()));
        std::iota(cls.begin(), cls.end(), 0);
        for (const auto& c : g.boundary_classes())
            for (int v : c) cls[v] = *std::min_element(c.begin(), c.end());
        std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
        int next = 0;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (label[cls[v]] < 0) label[cls[v]] = next++;
            map_[v] = label[cls[v]];
        }
    }
    const int n = merged.vertex_count();
    if (pinned_vertex < 0 || pinned_vertex >= g.vertex_count()) throw ValidationError("pinned vertex out of range");
    pinned_ = map_[pinned_vertex];
    laplacian_.assign(static_cast<std::size_t>(n), {});
    diagonal_.assign(static_cast<std::size_t>(n), 0.0);
    for (const auto& e : merged.edges()) {
        if (e.is_loop()) continue;
        diagonal_[e.u] += 1.0;
        diagonal_[e.v] += 1.0;
        laplacian_[e.u].emplace_back(e.v, -1.0);
        laplacian_[e.v].emplace_back(e.u, -1.0);
    }
    if (n <= kDenseLimit && n > 1) {
        Matrix reduced(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1));
        auto idx = [&](int v) { return v < pinned_ ? v : v - 1; };
        for (int v = 0; v < n; ++v) {
            if (v == pinned_) continue;
            reduced(idx(v), idx(v)) = diagonal_[v];
            for (const auto& [w, c] : laplacian_[v])
                if (w != pinned_) reduced(idx(v), idx(w)) += c;
        }
        factor_ = std::make_unique<Cholesky>(reduced);
    }
}

std::vector<double> FiniteGreen::potential(int x, int y) const {
    const int n = static_cast<int>(diagonal_.size());
    const int mx = map_.at(static_cast<std::size_t>(x)), my = map_.at(static_cast<std::size_t>(y));
    std::vector<double> merged(static_cast<std::size_t>(n), 0.0);
    if (mx != my && n > 1) {
        if (factor_) {
            std::vector<double> rhs(static_cast<std::size_t>(n - 1), 0.0);
            auto idx = [&](int v) { return v < pinned_ ? v : v - 1; };
            if (mx != pinned_) rhs[idx(mx)] += 1.0;
            if (my != pinned_) rhs[idx(my)] -= 1.0;
            const auto sol = factor_->solve(rhs);
            for (int v = 0; v < n; ++v) merged[v] = v == pinned_ ? 0.0 : sol[idx(v)];
        } else {
            // Conjugate gradients on L v = b with b and v in the mean-zero subspace.
            std::vector<double> b(static_cast<std::size_t>(n), 0.0);
            b[mx] = 1.0;
            b[my] = -1.0;
            std::vector<double>& v = merged;
            std::vector<double> r = b, p = b, lp(static_cast<std::size_t>(n));
            double rr = 2.0;
            for (int it = 0; it < 20 * n && rr > 1e-26; ++it) {
                for (int a = 0; a < n; ++a) {
                    double s = diagonal_[a] * p[a];
                    for (const auto& [w, c] : laplacian_[a]) s += c * p[w];
                    lp[a] = s;
                }
                double plp = 0.0;
                for (int a = 0; a < n; ++a) plp += p[a] * lp[a];
                const double step = rr / plp;
                double rr_next = 0.0;
                for (int a = 0; a < n; ++a) {
                    v[a] += step * p[a];
                    r[a] -= step * lp[a];
                    rr_next += r[a] * r[a];
                }
                const double beta = rr_next / rr;
                for (int a = 0; a < n; ++a) p[a] = r[a] + beta * p[a];
                rr = rr_next;
            }
            if (rr > 1e-20) throw ConvergenceError("impedance: conjugate gradients did not converge", std::sqrt(rr));
            const double shift = v[pinned_];
            for (double& a : v) a -= shift;
        }
    }
    std::vector<double> out(map_.size());
    for (std::size_t u = 0; u < map_.size(); ++u) out[u] = merged[map_[u]];
    return out;
}

double FiniteGreen::impedance(const EdgeRef& e, const EdgeRef& f) const {
    if (graph_.edge(e.id).is_loop() || graph_.edge(f.id).is_loop())
        throw ValidationError("impedance: self-loops carry no current");
    const auto v = potential(e.tail(graph_), e.head(graph_));
    return v[f.tail(graph_)] - v[f.head(graph_)];
}

Matrix FiniteGreen::impedance_matrix(std::span<const EdgeRef> edges) const {
    Matrix m(edges.size(), edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (graph_.edge(edges[i].id).is_loop()) throw ValidationError("impedance: self-loops carry no current");
        const auto v = potential(edges[i].tail(graph_), edges[i].head(graph_));
        for (std::size_t j = 0; j < edges.size(); ++j) m(i, j) = v[edges[j].tail(graph_)] - v[edges[j].head(graph_)];
    }
    return m;
}

double finite_impedance(const FiniteGraph& g, const EdgeRef& e, const EdgeRef& f) {
    return FiniteGreen(g).impedance(e, f);
}

}  // namespace arboreal
