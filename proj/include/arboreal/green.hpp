#pragma once

// Transfer impedances M(e,f): the voltage across f when a unit current enters
// at the tail of e and leaves at its head, every edge a one-ohm resistor.
// Three backends: torus quadrature for any periodic lattice, the exact
// potential kernel for the square lattice, and linear solves on finite graphs.

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "arboreal/lattice.hpp"
#include "arboreal/linalg.hpp"
#include "arboreal/quadrature.hpp"

namespace arboreal {

struct ImpedanceMatrix {
    Matrix values;  // values(r, c) = M(rows[r], cols[c])
    double error_estimate = 0.0;
    bool converged = true;
    int levels_used = 0;
};

struct Impedance {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

// M(e,f) = D^{-1} int_{T^d} phi_f(alpha)^T (I - Q(alpha))^{-1} conj(phi_e(alpha)) d alpha
// with phi_e = exp(2 pi i alpha.a) u_i - exp(2 pi i alpha.b) u_j for e = (a,i) -> (b,j).
// All pairs share one pass over the grid.
ImpedanceMatrix transfer_impedance_matrix(const PeriodicLattice& lat, std::span<const LatticeEdge> rows,
                                          std::span<const LatticeEdge> cols, const QuadratureSpec& spec);
Impedance transfer_impedance(const PeriodicLattice& lat, const LatticeEdge& e, const LatticeEdge& f,
                             const QuadratureSpec& spec);

// Potential kernel a(x) of simple random walk on Z^2: a(0) = 0, a(1,0) = 1,
// harmonic off the origin with sum over the four neighbours of 0 equal to 4.
// Evaluated exactly as p + q/pi with rational p, q and rounded once.
double potential_kernel_z2(int x, int y);

// Exact nearest-neighbour Z^2 impedance,
// M(x->y, z->w) = [a(w-x) + a(z-y) - a(z-x) - a(w-y)] / 4.
double z2_impedance(const LatticeEdge& e, const LatticeEdge& f);
Matrix z2_impedance_matrix(std::span<const LatticeEdge> edges);

// Unit-current potentials on a connected finite graph (boundary classes are
// identified first).  Small graphs use a grounded Cholesky factorization,
// larger ones conjugate gradients on the mean-zero subspace.
class FiniteGreen {
public:
    explicit FiniteGreen(const FiniteGraph& g, int pinned_vertex = 0);

    const FiniteGraph& graph() const noexcept { return graph_; }

    // Potential for unit current entering at x and leaving at y.
    std::vector<double> potential(int x, int y) const;
    double impedance(const EdgeRef& e, const EdgeRef& f) const;
    Matrix impedance_matrix(std::span<const EdgeRef> edges) const;

private:
    FiniteGraph graph_;
    std::vector<int> map_;  // original vertex -> identified vertex
    int pinned_;
    std::vector<std::vector<std::pair<int, double>>> laplacian_;  // off-diagonal, loops dropped
    std::vector<double> diagonal_;
    std::unique_ptr<Cholesky> factor_;
};

double finite_impedance(const FiniteGraph& g, const EdgeRef& e, const EdgeRef& f);

// Hitting distribution of a walk from infinity on distinct Z^2 points,
// proportional to (1,...,1) H^{-1} with H(i,j) = -a(x_j - x_i).
std::vector<double> hitting_from_infinity_z2(std::span<const std::array<int, 2>> points);

}  // namespace arboreal
