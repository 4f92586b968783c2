#pragma once

// Transfer-impedance matrices and the determinant formulas for cylinder
// events of the uniform spanning tree / essential spanning forest.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "arboreal/green.hpp"
#include "arboreal/lattice.hpp"
#include "arboreal/linalg.hpp"
#include "arboreal/quadrature.hpp"

namespace arboreal {

struct TransferMatrix {
    Matrix m;                         // m(i,j) = M(e_i, e_j)
    double error_estimate = 0.0;      // 0 for exact backends
    std::vector<std::string> labels;  // edge descriptions, for reporting

    std::size_t size() const noexcept { return m.rows(); }
};

// Edges listed in `exclude` must be absent from the tree, those in `include`
// present.  Together they cover every row of the matrix exactly once.
struct EdgeEvent {
    std::vector<std::size_t> exclude;
    std::vector<std::size_t> include;

    static EdgeEvent all_included(std::size_t n);
};

struct EventProbability {
    double raw = 0.0;      // the determinant
    double clipped = 0.0;  // raw clamped into [0,1]
};

TransferMatrix build_matrix(const PeriodicLattice& lat, std::span<const LatticeEdge> edges,
                            const QuadratureSpec& spec);
TransferMatrix build_matrix_z2(std::span<const LatticeEdge> edges);
TransferMatrix build_matrix(const FiniteGraph& g, std::span<const EdgeRef> edges);

// det of M with each excluded row i replaced by (delta_ij - M(i,j)).
EventProbability event_probability(const TransferMatrix& tm, const EdgeEvent& ev);

// Probability that exactly s of the matrix's edges are in the tree, for
// s = 0..n.  With the incident edges of a vertex this is its degree law.
std::vector<double> count_distribution(const TransferMatrix& tm);

struct DegreeDistribution {
    std::vector<double> p;  // p[s] = P(deg = s), s = 0..deg_*
    double error_estimate = 0.0;
};

DegreeDistribution degree_distribution(const PeriodicLattice& lat, const LatticeVertex& v,
                                       const QuadratureSpec& spec);
DegreeDistribution degree_distribution_z2(const LatticeVertex& v);
DegreeDistribution degree_distribution(const FiniteGraph& g, int v);

struct TreeDeterminant {
    double closed_form = 0.0;  // (prod a_i)(sum 1/a_i)
    double direct = 0.0;       // LU determinant of the assembled matrix
    Matrix matrix;
};

// The k x k matrix over the edges of a tree on k+1 weighted vertices:
// a_r + a_s on the diagonal for e_i = {r,s}, a_r where e_i and e_j meet at r.
TreeDeterminant tree_structured_det(std::span<const double> weights, std::span<const GraphEdge> shape);

}  // namespace arboreal
