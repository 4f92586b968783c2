#pragma once

// Topological entropy of the essential spanning forest process,
// H = (1/k) int_{T^d} log(D^k det(I - Q(alpha))) d alpha, in nats per vertex.

#include <span>

#include "arboreal/lattice.hpp"
#include "arboreal/linalg.hpp"
#include "arboreal/quadrature.hpp"

namespace arboreal {

struct EntropyResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int resolution = 0;
    int levels_used = 0;
    bool converged = false;
};

// L(alpha) = D (I - Q(alpha)), assembled term by term so that same-class
// contributions enter as 1 - exp(i theta) without cancellation near 0.
CMatrix laplacian_symbol(const PeriodicLattice& lat, std::span<const double> alpha);

EntropyResult topological_entropy(const PeriodicLattice& lat, const QuadratureSpec& spec);

// Dimer entropy per vertex of the Temperleyan graph: k H / (2e), where the
// fundamental domain has k vertices, e edges and f faces with k + f = e.
double dimer_entropy(double tree_entropy, int k, int e, int f);

}  // namespace arboreal
