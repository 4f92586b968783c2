#pragma once

// Exact and Monte Carlo oracles on finite graphs: matrix-tree counts,
// exhaustive enumeration and Wilson's algorithm.

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "arboreal/lattice.hpp"
#include "arboreal/marginals.hpp"
#include "arboreal/random.hpp"

namespace arboreal {

struct SpanningTreeSample {
    std::vector<int> edges;  // sorted edge ids
    int root = 0;
    std::uint64_t seed = 0;
};

struct EstimateReport {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

// Exact count by fraction-free elimination of the reduced Laplacian, after
// identifying boundary classes.  Disconnected input gives 0.
mpz_class spanning_tree_count(const FiniteGraph& g);
constexpr int kExactCountMaxVertices = 512;

// log of the count through a Cholesky factorization; any size.
double spanning_tree_log_count(const FiniteGraph& g);

// log of the spanning-tree count of torus_graph(lat, n), from the eigenvalues
// of Q(m/n) over m in (Z_n)^d.
double torus_tree_count(const PeriodicLattice& lat, int n);

// Every spanning tree once, as sorted edge-id lists.
std::vector<std::vector<int>> enumerate_spanning_trees(const FiniteGraph& g, std::size_t budget = 1000000);

// Uniform spanning tree rooted at vertex 0.  Loop-erased walks start from the
// lowest-indexed vertex not yet in the tree; self-loops are legal steps.
SpanningTreeSample wilson_sample(const FiniteGraph& g, Philox& rng);

// True when the edge-id set satisfies the event over the listed edges.
bool event_holds(std::span<const int> tree_edges, std::span<const EdgeRef> edges, const EdgeEvent& ev);

// Frequency of the event over N trees; sample i uses stream (seed, i).
EstimateReport estimate_event(const FiniteGraph& g, std::span<const EdgeRef> edges, const EdgeEvent& ev,
                              std::size_t samples, std::uint64_t seed, int threads = 1);

}  // namespace arboreal
