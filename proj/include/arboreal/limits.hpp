#pragma once

// Local-limit diagnostics: tree-map counts N(u;t), factorial moments of the
// degree of a vertex in the uniform spanning tree, and samplers for the
// Poisson(1) Galton-Watson tree and its size-biased version P_1.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arboreal/lattice.hpp"
#include "arboreal/random.hpp"

namespace arboreal {

// Rooted tree stored by parent links; vertex 0 is the root.
class RootedTree {
public:
    RootedTree() : parent_{-1}, children_(1), depth_{0} {}
    explicit RootedTree(std::vector<int> parents);

    static RootedTree single_vertex() { return RootedTree(); }
    static RootedTree path(int vertices);
    static RootedTree star(int leaves);

    int size() const noexcept { return static_cast<int>(parent_.size()); }
    int parent(int v) const { return parent_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& children(int v) const { return children_.at(static_cast<std::size_t>(v)); }
    int depth(int v) const { return depth_.at(static_cast<std::size_t>(v)); }
    int height() const;

    // Appends a child of v and returns its id.
    int add_child(int v);
    // t ^ r: the vertices at depth at most r.
    RootedTree truncated(int r) const;

    std::string to_string() const;  // parent list, e.g. "-1,0,0,1"

private:
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_;
};

// Number of injective, root-preserving, adjacency-preserving maps t -> u.
// On trees this is a recursion over children with a subset dynamic program.
std::uint64_t tree_map_count(const RootedTree& u, const RootedTree& t);
// Same count into a rooted graph, by backtracking.
std::uint64_t tree_map_count(const FiniteGraph& u, int root, const RootedTree& t);

// The component of `root` in the edge set, explored to the given depth.
RootedTree rooted_tree_from_edges(const FiniteGraph& g, std::span<const int> edge_ids, int root, int max_depth);

// Poisson(1) Galton-Watson tree truncated at depth r.
RootedTree sample_gw_tree(int r, Philox& rng);
// P_1 ^ r: a spine of length r with an independent Poisson(1) Galton-Watson
// bush at each spine vertex, all truncated at depth r.
RootedTree sample_poisson1_tree(int r, Philox& rng);

struct MomentReport {
    std::string family;
    int n = 0;
    double lambda = 0.0;  // sum over neighbours w of 1 / deg_*(w)
    std::vector<int> s;
    std::vector<double> moments;     // E (deg)_s, the degree being 1 + D
    std::vector<double> targets;     // lambda^s + s lambda^{s-1}
    std::vector<double> deviations;  // moments - targets
};

// Exact E(deg v)_s = s! * sum over s-subsets of incident edges of the
// all-include determinant.  Throws BudgetError past `subset_cap` subsets.
constexpr std::size_t kDefaultSubsetCap = 5000000;
MomentReport factorial_moments_degree(const FiniteGraph& g, int v, int s_max,
                                      std::size_t subset_cap = kDefaultSubsetCap);

FiniteGraph complete_graph(int n);
// v, then x_i, y_i, z_ij (1 <= i <= k, 1 <= j <= 4k): v ~ x_i, v ~ y_i,
// x_i ~ z_ij, y_i ~ z_ij.  Every spanning tree gives v degree at least k.
FiniteGraph counterexample_graph(int k);

// Fixed panel of five rooted trees with at most five vertices.
std::vector<RootedTree> tree_panel();

struct TreeMomentEstimate {
    std::string tree;
    int size = 0;
    double estimate = 0.0;
    double standard_error = 0.0;
};

// Monte Carlo E N(T; t) over uniform spanning trees of g rooted at v.
std::vector<TreeMomentEstimate> tree_moments_ust(const FiniteGraph& g, int v, std::span<const RootedTree> panel,
                                                 std::size_t samples, std::uint64_t seed, int threads = 1);
// Monte Carlo E N(GW ^ r; t); the expectation is 1 for height(t) <= r.
std::vector<TreeMomentEstimate> tree_moments_gw(int r, std::span<const RootedTree> panel, std::size_t samples,
                                                std::uint64_t seed, int threads = 1);
// Monte Carlo E N(P_1 ^ r; t); the expectation is |t| for height(t) <= r.
std::vector<TreeMomentEstimate> tree_moments_poisson1(int r, std::span<const RootedTree> panel,
                                                      std::size_t samples, std::uint64_t seed, int threads = 1);

struct PoissonLimitRow {
    MomentReport moments;
    std::vector<TreeMomentEstimate> trees;
};

// Complete graphs K_n for each n: exact factorial moments at vertex 0 and,
// when samples > 0, Monte Carlo tree-map moments over the panel.
std::vector<PoissonLimitRow> poisson_limit_report(std::span<const int> ns, int s_max,
                                                  std::span<const RootedTree> panel, std::size_t samples,
                                                  std::uint64_t seed, int threads = 1);

}  // namespace arboreal
