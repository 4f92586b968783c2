#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "arboreal/entropy.hpp"
#include "arboreal/error.hpp"
#include "arboreal/finite.hpp"
#include "arboreal/lattice.hpp"
#include "oracles.hpp"

using namespace arboreal;

TEST_CASE("square lattice entropy is 4G/pi") {
    const auto r = topological_entropy(lattices::square(), QuadratureSpec{});
    CHECK(r.converged);
    CHECK(std::abs(r.value - 4 * oracle::catalan_constant() / std::numbers::pi) < 1e-6);
    CHECK(std::abs(r.value - 1.1662) < 1e-3);
}

TEST_CASE("triangular and hexagonal entropies match the series oracle") {
    const double tri = oracle::triangular_entropy();
    const auto t = topological_entropy(lattices::triangular(), QuadratureSpec{});
    CHECK(std::abs(t.value - tri) < 1e-6);
    CHECK(std::abs(t.value - 1.61) < 1e-2);
    // The honeycomb and triangular lattices are dual; per vertex the honeycomb has half the entropy.
    const auto h = topological_entropy(lattices::hexagonal(), QuadratureSpec{});
    CHECK(std::abs(h.value - tri / 2) < 1e-6);
}

TEST_CASE("the line has zero entropy") {
    const auto r = topological_entropy(lattices::cubic(1), QuadratureSpec{});
    CHECK(std::abs(r.value) < 1e-6);
}

TEST_CASE("entropy does not depend on self-loop padding") {
    const auto a = topological_entropy(lattices::square(), QuadratureSpec{});
    const auto b = topological_entropy(with_extra_self_loops(lattices::square(), 3), QuadratureSpec{});
    CHECK(std::abs(a.value - b.value) < 1e-12);
}

TEST_CASE("doubling the resolution stays within the error estimate") {
    for (const auto& lat : {lattices::square(), lattices::triangular()}) {
        QuadratureSpec spec;
        const auto a = topological_entropy(lat, spec);
        spec.base_resolution = 2 * a.resolution;
        const auto b = topological_entropy(lat, spec);
        CHECK(std::abs(a.value - b.value) <= a.error_estimate);
    }
}

TEST_CASE("Laplacian symbol is Hermitian and singular only at the origin") {
    const auto lat = lattices::hexagonal();
    const std::vector<double> zero = {0.0, 0.0}, alpha = {0.2, 0.35};
    const auto l0 = laplacian_symbol(lat, zero);
    CHECK(std::abs(determinant(l0)) < 1e-14);
    const auto l = laplacian_symbol(lat, alpha);
    CHECK(std::abs(l(0, 1) - std::conj(l(1, 0))) < 1e-15);
    CHECK(determinant(l).real() > 0.0);
}

TEST_CASE("per-vertex torus log counts increase toward the entropy") {
    const double h = topological_entropy(lattices::square(), QuadratureSpec{}).value;
    double last = -1.0;
    for (int n : {8, 16, 32}) {
        const double per_vertex = torus_tree_count(lattices::square(), n) / (n * n);
        CHECK(per_vertex > last);
        CHECK(per_vertex < h);
        last = per_vertex;
    }
    CHECK(h - last < 5e-2);
}

TEST_CASE("dimer entropy rescales the tree entropy") {
    CHECK(dimer_entropy(1.2, 1, 2, 1) == doctest::Approx(0.3));
    CHECK(dimer_entropy(1.2, 2, 3, 1) == doctest::Approx(0.4));
    CHECK_THROWS_AS(dimer_entropy(1.0, 1, 3, 1), ValidationError);
}
