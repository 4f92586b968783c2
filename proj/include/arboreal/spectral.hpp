#pragma once

// The Bloch symbol Q(alpha) = D^{-1} sum_x exp(2 pi i alpha.x) R^x of a
// periodic lattice and its Hermitian eigendecomposition.

#include <span>
#include <vector>

#include "arboreal/lattice.hpp"
#include "arboreal/linalg.hpp"

namespace arboreal {

struct Symbol {
    std::vector<double> alpha;
    CMatrix matrix;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    CMatrix eigenvectors;             // column i pairs with eigenvalue i
};

// Precomputes the offset blocks so Q(alpha) can be formed repeatedly
// without touching the lattice again.
class SymbolEvaluator {
public:
    explicit SymbolEvaluator(const PeriodicLattice& lat);

    int classes() const noexcept { return k_; }
    int dim() const noexcept { return d_; }
    double degree() const noexcept { return degree_; }

    // Writes Q(alpha) into out (resized to k x k).
    void evaluate(std::span<const double> alpha, CMatrix& out) const;
    CMatrix operator()(std::span<const double> alpha) const;

private:
    struct Term {
        std::vector<double> offset;
        std::vector<std::pair<std::size_t, double>> entries;  // flat index, count / D
    };
    int d_;
    int k_;
    double degree_;
    std::vector<Term> terms_;
};

Symbol q_matrix(const PeriodicLattice& lat, std::span<const double> alpha);

// Cyclic Jacobi on a Hermitian matrix.  Eigenvalues ascend; each eigenvector
// is normalized so its largest-modulus component is real and positive.
// Throws ValidationError when the input is not Hermitian to 1e-12.
EigenDecomposition eigh(const CMatrix& hermitian);

// det(I - Q(alpha)) as the product of (1 - lambda_i).
double char_at_one(const PeriodicLattice& lat, std::span<const double> alpha);
// Same quantity through a pivoted LU determinant.
double char_at_one_direct(const PeriodicLattice& lat, std::span<const double> alpha);

}  // namespace arboreal
