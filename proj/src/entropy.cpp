#include "arboreal/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "arboreal/error.hpp"

namespace arboreal {

namespace {

struct SymbolTerm {
    std::vector<double> offset;
    std::size_t i, j;
    double count;
};

class LaplacianSymbol {
public:
    explicit LaplacianSymbol(const PeriodicLattice& lat) : k_(static_cast<std::size_t>(lat.classes())) {
        for (const auto& block : lat.offset_matrices()) {
            const bool zero = std::all_of(block.offset.begin(), block.offset.end(), [](int v) { return v == 0; });
            for (std::size_t i = 0; i < k_; ++i)
                for (std::size_t j = 0; j < k_; ++j) {
                    const double c = block.counts(i, j);
                    if (c == 0.0 || (zero && i == j)) continue;  // loops cancel exactly
                    terms_.push_back({std::vector<double>(block.offset.begin(), block.offset.end()), i, j, c});
                }
        }
    }

    void evaluate(std::span<const double> alpha, CMatrix& out) const {
        out = CMatrix(k_, k_);
        for (const auto& t : terms_) {
            double theta = 0.0;
            for (std::size_t a = 0; a < alpha.size(); ++a) theta += alpha[a] * t.offset[a];
            theta *= 2.0 * std::numbers::pi;
            if (t.i == t.j) {
                const double s = std::sin(theta / 2.0);
                out(t.i, t.i) += t.count * Complex(2.0 * s * s, -std::sin(theta));
            } else {
                out(t.i, t.i) += t.count;
                out(t.i, t.j) -= t.count * Complex(std::cos(theta), std::sin(theta));
            }
        }
    }

private:
    std::size_t k_;
    std::vector<SymbolTerm> terms_;
};

}  // namespace

CMatrix laplacian_symbol(const PeriodicLattice& lat, std::span<const double> alpha) {
    if (alpha.size() != static_cast<std::size_t>(lat.dim())) throw ValidationError("alpha has wrong dimension");
    CMatrix out;
    LaplacianSymbol(lat).evaluate(alpha, out);
    return out;
}

EntropyResult topological_entropy(const PeriodicLattice& lat, const QuadratureSpec& spec) {
    const auto symbol = std::make_shared<LaplacianSymbol>(lat);
    const double inv_k = 1.0 / lat.classes();
    const IntegrandFactory make = [symbol, inv_k]() -> TorusIntegrand {
        auto scratch = std::make_shared<CMatrix>();
        return [symbol, inv_k, scratch](std::span<const double> alpha, std::span<double> out) {
            symbol->evaluate(alpha, *scratch);
            const double det = determinant(*scratch).real();
            if (!(det > 0.0))
                throw ConvergenceError("entropy integrand lost positivity near alpha = 0", 0.0);
            out[0] = inv_k * std::log(det);
        };
    };
    QuadratureSpec q = spec;
    q.extrapolate = true;
    q.min_cell = 0.0;  // the Laplacian symbol keeps full relative precision near 0
    const auto integral = integrate_torus(lat.dim(), 1, make, q);
    EntropyResult r;
    r.value = integral.value[0];
    r.error_estimate = integral.error_estimate;
    r.resolution = integral.resolution;
    r.levels_used = integral.levels_used;
    r.converged = integral.converged;
    return r;
}

double dimer_entropy(double tree_entropy, int k, int e, int f) {
    if (k <= 0 || e <= 0 || f <= 0) throw ValidationError("dimer entropy: k, e, f must be positive");
    if (k + f != e) throw ValidationError("dimer entropy: Euler relation k + f = e fails");
    return k * tree_entropy / (2.0 * e);
}

}  // namespace arboreal
