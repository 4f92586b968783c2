#include "arboreal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace arboreal {

SymbolEvaluator::SymbolEvaluator(const PeriodicLattice& lat)
    : d_(lat.dim()), k_(lat.classes()), degree_(lat.degree()) {
    for (const auto& block : lat.offset_matrices()) {
        Term t;
        t.offset.assign(block.offset.begin(), block.offset.end());
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j)
                if (block.counts(i, j) != 0.0)
                    t.entries.emplace_back(static_cast<std::size_t>(i * k_ + j), block.counts(i, j) / degree_);
        terms_.push_back(std::move(t));
    }
}

void SymbolEvaluator::evaluate(std::span<const double> alpha, CMatrix& out) const {
    if (static_cast<int>(alpha.size()) != d_) throw ValidationError("alpha has the wrong dimension");
    if (out.rows() != static_cast<std::size_t>(k_) || out.cols() != static_cast<std::size_t>(k_))
        out = CMatrix(k_, k_);
    else
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) out(i, j) = 0.0;
    for (const auto& t : terms_) {
        double phase = 0.0;
        for (int s = 0; s < d_; ++s) phase += alpha[s] * t.offset[s];
        const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * phase);
        for (const auto& [flat, c] : t.entries) out(flat / k_, flat % k_) += c * w;
    }
}

CMatrix SymbolEvaluator::operator()(std::span<const double> alpha) const {
    CMatrix q;
    evaluate(alpha, q);
    return q;
}

Symbol q_matrix(const PeriodicLattice& lat, std::span<const double> alpha) {
    return {std::vector<double>(alpha.begin(), alpha.end()), SymbolEvaluator(lat)(alpha)};
}

EigenDecomposition eigh(const CMatrix& hermitian) {
    if (!hermitian.square()) throw ValidationError("eigh: matrix must be square");
    const std::size_t n = hermitian.rows();
    double scale = 0.0;
    for (const auto& z : hermitian.data()) scale = std::max(scale, std::abs(z));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (std::abs(hermitian(i, j) - std::conj(hermitian(j, i))) > 1e-12 * std::max(1.0, scale))
                throw ValidationError("eigh: matrix is not Hermitian");

    CMatrix a = hermitian;
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
    CMatrix v = CMatrix::identity(n);

    auto off_mass = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_mass() > 1e-14 * std::max(1.0, scale); ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                // Phase the (p,q) entry real, then a real Jacobi rotation.
                const Complex phase = a(p, q) / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J has J_pp = c, J_pq = s, J_qp = -s conj(phase), J_qq = c conj(phase).
                const Complex jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
                for (std::size_t r = 0; r < n; ++r) {  // A <- A J
                    const Complex arp = a(r, p), arq = a(r, q);
                    a(r, p) = arp * jpp + arq * jqp;
                    a(r, q) = arp * jpq + arq * jqq;
                }
                for (std::size_t r = 0; r < n; ++r) {  // A <- J* A
                    const Complex apr = a(p, r), aqr = a(q, r);
                    a(p, r) = std::conj(jpp) * apr + std::conj(jqp) * aqr;
                    a(q, r) = std::conj(jpq) * apr + std::conj(jqq) * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t r = 0; r < n; ++r) {  // V <- V J
                    const Complex vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp * jpp + vrq * jqp;
                    v(r, q) = vrp * jpq + vrq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        out.eigenvalues[c] = a(src, src).real();
        std::size_t lead = 0;
        for (std::size_t r = 1; r < n; ++r)
            if (std::abs(v(r, src)) > std::abs(v(lead, src)) + 1e-13) lead = r;
        const Complex fix = std::abs(v(lead, src)) > 0.0 ? std::conj(v(lead, src)) / std::abs(v(lead, src)) : 1.0;
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, src) * fix;
        out.eigenvectors(lead, c) = out.eigenvectors(lead, c).real();
    }
    return out;
}

double char_at_one(const PeriodicLattice& lat, std::span<const double> alpha) {
    const auto eig = eigh(q_matrix(lat, alpha).matrix);
    double p = 1.0;
    for (double l : eig.eigenvalues) p *= (1.0 - l);
    return std::max(p, 0.0);
}

double char_at_one_direct(const PeriodicLattice& lat, std::span<const double> alpha) {
    CMatrix m = q_matrix(lat, alpha).matrix;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = (i == j ? 1.0 : 0.0) - m(i, j);
    return determinant(m).real();
}

}  // namespace arboreal
