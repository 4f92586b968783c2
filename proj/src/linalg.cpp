#include "arboreal/linalg.hpp"

namespace arboreal {

Cholesky::Cholesky(const Matrix& a) : l_(a.rows(), a.cols()) {
    if (!a.square()) throw ValidationError("Cholesky: matrix must be square");
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t p = 0; p < j; ++p) d -= l_(j, p) * l_(j, p);
        if (!(d > 0.0)) throw ValidationError("Cholesky: matrix is not positive definite");
        const double ljj = std::sqrt(d);
        l_(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t p = 0; p < j; ++p) s -= l_(i, p) * l_(j, p);
            l_(i, j) = s / ljj;
        }
    }
}

std::vector<double> Cholesky::solve(std::span<const double> b) const {
    const std::size_t n = l_.rows();
    std::vector<double> y(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < i; ++p) y[i] -= l_(i, p) * y[p];
        y[i] /= l_(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t p = i + 1; p < n; ++p) y[i] -= l_(p, i) * y[p];
        y[i] /= l_(i, i);
    }
    return y;
}

double Cholesky::log_determinant() const {
    double s = 0.0;
    for (std::size_t i = 0; i < l_.rows(); ++i) s += 2.0 * std::log(l_(i, i));
    return s;
}

}  // namespace arboreal
