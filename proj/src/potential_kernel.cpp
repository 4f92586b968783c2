#include <cstdlib>
#include <mutex>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "arboreal/green.hpp"

namespace arboreal {

namespace {

// a(x,y) = rational + irrational / pi.
struct KernelValue {
    mpq_class rational;
    mpq_class over_pi;
};

class PotentialKernelTable {
public:
    double value(int x, int y) {
        x = std::abs(x);
        y = std::abs(y);
        if (y > x) std::swap(x, y);
        std::lock_guard<std::mutex> lock(mutex_);
        grow_to(x);
        return rounded_[x][y];
    }

private:
    void grow_to(int radius) {
        if (exact_.empty()) {
            exact_.push_back({{0, 0}});
            exact_.push_back({{1, 0}, {0, 4}});
        }
        while (static_cast<int>(exact_.size()) <= radius) extend();
        const int bits = 128 + 4 * static_cast<int>(exact_.size());
        while (rounded_.size() < exact_.size()) {
            const std::size_t x = rounded_.size();
            std::vector<double> column;
            for (const auto& v : exact_[x]) column.push_back(to_double(v, bits));
            rounded_.push_back(std::move(column));
        }
    }

    const KernelValue& at(int x, int y) const {
        x = std::abs(x);
        y = std::abs(y);
        if (y > x) std::swap(x, y);
        return exact_[x][y];
    }

    // Column x + 1 from columns x and x - 1 by harmonicity at (x, y).
    void extend() {
        const int x = static_cast<int>(exact_.size()) - 1;
        std::vector<KernelValue> next(static_cast<std::size_t>(x + 2));
        mpq_class odd_sum = 0;
        for (int j = 1; j <= x + 1; ++j) odd_sum += mpq_class(1, 2 * j - 1);
        next[x + 1] = {0, 4 * odd_sum};
        next[x + 1].over_pi.canonicalize();
        // 4 a(x,x) = 2 a(x+1,x) + 2 a(x,x-1)
        next[x].rational = 2 * at(x, x).rational - at(x, x - 1).rational;
        next[x].over_pi = 2 * at(x, x).over_pi - at(x, x - 1).over_pi;
        for (int y = x - 1; y >= 0; --y) {
            next[y].rational =
                4 * at(x, y).rational - at(x - 1, y).rational - at(x, y + 1).rational - at(x, y - 1).rational;
            next[y].over_pi =
                4 * at(x, y).over_pi - at(x - 1, y).over_pi - at(x, y + 1).over_pi - at(x, y - 1).over_pi;
        }
        exact_.push_back(std::move(next));
    }

    static double to_double(const KernelValue& v, int bits) {
        mpfr_t pi, r, q;
        mpfr_inits2(bits, pi, r, q, static_cast<mpfr_ptr>(nullptr));
        mpfr_const_pi(pi, MPFR_RNDN);
        mpfr_set_q(r, v.rational.get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(q, v.over_pi.get_mpq_t(), MPFR_RNDN);
        mpfr_div(q, q, pi, MPFR_RNDN);
        mpfr_add(r, r, q, MPFR_RNDN);
        const double out = mpfr_get_d(r, MPFR_RNDN);
        mpfr_clears(pi, r, q, static_cast<mpfr_ptr>(nullptr));
        return out;
    }

    std::mutex mutex_;
    std::vector<std::vector<KernelValue>> exact_;  // exact_[x][y], 0 <= y <= x
    std::vector<std::vector<double>> rounded_;
};

PotentialKernelTable& table() {
    static PotentialKernelTable t;
    return t;
}

}  // namespace

double potential_kernel_z2(int x, int y) { return table().value(x, y); }

}  // namespace arboreal
