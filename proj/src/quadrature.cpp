#include "arboreal/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "arboreal/error.hpp"

namespace arboreal {

namespace {

constexpr std::size_t kBlockCells = 2048;

// Cells of a cube of `per_dim` cells of size h centred on the origin,
// optionally skipping the centred sub-cube of half-width `hole`.
struct Region {
    int d;
    long long per_dim;
    double h;
    double hole;  // 0 for none

    long long cell_count() const {
        long long c = 1;
        for (int t = 0; t < d; ++t) c *= per_dim;
        return c;
    }
};

std::vector<double> integrate_region(const Region& region, std::size_t width, const IntegrandFactory& make,
                                     int threads) {
    const long long cells = region.cell_count();
    const std::size_t blocks = static_cast<std::size_t>((cells + kBlockCells - 1) / kBlockCells);
    std::vector<double> block_sums(blocks * width, 0.0);
    std::atomic<std::size_t> next{0};
    const double half = region.per_dim * region.h / 2.0;

    auto worker = [&] {
        TorusIntegrand f = make();
        std::vector<double> alpha(static_cast<std::size_t>(region.d));
        std::vector<double> value(width);
        std::vector<double> cell_values;
        for (std::size_t b = next++; b < blocks; b = next++) {
            const long long first = static_cast<long long>(b * kBlockCells);
            const long long last = std::min(cells, first + static_cast<long long>(kBlockCells));
            cell_values.assign(static_cast<std::size_t>(last - first) * width, 0.0);
            for (long long c = first; c < last; ++c) {
                long long rem = c;
                bool in_hole = region.hole > 0.0;
                for (int t = 0; t < region.d; ++t) {
                    const long long idx = rem % region.per_dim;
                    rem /= region.per_dim;
                    alpha[t] = -half + (static_cast<double>(idx) + 0.5) * region.h;
                    if (std::abs(alpha[t]) >= region.hole) in_hole = false;
                }
                if (in_hole) continue;
                f(alpha, value);
                for (std::size_t w = 0; w < width; ++w)
                    cell_values[static_cast<std::size_t>(c - first) + w * static_cast<std::size_t>(last - first)] =
                        value[w];
            }
            const std::size_t len = static_cast<std::size_t>(last - first);
            for (std::size_t w = 0; w < width; ++w)
                block_sums[b * width + w] = pairwise_sum(std::span<const double>(cell_values).subspan(w * len, len));
        }
    };

    const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(blocks)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    double volume = 1.0;
    for (int t = 0; t < region.d; ++t) volume *= region.h;
    std::vector<double> out(width);
    std::vector<double> column(blocks);
    for (std::size_t w = 0; w < width; ++w) {
        for (std::size_t b = 0; b < blocks; ++b) column[b] = block_sums[b * width + w];
        out[w] = pairwise_sum(column) * volume;
    }
    return out;
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t mid = xs.size() / 2;
    return pairwise_sum(xs.first(mid)) + pairwise_sum(xs.subspan(mid));
}

std::vector<double> graded_midpoint(int d, std::size_t width, const IntegrandFactory& make, int resolution,
                                    int min_levels, int max_levels, double level_tol, int threads,
                                    int* levels_used, double min_cell) {
    if (d <= 0) throw ValidationError("quadrature: dimension must be positive");
    if (resolution <= 0 || resolution % 2 != 0) throw ValidationError("quadrature: resolution must be even");
    const bool refine = max_levels > 0;
    if (refine && resolution % 8 != 0)
        throw ValidationError("quadrature: graded refinement needs a resolution divisible by 8");

    const double h0 = 1.0 / resolution;
    auto add = [&](std::vector<double>& acc, const std::vector<double>& v, double sign) {
        for (std::size_t w = 0; w < width; ++w) acc[w] += sign * v[w];
    };

    // Level 0: whole torus, with the box of half-width 1/8 split off.
    std::vector<double> total(width, 0.0);
    add(total, integrate_region({d, resolution, h0, refine ? 0.125 : 0.0}, width, make, threads), 1.0);
    if (!refine) {
        if (levels_used) *levels_used = 0;
        return total;
    }
    // core = inner box sampled at the current level's cell size.
    std::vector<double> core = integrate_region({d, resolution / 4, h0, 0.0}, width, make, threads);
    add(total, core, 1.0);

    int level = 0;
    while (level < max_levels) {
        const int next_level = level + 1;
        const double h = h0 / std::ldexp(1.0, next_level);
        if (h < min_cell) break;
        const double box = std::ldexp(1.0, -next_level - 2);
        const long long per_dim = resolution / 2;  // 2 * box / h
        std::vector<double> ring = integrate_region({d, per_dim, h, box / 2.0}, width, make, threads);
        std::vector<double> next_core = integrate_region({d, per_dim / 2, h, 0.0}, width, make, threads);
        double change = 0.0;
        for (std::size_t w = 0; w < width; ++w) {
            const double delta = ring[w] + next_core[w] - core[w];
            total[w] += delta;
            change = std::max(change, std::abs(delta));
        }
        core = std::move(next_core);
        level = next_level;
        if (level >= min_levels && change < level_tol) break;
    }
    if (levels_used) *levels_used = level;
    return total;
}

TorusIntegral integrate_torus(int d, std::size_t width, const IntegrandFactory& make, const QuadratureSpec& spec) {
    const int n0 = spec.base_resolution;
    const bool refine = spec.max_levels > 0;
    if (refine && n0 % 16 != 0)
        throw ValidationError("quadrature: base resolution must be a multiple of 16 (got " + std::to_string(n0) + ")");
    if (!refine && n0 % 4 != 0) throw ValidationError("quadrature: base resolution must be a multiple of 4");
    if (spec.extrapolate && n0 % 32 != 0) throw ValidationError("quadrature: extrapolation needs a multiple of 32");
    const int max_levels = std::max(spec.max_levels, spec.refinement_levels);
    const double level_tol = spec.target_tol / 4.0;

    auto cells = [d](long long n) {
        long long c = 1;
        for (int t = 0; t < d; ++t) c = c > (1LL << 62) / n ? (1LL << 62) : c * n;
        return c;
    };
    int levels = 0;
    auto at = [&](int res) {
        return graded_midpoint(d, width, make, res, spec.refinement_levels, max_levels, level_tol, spec.threads,
                               &levels, spec.min_cell);
    };
    // Raw midpoint values at n/4, n/2, n; with extrapolation each estimate
    // combines two consecutive resolutions.
    std::vector<double> quarter = spec.extrapolate ? at(n0 / 4) : std::vector<double>{};
    std::vector<double> half = at(n0 / 2);
    TorusIntegral out;
    for (int n = n0;; n *= 2) {
        const auto full = at(n);
        std::vector<double> fine = full, coarse = half;
        if (spec.extrapolate)
            for (std::size_t w = 0; w < width; ++w) {
                fine[w] = (4.0 * full[w] - half[w]) / 3.0;
                coarse[w] = (4.0 * half[w] - quarter[w]) / 3.0;
            }
        out.value = fine;
        out.resolution = n;
        out.levels_used = levels;
        out.error_estimate = 0.0;
        for (std::size_t w = 0; w < width; ++w)
            out.error_estimate = std::max(out.error_estimate, std::abs(fine[w] - coarse[w]));
        out.converged = out.error_estimate <= spec.target_tol;
        if (out.converged || n >= (n0 << spec.max_doublings) || cells(2LL * n) > spec.max_cells) break;
        quarter = std::move(half);
        half = full;
    }
    return out;
}

}  // namespace arboreal
