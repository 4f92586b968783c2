#pragma once

// Midpoint quadrature over the torus (-1/2, 1/2]^d with graded refinement
// toward alpha = 0.  The origin is never a sample point.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace arboreal {

struct QuadratureSpec {
    int base_resolution = 256;  // cells per dimension; multiple of 16 when refining
    int refinement_levels = 4;  // minimum number of graded levels
    double target_tol = 1e-6;
    int max_levels = 48;
    int threads = 1;
    // Combine N and N/2 as (4 I(N) - I(N/2)) / 3, cancelling the h^2 term
    // that a log singularity leaves; the estimate then compares N with N/2.
    bool extrapolate = false;
    // The resolution doubles until target_tol is met, at most max_doublings
    // times and never past max_cells cells per level.
    int max_doublings = 4;
    long long max_cells = 1LL << 24;
    // Graded refinement stops before cells get smaller than this; below it
    // 1 - Q(alpha) is lost to rounding.
    double min_cell = 1e-6;
};

struct TorusIntegral {
    std::vector<double> value;
    double error_estimate = 0.0;  // |I(N) - I(N/2)|, max over components
    int levels_used = 0;
    int resolution = 0;
    bool converged = false;
};

// Writes `width` values of the integrand at alpha into out.
using TorusIntegrand = std::function<void(std::span<const double> alpha, std::span<double> out)>;
// Called once per worker thread; integrands may keep private scratch space.
using IntegrandFactory = std::function<TorusIntegrand()>;

// Graded midpoint rule at a fixed base resolution.  Level l >= 1 halves the
// cell size inside the box |alpha|_inf <= 2^{-l-2}.  Levels are added past
// min_levels until the last one moves the result by less than level_tol.
std::vector<double> graded_midpoint(int d, std::size_t width, const IntegrandFactory& make, int resolution,
                                    int min_levels, int max_levels, double level_tol, int threads,
                                    int* levels_used = nullptr, double min_cell = 0.0);

// graded_midpoint at N and N/2 (and N/4 when extrapolating); the difference
// between the two finest results is the error estimate.
TorusIntegral integrate_torus(int d, std::size_t width, const IntegrandFactory& make, const QuadratureSpec& spec);

// Pairwise sum, fixed association order.
double pairwise_sum(std::span<const double> xs);

}  // namespace arboreal
