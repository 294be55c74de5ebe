#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "convspec/grid.hpp"

namespace convspec::testing {

/// Random smooth complex function sum_{m<modes} (a_m cos(m x) + b_m sin(m x)) / (1 + m^2),
/// deterministic in `seed`.
inline GridFunction random_smooth(std::uint64_t seed, std::size_t n, int modes = 4) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> a(modes), b(modes);
    for (int m = 0; m < modes; ++m) {
        a[m] = cplx(g(rng), g(rng));
        b[m] = cplx(g(rng), g(rng));
    }
    return GridFunction::sample(n, [&](double x) {
        cplx v{};
        for (int m = 0; m < modes; ++m) {
            v += (a[m] * std::cos(m * x) + b[m] * std::sin(m * x)) / (1.0 + m * m);
        }
        return v;
    });
}

/// Same, rescaled to the given weighted L2 norm.
inline GridFunction random_smooth_w2(std::uint64_t seed, std::size_t n, double target) {
    const GridFunction f = random_smooth(seed, n);
    return (target / norm_weighted_l2(f)) * f;
}

/// w for the constant kernel N = a: w(pi - x) = sqrt(a(pi - x)/x) I_1(2 sqrt(a(pi - x) x)),
/// with the x -> 0 limit a pi.
inline GridFunction bessel_w(double a, std::size_t n) {
    const GridFunction g = GridFunction::sample(n, [&](double x) {
        const double u = kPi - x;
        if (x == 0.0) return a * u;
        return std::sqrt(a * u / x) * std::cyl_bessel_i(1.0, 2.0 * std::sqrt(a * u * x));
    });
    return g.reflected();
}

/// M(x) = 2a - a^2 x^2 / 2, the kernel of the constant N = a.
inline GridFunction quadratic_kernel(double a, std::size_t n) {
    return GridFunction::sample(n, [&](double x) { return 2.0 * a - 0.5 * a * a * x * x; });
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) { return norm_inf(a - b); }

}  // namespace convspec::testing
