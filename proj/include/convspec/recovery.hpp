#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "convspec/errors.hpp"
#include "convspec/grid.hpp"

namespace convspec {

/// M(x) = 2N(x) - int_0^x N^{*2}(t) dt.
inline GridFunction n_to_m(const GridFunction& N, Quadrature rule = Quadrature::gregory) {
    return 2.0 * N - cumulative_integral(convolve(N, N, rule), rule);
}

struct MToN {
    GridFunction N;
    int iterations = 0;
    double residual_w2 = 0.0;  ///< ||n_to_m(N) - M||_{2,pi}
    std::vector<double> history;
};

/// Inverts n_to_m by N <- (M + int_0^x N^{*2})/2 starting from M/2.
inline MToN m_to_n(const GridFunction& M, double tol = 1e-13, int max_iter = 200,
                   Quadrature rule = Quadrature::gregory) {
    if (!(tol > 0.0) || max_iter < 1) throw ValidationError("recovery", "m_to_n needs tol > 0 and max_iter >= 1");
    GridFunction N = 0.5 * M;
    std::vector<double> history;
    for (int it = 1; it <= max_iter; ++it) {
        GridFunction next = 0.5 * (M + cumulative_integral(convolve(N, N, rule), rule));
        const double d = norm_weighted_l2(next - N);
        history.push_back(d);
        N = next;
        if (!std::isfinite(d)) throw SolverError("recovery", "m_to_n iterate is not finite", history);
        if (d < tol) {
            const double res = norm_weighted_l2(n_to_m(N, rule) - M);
            return {N, it, res, std::move(history)};
        }
    }
    throw SolverError("recovery", "m_to_n: no convergence within " + std::to_string(max_iter) + " iterations",
                      history);
}

}  // namespace convspec
