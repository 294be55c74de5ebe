#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "convspec/errors.hpp"
#include "convspec/grid.hpp"

namespace convspec {

/// Controls evaluation and inversion of
///   w(pi - x) = sum_{nu>=1} (pi - x)^nu / nu! * N^{*nu}(x).
struct MainEqConfig {
    int nu_max = 30;        ///< hard cap on the series order
    double fp_tol = 1e-12;  ///< fixed-point tolerance on ||h^{n+1} - h^n||_2
    int max_iter = 200;
    Quadrature rule = Quadrature::gregory;

    void validate() const {
        if (nu_max < 1) throw ValidationError("main_equation", "nu_max must be >= 1");
        if (!(fp_tol > 0.0)) throw ValidationError("main_equation", "fp_tol must be positive");
        if (max_iter < 1) throw ValidationError("main_equation", "max_iter must be >= 1");
    }
};

namespace detail {

// sum_{nu=first}^{...} (pi - x)^nu / nu! * N^{*nu}(x), in x-orientation.
// Stops once a term of order >= 2 has weighted L2 norm below fp_tol/100.
inline GridFunction main_series(const GridFunction& N, const MainEqConfig& cfg, int first) {
    const std::size_t n = N.size();
    std::vector<cplx> sum(n);
    std::vector<double> coeff(n, 1.0);  // (pi - x)^nu / nu!
    const double stop = cfg.fp_tol * 1e-2;
    GridFunction power = N;
    std::vector<double> term_norms;
    for (int nu = 1; nu <= cfg.nu_max; ++nu) {
        if (nu > 1) power = convolve(N, power, cfg.rule);
        for (std::size_t i = 0; i < n; ++i) coeff[i] *= (kPi - N.x(i)) / nu;
        if (nu < first) continue;
        std::vector<cplx> term(n);
        for (std::size_t i = 0; i < n; ++i) {
            term[i] = coeff[i] * power[i];
            sum[i] += term[i];
        }
        if (cfg.nu_max == 1) break;
        const double tn = norm_weighted_l2(GridFunction(std::move(term)));
        term_norms.push_back(tn);
        if (!std::isfinite(tn)) {
            throw SolverError("main_equation", "series term " + std::to_string(nu) + " is not finite", term_norms);
        }
        if (nu >= 2 && tn < stop) return GridFunction(std::move(sum));
    }
    if (cfg.nu_max > 1) {
        throw SolverError("main_equation",
                          "series not converged by nu_max = " + std::to_string(cfg.nu_max) +
                              "; last term norm " + std::to_string(term_norms.back()),
                          term_norms);
    }
    return GridFunction(std::move(sum));
}

// N = h / (pi - x) at interior nodes; the node at pi is linearly extrapolated
// and only ever meets a vanishing (pi - x) weight.
inline GridFunction divide_weight(const GridFunction& h) {
    const std::size_t n = h.size();
    std::vector<cplx> N(n);
    for (std::size_t i = 0; i + 1 < n; ++i) N[i] = h[i] / (kPi - h.x(i));
    N[n - 1] = n >= 3 ? 2.0 * N[n - 2] - N[n - 3] : N[n - 2];
    return GridFunction(std::move(N));
}

}  // namespace detail

/// N -> w: the right-hand side of the main equation, reflected so that the
/// result is w itself.
inline GridFunction forward_series(const GridFunction& N, const MainEqConfig& cfg = {}) {
    cfg.validate();
    return detail::main_series(N, cfg, 1).reflected();
}

struct MainEqSolution {
    GridFunction N;
    GridFunction h;                 ///< (pi - x) N(x)
    int iterations = 0;
    bool damped = false;            ///< fell back to the 1/2-damped iteration
    double residual_l2 = 0.0;       ///< ||forward_series(N) - w||_2
    std::vector<double> history;    ///< ||h^{n+1} - h^n||_2 per iteration
};

/// w -> N by successive approximation in h = (pi - x) N:
///   h^0 = w(pi - .),  h^{n+1} = w(pi - .) - D h^n,
///   D h = sum_{nu>=2} (pi - x)^nu / nu! * N^{*nu}.
/// Five consecutive increases of the update norm switch to the 1/2-damped
/// iteration (restarted from h^0); a second divergence aborts.
inline MainEqSolution solve_main_equation(const GridFunction& w, const MainEqConfig& cfg = {}) {
    cfg.validate();
    const GridFunction target = w.reflected();
    MainEqSolution out{GridFunction::zeros(w.size()), target, 0, false, 0.0, {}};
    GridFunction h = target;
    int rising = 0;
    double last = 0.0;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const GridFunction N = detail::divide_weight(h);
        const GridFunction D = cfg.nu_max >= 2 ? detail::main_series(N, cfg, 2) : GridFunction::zeros(w.size());
        GridFunction next = target - D;
        if (out.damped) next = h + 0.5 * (next - h);
        const double d = norm_l2(next - h);
        out.history.push_back(d);
        out.iterations = it;
        h = next;
        if (!std::isfinite(d)) {
            throw SolverError("main_equation", "fixed-point iterate is not finite", out.history);
        }
        if (d < cfg.fp_tol) {
            out.h = h;
            out.N = detail::divide_weight(h);
            out.residual_l2 = norm_l2(forward_series(out.N, cfg) - w);
            return out;
        }
        rising = (it > 1 && d > last) ? rising + 1 : 0;
        last = d;
        if (rising >= 5) {
            if (out.damped) {
                throw SolverError("main_equation", "damped fixed-point iteration diverges", out.history);
            }
            out.damped = true;
            h = target;
            rising = 0;
        }
    }
    throw SolverError("main_equation",
                      "no convergence within " + std::to_string(cfg.max_iter) + " iterations", out.history);
}

}  // namespace convspec
