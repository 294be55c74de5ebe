#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "convspec/char_fn.hpp"
#include "convspec/grid.hpp"
#include "convspec/spectrum.hpp"

namespace convspec {

/// Direct solver for -y'' + int_0^x M(x-t) y'(t) dt = lambda y,
/// y(0) = 0, y'(0) = 1, used as the independent reference for the spectral
/// pipeline.
///
/// Integrating twice (and once by parts in the memory term) gives the
/// second-kind Volterra equation
///   y(x) = x + int_0^x [M1(x-t) - lambda (x-t)] y(t) dt,   M1 = int_0 M,
/// whose kernel vanishes on the diagonal, so marching over the grid with the
/// configured product rule is explicit. dy/dlambda solves the same equation
/// with forcing -int_0^x (x-t) y(t) dt and is marched alongside.
class CauchyOracle {
public:
    explicit CauchyOracle(GridFunction M, Quadrature rule = Quadrature::gregory)
        : M_(std::move(M)), M1_(cumulative_integral(M_, rule)), rule_(rule) {}

    const GridFunction& kernel() const noexcept { return M_; }

    /// S(x, lambda) at every node.
    GridFunction solve(cplx lambda) const { return march(lambda, false).first; }

    /// Delta(lambda) = S(pi, lambda).
    cplx delta(cplx lambda) const {
        const auto y = march(lambda, false).first;
        return y[y.size() - 1];
    }

    DeltaValue delta_with_derivative(cplx lambda) const {
        const auto [y, z] = march(lambda, true);
        return {y[y.size() - 1], z[z.size() - 1]};
    }

private:
    std::pair<GridFunction, GridFunction> march(cplx lambda, bool with_derivative) const {
        const std::size_t n = M_.size();
        const double h = M_.step();
        std::vector<cplx> kern(n), xs(n), y(n), z(n);
        for (std::size_t m = 0; m < n; ++m) {
            xs[m] = M_.x(m);
            kern[m] = M1_[m] - lambda * M_.x(m);
        }
        kern[0] = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            y[i] = xs[i] + detail::convolution_node(kern.data(), y.data(), i, h, rule_);
            if (with_derivative) {
                z[i] = detail::convolution_node(kern.data(), z.data(), i, h, rule_) -
                       detail::convolution_node(xs.data(), y.data(), i, h, rule_);
            }
        }
        return {GridFunction(std::move(y)), GridFunction(std::move(z))};
    }

    GridFunction M_;
    GridFunction M1_;
    Quadrature rule_;
};

inline GridFunction solve_cauchy(const GridFunction& M, cplx lambda, Quadrature rule = Quadrature::gregory) {
    return CauchyOracle(M, rule).solve(lambda);
}

inline cplx oracle_delta(const GridFunction& M, cplx lambda, Quadrature rule = Quadrature::gregory) {
    return CauchyOracle(M, rule).delta(lambda);
}

/// Newton search on the oracle's Delta with exact lambda-derivative; the
/// per-index reports are kept for logging.
inline EigenSearch oracle_search(const GridFunction& M, std::size_t K, NewtonOptions opt = {},
                                 Quadrature rule = Quadrature::gregory) {
    if (K < 1) throw ValidationError("oracle", "K must be >= 1");
    const CauchyOracle oracle(M, rule);
    return find_eigenvalues([&](cplx l) { return oracle.delta_with_derivative(l); }, K, opt);
}

inline Spectrum oracle_spectrum(const GridFunction& M, std::size_t K, NewtonOptions opt = {},
                                Quadrature rule = Quadrature::gregory) {
    return oracle_search(M, K, opt, rule).spectrum();
}

}  // namespace convspec
