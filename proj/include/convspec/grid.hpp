#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "convspec/errors.hpp"
#include "convspec/quadrature.hpp"

namespace convspec {

inline constexpr std::size_t kDefaultGridPoints = 1025;

/// Complex samples of a function on the uniform grid x_i = i*pi/(n-1),
/// i = 0..n-1, endpoints included. Immutable once built.
class GridFunction {
public:
    explicit GridFunction(std::vector<cplx> values) : values_(std::move(values)) {
        if (values_.size() < 2) {
            throw ValidationError("grid", "a grid function needs at least 2 nodes, got " +
                                              std::to_string(values_.size()));
        }
        step_ = kPi / static_cast<double>(values_.size() - 1);
    }

    static GridFunction zeros(std::size_t n) { return GridFunction(std::vector<cplx>(n)); }

    static GridFunction constant(std::size_t n, cplx value) {
        return GridFunction(std::vector<cplx>(n, value));
    }

    /// Samples fn(x) at every node.
    template <class Fn>
    static GridFunction sample(std::size_t n, Fn&& fn) {
        if (n < 2) throw ValidationError("grid", "a grid needs at least 2 nodes");
        std::vector<cplx> v(n);
        const double h = kPi / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) v[i] = cplx(fn(node(i, h, n)));
        return GridFunction(std::move(v));
    }

    std::size_t size() const noexcept { return values_.size(); }
    double step() const noexcept { return step_; }
    double x(std::size_t i) const noexcept { return node(i, step_, values_.size()); }
    cplx operator[](std::size_t i) const { return values_[i]; }
    std::span<const cplx> values() const noexcept { return values_; }

    /// Applies fn(x, value) at every node.
    template <class Fn>
    GridFunction map(Fn&& fn) const {
        std::vector<cplx> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(fn(x(i), values_[i]));
        return GridFunction(std::move(v));
    }

    /// g(x) = f(pi - x).
    GridFunction reflected() const {
        return GridFunction(std::vector<cplx>(values_.rbegin(), values_.rend()));
    }

    friend GridFunction operator+(const GridFunction& a, const GridFunction& b) {
        return zip(a, b, [](cplx u, cplx v) { return u + v; });
    }
    friend GridFunction operator-(const GridFunction& a, const GridFunction& b) {
        return zip(a, b, [](cplx u, cplx v) { return u - v; });
    }
    friend GridFunction operator*(cplx s, const GridFunction& a) {
        return a.map([s](double, cplx v) { return s * v; });
    }
    friend GridFunction operator*(double s, const GridFunction& a) { return cplx(s) * a; }

private:
    // Last node is exactly pi so that weighted quantities vanish there.
    static double node(std::size_t i, double h, std::size_t n) {
        return i + 1 == n ? kPi : static_cast<double>(i) * h;
    }

    template <class Op>
    static GridFunction zip(const GridFunction& a, const GridFunction& b, Op op) {
        require_same_grid(a, b, "elementwise operation");
        std::vector<cplx> v(a.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a.values_[i], b.values_[i]);
        return GridFunction(std::move(v));
    }

    friend void require_same_grid(const GridFunction& a, const GridFunction& b, const char* what) {
        if (a.size() != b.size()) {
            throw GridMismatchError("grid", std::string(what) + ": grids of " +
                                                std::to_string(a.size()) + " and " +
                                                std::to_string(b.size()) + " nodes");
        }
    }

    std::vector<cplx> values_;
    double step_ = 0.0;
};

namespace detail {

// sum_{j=0}^{m} f[m-j] * g[j] in plain double arithmetic (std::complex
// multiplication goes through the NaN-checking libgcc helper).
inline cplx reversed_dot(const cplx* f, const cplx* g, std::size_t m) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j <= m; ++j) {
        const double fr = f[m - j].real(), fi = f[m - j].imag();
        const double gr = g[j].real(), gi = g[j].imag();
        re += fr * gr - fi * gi;
        im += fr * gi + fi * gr;
    }
    return {re, im};
}

inline cplx convolution_node(const cplx* f, const cplx* g, std::size_t m, double h, Quadrature rule) {
    if (m == 0) return {};
    if (rule == Quadrature::gregory && m < 6) {
        return quadrature_sum(m, h, rule, [&](std::size_t j) { return f[m - j] * g[j]; });
    }
    cplx acc = reversed_dot(f, g, m);
    if (rule == Quadrature::trapezoid) {
        acc -= 0.5 * (f[m] * g[0] + f[0] * g[m]);
    } else {
        for (std::size_t t = 0; t < 3; ++t) {
            acc -= (1.0 - kGregoryEnd[t]) * (f[m - t] * g[t] + f[t] * g[m - t]);
        }
    }
    return acc * h;
}

}  // namespace detail

/// (f*g)(x) = int_0^x f(x-t) g(t) dt at every node; result(0) = 0.
inline GridFunction convolve(const GridFunction& f, const GridFunction& g,
                             Quadrature rule = Quadrature::gregory) {
    require_same_grid(f, g, "convolve");
    const std::size_t n = f.size();
    const cplx* fp = f.values().data();
    const cplx* gp = g.values().data();
    std::vector<cplx> out(n);
    for (std::size_t i = 1; i < n; ++i) out[i] = detail::convolution_node(fp, gp, i, f.step(), rule);
    return GridFunction(std::move(out));
}

/// f^{*1} = f, f^{*(nu+1)} = f * f^{*nu}.
inline GridFunction conv_power(const GridFunction& f, int nu, Quadrature rule = Quadrature::gregory) {
    if (nu < 1) {
        throw ValidationError("grid", "convolution power must be >= 1, got " + std::to_string(nu));
    }
    GridFunction p = f;
    for (int k = 1; k < nu; ++k) p = convolve(f, p, rule);
    return p;
}

/// F(x_i) = int_0^{x_i} f(t) dt.
inline GridFunction cumulative_integral(const GridFunction& f, Quadrature rule = Quadrature::gregory) {
    const std::size_t n = f.size();
    const auto v = f.values();
    std::vector<cplx> prefix(n + 1);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + v[i];
    std::vector<cplx> out(n);
    for (std::size_t m = 1; m < n; ++m) {
        if (rule == Quadrature::gregory && m == 1 && n >= 3) {
            // Integral of the quadratic through nodes 0..2 over the first interval.
            out[m] = (5.0 * v[0] + 8.0 * v[1] - v[2]) * (f.step() / 12.0);
            continue;
        }
        if (rule == Quadrature::gregory && m < 6) {
            out[m] = quadrature_sum(m, f.step(), rule, [&](std::size_t j) { return v[j]; });
            continue;
        }
        cplx acc = prefix[m + 1];
        if (rule == Quadrature::trapezoid) {
            acc -= 0.5 * (v[0] + v[m]);
        } else {
            for (std::size_t t = 0; t < 3; ++t) acc -= (1.0 - detail::kGregoryEnd[t]) * (v[t] + v[m - t]);
        }
        out[m] = acc * f.step();
    }
    return GridFunction(std::move(out));
}

/// Integral over the whole interval [0, pi].
inline cplx integrate(const GridFunction& f, Quadrature rule = Quadrature::gregory) {
    const auto v = f.values();
    return quadrature_sum(f.size() - 1, f.step(), rule, [&](std::size_t j) { return v[j]; });
}

// Norms use the trapezoid rule with sequential summation, so they are
// bit-reproducible and ||f||_2 <= sqrt(pi) ||f||_inf holds exactly.

inline double norm_l2(const GridFunction& f) {
    const auto v = f.values();
    const double s = quadrature_sum(f.size() - 1, f.step(), Quadrature::trapezoid,
                                    [&](std::size_t j) { return std::norm(v[j]); });
    return std::sqrt(s);
}

/// ||f||_{2,pi} = ||(pi - x) f(x)||_2.
inline double norm_weighted_l2(const GridFunction& f) {
    const auto v = f.values();
    const double s = quadrature_sum(f.size() - 1, f.step(), Quadrature::trapezoid, [&](std::size_t j) {
        const double wgt = kPi - f.x(j);
        return wgt * wgt * std::norm(v[j]);
    });
    return std::sqrt(s);
}

inline double norm_inf(const GridFunction& f) {
    double m = 0.0;
    for (cplx v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

/// ||f||_{inf,pi} = max over nodes of |(pi - x) f(x)|.
inline double norm_weighted_inf(const GridFunction& f) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, (kPi - f.x(j)) * std::abs(f[j]));
    return m;
}

}  // namespace convspec
