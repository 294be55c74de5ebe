#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace convspec {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Composite rule used for every integral over [0, x_i] on a uniform grid.
///
/// `trapezoid` is second order. `gregory` is the trapezoid rule with the
/// classical Gregory end corrections (3/8, 7/6, 23/24), which makes it fourth
/// order for smooth integrands; spans of fewer than six intervals fall back to
/// closed Newton-Cotes rules.
enum class Quadrature { trapezoid, gregory };

inline std::string_view to_string(Quadrature q) {
    return q == Quadrature::trapezoid ? "trapezoid" : "gregory";
}

inline Quadrature quadrature_from_string(std::string_view s) {
    if (s == "trapezoid") return Quadrature::trapezoid;
    if (s == "gregory") return Quadrature::gregory;
    throw std::invalid_argument("unknown quadrature rule '" + std::string(s) + "'");
}

namespace detail {

// Closed Newton-Cotes weights for the short spans where Gregory corrections
// would overlap. Index [m][j], m = number of intervals.
inline constexpr std::array<std::array<double, 6>, 6> kShortSpan = {{
    {{0, 0, 0, 0, 0, 0}},
    {{0.5, 0.5, 0, 0, 0, 0}},
    {{1.0 / 3, 4.0 / 3, 1.0 / 3, 0, 0, 0}},
    {{3.0 / 8, 9.0 / 8, 9.0 / 8, 3.0 / 8, 0, 0}},
    {{14.0 / 45, 64.0 / 45, 24.0 / 45, 64.0 / 45, 14.0 / 45, 0}},
    // Simpson on [0,2] followed by the 3/8 rule on [2,5].
    {{1.0 / 3, 4.0 / 3, 1.0 / 3 + 3.0 / 8, 9.0 / 8, 9.0 / 8, 3.0 / 8}},
}};

inline constexpr std::array<double, 3> kGregoryEnd = {3.0 / 8, 7.0 / 6, 23.0 / 24};

}  // namespace detail

/// Weight of node j in the rule over m intervals (unit step). Weights of
/// nodes 0 and m are symmetric; interior nodes away from the ends weigh 1.
inline double quadrature_weight(std::size_t m, std::size_t j, Quadrature rule) {
    if (m == 0) return 0.0;
    if (rule == Quadrature::trapezoid) return (j == 0 || j == m) ? 0.5 : 1.0;
    if (m < 6) return detail::kShortSpan[m][j];
    const std::size_t from_end = j < m - j ? j : m - j;
    return from_end < 3 ? detail::kGregoryEnd[from_end] : 1.0;
}

/// Applies the rule to the sequence term(0..m): step * sum_j w_j term(j).
/// The bulk is summed with unit weight and the ends are patched afterwards,
/// so the cost is one pass over the terms.
template <class Term>
auto quadrature_sum(std::size_t m, double step, Quadrature rule, Term&& term) {
    using T = decltype(term(std::size_t{0}));
    T acc{};
    if (m == 0) return acc;
    if (rule == Quadrature::gregory && m < 6) {
        for (std::size_t j = 0; j <= m; ++j) acc += detail::kShortSpan[m][j] * term(j);
        return acc * step;
    }
    for (std::size_t j = 0; j <= m; ++j) acc += term(j);
    if (rule == Quadrature::trapezoid) {
        acc -= 0.5 * (term(0) + term(m));
    } else {
        for (std::size_t t = 0; t < 3; ++t) acc -= (1.0 - detail::kGregoryEnd[t]) * (term(t) + term(m - t));
    }
    return acc * step;
}

/// sin(z)/z, entire; Taylor series near the origin.
inline cplx sinc(cplx z) {
    if (std::abs(z) < 1e-3) {
        const cplx z2 = z * z;
        return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0));
    }
    return std::sin(z) / z;
}

/// Square root with Re >= 0; on the branch cut (Re = 0) the root with Im >= 0.
inline cplx principal_sqrt(cplx z) {
    cplx r = std::sqrt(z);
    if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
    return r;
}

}  // namespace convspec
