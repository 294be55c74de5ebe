#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "convspec/errors.hpp"
#include "convspec/grid.hpp"
#include "convspec/quadrature.hpp"
#include "convspec/spectrum.hpp"

namespace convspec {

/// How eigenvalues beyond the measured head enter the characteristic
/// function.
///
/// `square`: lambda_k = k^2 exactly, which makes the product finite.
/// `asymptotic`: lambda_k = (k + A/k)^2 for K < k <= product_terms and k^2
/// after that. A kernel with M(0) != 0 has A = M(0)/2, and the Fourier
/// coefficients of w then decay like 1/k; the square tail drops them
/// entirely, the asymptotic tail keeps the leading part in closed form.
struct TailModel {
    enum class Kind { square, asymptotic };

    Kind kind = Kind::square;
    cplx A{};
    std::size_t product_terms = 100000;

    static TailModel square() { return {}; }
    static TailModel asymptotic(cplx A, std::size_t product_terms = 100000) {
        return {Kind::asymptotic, A, product_terms};
    }
};

/// Delta(lambda) = pi * prod_k (lambda_k - lambda)/k^2 for a spectrum and a
/// tail model. Evaluated as (sin(rho pi)/rho) * prod_{k<=P} (lambda_k - lambda)/(k^2 - lambda)
/// with rho^2 = lambda and P the last index that differs from k^2.
class CharProduct {
public:
    explicit CharProduct(Spectrum s, TailModel tail = TailModel::square())
        : spectrum_(std::move(s)), tail_(tail) {
        if (tail_.kind == TailModel::Kind::asymptotic && tail_.product_terms < spectrum_.head_size()) {
            tail_.product_terms = spectrum_.head_size();
        }
    }

    const Spectrum& spectrum() const noexcept { return spectrum_; }
    const TailModel& tail() const noexcept { return tail_; }

    /// Last index whose eigenvalue may differ from k^2.
    std::size_t product_end() const noexcept {
        return tail_.kind == TailModel::Kind::square ? spectrum_.head_size() : tail_.product_terms;
    }

    cplx eigenvalue(std::size_t k) const {
        if (k <= spectrum_.head_size() || tail_.kind == TailModel::Kind::square || k > tail_.product_terms) {
            return spectrum_(k);
        }
        const double kd = static_cast<double>(k);
        const cplx r = kd + tail_.A / kd;
        return r * r;
    }

private:
    Spectrum spectrum_;
    TailModel tail_;
};

/// Radius |rho - m| inside which the pole of 1/(m^2 - lambda) is cancelled
/// analytically against the zero of sin(rho pi).
inline constexpr double kRemovableRadius = 0.25;

/// sin(rho pi) / (rho (m^2 - rho^2)), written as
/// (-1)^(m+1) pi sinc((rho - m) pi) / (rho (m + rho)); finite at rho = m.
inline cplx cancelled_pole_factor(cplx rho, std::size_t m) {
    const double md = static_cast<double>(m);
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    return sign * kPi * sinc((rho - md) * kPi) / (rho * (md + rho));
}

inline cplx eval_delta(const CharProduct& cp, cplx lambda) {
    const cplx rho = principal_sqrt(lambda);
    const std::size_t P = cp.product_end();
    std::size_t pole = 0;
    const double nearest = std::round(rho.real());
    if (nearest >= 1.0 && nearest <= static_cast<double>(P) &&
        std::abs(rho - nearest) < kRemovableRadius) {
        pole = static_cast<std::size_t>(nearest);
    }
    cplx value = pole == 0 ? kPi * sinc(rho * kPi) : cplx(1.0);
    for (std::size_t k = 1; k <= P; ++k) {
        const cplx num = cp.eigenvalue(k) - lambda;
        if (k == pole) {
            value *= num * cancelled_pole_factor(rho, k);
        } else {
            const double kd = static_cast<double>(k);
            value *= num / (kd * kd - lambda);
        }
    }
    return value;
}

/// k * Delta(k^2), the Fourier coefficient of w up to the factor 2/pi.
inline cplx sine_coefficient(const CharProduct& cp, std::size_t k) {
    if (k > cp.product_end()) return {};
    const double kd = static_cast<double>(k);
    const double k2 = kd * kd;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    cplx value = (cp.eigenvalue(k) - k2) * (sign * kPi / (2.0 * k2));
    for (std::size_t j = 1; j <= cp.product_end(); ++j) {
        if (j == k) continue;
        const double jd = static_cast<double>(j);
        value *= (cp.eigenvalue(j) - k2) / (jd * jd - k2);
    }
    return kd * value;
}

struct WKernel {
    GridFunction w;
    std::vector<cplx> coefficients;  ///< k * Delta(k^2), k = 1..terms
    std::vector<std::string> warnings;
};

/// w(x) = (2/pi) sum_k k Delta(k^2) sin(kx) sampled on an n-node grid.
///
/// With the square tail the sum is exact once terms >= K. With the
/// asymptotic tail, modes above `terms` are added through their leading
/// behaviour -A pi (-1)^k / k, whose sum is A x - 2A sum_{k<=terms} (-1)^(k+1) sin(kx)/k.
inline WKernel build_w(const CharProduct& cp, std::size_t n_points, std::size_t terms) {
    WKernel out{GridFunction::zeros(n_points), {}, {}};
    const std::size_t K = cp.spectrum().head_size();
    if (terms < K) {
        out.warnings.push_back("build_w: " + std::to_string(terms) + " terms requested for a head of " +
                               std::to_string(K) + " eigenvalues; nonzero coefficients dropped");
    }
    out.coefficients.resize(terms);
    for (std::size_t k = 1; k <= terms; ++k) out.coefficients[k - 1] = sine_coefficient(cp, k);

    const bool closed_tail = cp.tail().kind == TailModel::Kind::asymptotic && cp.tail().A != cplx(0.0);
    const cplx A = cp.tail().A;
    out.w = GridFunction::sample(n_points, [&](double x) {
        cplx v{};
        for (std::size_t k = 1; k <= terms; ++k) {
            const double s = std::sin(static_cast<double>(k) * x);
            v += out.coefficients[k - 1] * (2.0 / kPi * s);
            if (closed_tail) v -= 2.0 * A * (((k % 2 == 1) ? 1.0 : -1.0) * s / static_cast<double>(k));
        }
        if (closed_tail) v += A * x;
        return v;
    });
    return out;
}

/// Delta(lambda) = sin(rho pi)/rho + int_0^pi w(x) sin(rho x)/rho dx.
inline cplx delta_from_w(const GridFunction& w, cplx lambda, Quadrature rule = Quadrature::gregory) {
    const cplx rho = principal_sqrt(lambda);
    const auto v = w.values();
    const cplx integral = quadrature_sum(w.size() - 1, w.step(), rule, [&](std::size_t j) {
        const double x = w.x(j);
        return v[j] * (x * sinc(rho * x));
    });
    return kPi * sinc(rho * kPi) + integral;
}

// ---------------------------------------------------------------------------
// Eigenvalue search

/// Delta and dDelta/dlambda at one point; characteristic functions that can
/// supply the derivative return this instead of a bare value.
struct DeltaValue {
    cplx value;
    cplx dlambda;
};

struct NewtonOptions {
    double tol = 1e-12;  ///< on the Newton step in rho, relative to max(1, |rho|)
    int max_iter = 50;
};

struct RootReport {
    std::size_t index = 0;
    cplx lambda{};
    cplx rho{};
    double residual = 0.0;  ///< |Delta(lambda)|
    int iterations = 0;
    bool converged = false;
    std::string message;
};

struct EigenSearch {
    std::vector<RootReport> roots;
    std::vector<std::string> warnings;

    bool ok() const {
        for (const auto& r : roots) {
            if (!r.converged) return false;
        }
        return true;
    }

    /// Throws SolverError naming every failed index.
    Spectrum spectrum() const {
        std::string failed;
        std::vector<cplx> head;
        for (const auto& r : roots) {
            if (!r.converged) failed += " k=" + std::to_string(r.index) + " (" + r.message + ")";
            head.push_back(r.lambda);
        }
        if (!failed.empty()) throw SolverError("eigenvalues", "Newton failed for" + failed);
        return Spectrum(std::move(head));
    }
};

/// Newton's method in the rho-plane from rho = k for k = 1..K. Iterates are
/// confined to |rho - k| < 1/2 so that the index of each root is the index of
/// its starting point. `delta` maps lambda to either cplx or DeltaValue; for
/// plain values the derivative is a central difference in rho.
template <class Delta>
EigenSearch find_eigenvalues(Delta&& delta, std::size_t K, NewtonOptions opt = {}) {
    using Result = std::invoke_result_t<Delta&, cplx>;
    constexpr bool analytic = std::is_same_v<std::decay_t<Result>, DeltaValue>;

    // g(rho) = Delta(rho^2) and dg/drho.
    auto eval = [&](cplx rho) -> std::pair<cplx, cplx> {
        if constexpr (analytic) {
            const DeltaValue d = delta(rho * rho);
            return {d.value, 2.0 * rho * d.dlambda};
        } else {
            const double e = 1e-5 * std::max(1.0, std::abs(rho));
            const cplx g = delta(rho * rho);
            const cplx gp = delta((rho + e) * (rho + e));
            const cplx gm = delta((rho - e) * (rho - e));
            return {g, (gp - gm) / (2.0 * e)};
        }
    };
    auto value_at = [&](cplx rho) -> cplx {
        if constexpr (analytic) {
            return delta(rho * rho).value;
        } else {
            return delta(rho * rho);
        }
    };

    EigenSearch out;
    out.roots.resize(K);
    for (std::size_t k = 1; k <= K; ++k) {
        RootReport& rep = out.roots[k - 1];
        rep.index = k;
        const double centre = static_cast<double>(k);
        cplx rho = centre;
        for (int it = 1; it <= opt.max_iter; ++it) {
            rep.iterations = it;
            const auto [g, dg] = eval(rho);
            if (g == cplx(0.0)) {
                rep.converged = true;
                break;
            }
            cplx step = g / dg;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                rep.message = "non-finite Newton step";
                break;
            }
            if (std::abs(step) > 0.25) step *= 0.25 / std::abs(step);
            rho -= step;
            if (std::abs(rho - centre) >= 0.5) {
                rep.message = "iterate left |rho - k| < 1/2";
                break;
            }
            if (std::abs(step) < opt.tol * std::max(1.0, std::abs(rho))) {
                rep.converged = true;
                break;
            }
        }
        if (!rep.converged && rep.message.empty()) rep.message = "no convergence in max_iter";
        rep.rho = rho;
        rep.lambda = rho * rho;
        rep.residual = std::abs(value_at(rho));
    }

    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = i + 1; j < K; ++j) {
            const auto& a = out.roots[i];
            const auto& b = out.roots[j];
            if (std::abs(a.lambda - b.lambda) < 1e-6 * std::max(1.0, std::abs(a.lambda))) {
                out.warnings.push_back("eigenvalues " + std::to_string(a.index) + " and " +
                                       std::to_string(b.index) + " coincide; possible multiple root");
            }
        }
    }
    return out;
}

}  // namespace convspec
