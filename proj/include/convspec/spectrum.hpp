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

/// Dirichlet eigenvalues lambda_1, lambda_2, ... given by an explicit head
/// lambda_1..lambda_K; every later eigenvalue is k^2 (the unperturbed value).
/// Indices are part of the datum: the head is never re-sorted.
class Spectrum {
public:
    explicit Spectrum(std::vector<cplx> head) : head_(std::move(head)) {
        if (head_.empty()) throw ValidationError("spectrum", "spectrum head must hold at least one eigenvalue");
    }

    /// The unperturbed spectrum {k^2} written with an explicit head of length K.
    static Spectrum unperturbed(std::size_t K) {
        std::vector<cplx> h(K);
        for (std::size_t k = 1; k <= K; ++k) h[k - 1] = static_cast<double>(k * k);
        return Spectrum(std::move(h));
    }

    std::size_t head_size() const noexcept { return head_.size(); }
    std::span<const cplx> head() const noexcept { return head_; }

    /// lambda_k for any k >= 1.
    cplx operator()(std::size_t k) const {
        return k <= head_.size() ? head_[k - 1] : cplx(static_cast<double>(k) * static_cast<double>(k));
    }

private:
    std::vector<cplx> head_;
};

/// Canonical embedding of K measured eigenvalues: head as given, k^2 beyond.
inline Spectrum complete_tail(std::span<const cplx> head, std::size_t K) {
    if (K == 0 || head.empty()) throw ValidationError("spectrum", "empty spectrum head");
    if (head.size() != K) {
        throw ValidationError("spectrum", "head length " + std::to_string(head.size()) +
                                              " does not match K = " + std::to_string(K));
    }
    return Spectrum(std::vector<cplx>(head.begin(), head.end()));
}

/// eps_k = (lambda_k - k^2)/k for k = 1..K (zero beyond the head).
inline std::vector<cplx> scaled_deviations(const Spectrum& s) {
    std::vector<cplx> e(s.head_size());
    for (std::size_t k = 1; k <= e.size(); ++k) {
        const double kd = static_cast<double>(k);
        e[k - 1] = (s(k) - kd * kd) / kd;
    }
    return e;
}

/// kappa_k with sqrt(lambda_k) = k + kappa_k, Re sqrt >= 0, for k = 1..K.
/// Evaluated as eps_k / (sqrt(1 + eps_k/k) + 1), which equals
/// k(sqrt(1 + eps_k/k) - 1) without the cancellation; |kappa_k| <= |eps_k|.
inline std::vector<cplx> sqrt_residuals(const Spectrum& s) {
    const auto eps = scaled_deviations(s);
    std::vector<cplx> kappa(eps.size());
    for (std::size_t k = 1; k <= eps.size(); ++k) {
        const cplx e = eps[k - 1];
        kappa[k - 1] = e / (principal_sqrt(1.0 + e / static_cast<double>(k)) + 1.0);
    }
    return kappa;
}

/// Lambda = sqrt(sum_k |lambda_k - mu_k|^2 / k^2); exact, tails agree beyond the heads.
inline double lambda_distance(const Spectrum& a, const Spectrum& b) {
    const std::size_t K = std::max(a.head_size(), b.head_size());
    double s = 0.0;
    for (std::size_t k = 1; k <= K; ++k) s += std::norm(a(k) - b(k)) / static_cast<double>(k * k);
    return std::sqrt(s);
}

/// Lambda_1 = sum_k |lambda_k - mu_k| / k. Always finite for head+tail spectra.
inline double lambda1_distance(const Spectrum& a, const Spectrum& b) {
    const std::size_t K = std::max(a.head_size(), b.head_size());
    double s = 0.0;
    for (std::size_t k = 1; k <= K; ++k) s += std::abs(a(k) - b(k)) / static_cast<double>(k);
    return s;
}

/// Radius of the smallest ball around {k^2} (in the Lambda metric) holding s.
inline double ball_radius(const Spectrum& s) {
    return lambda_distance(s, Spectrum::unperturbed(s.head_size()));
}

/// Finite values only; the head/tail model makes {kappa_k} square summable.
inline void check_admissible(const Spectrum& s) {
    for (std::size_t k = 1; k <= s.head_size(); ++k) {
        const cplx l = s(k);
        if (!std::isfinite(l.real()) || !std::isfinite(l.imag())) {
            throw ValidationError("spectrum", "eigenvalue " + std::to_string(k) + " is not finite");
        }
    }
    double l2 = 0.0;
    for (cplx kap : sqrt_residuals(s)) l2 += std::norm(kap);
    if (!std::isfinite(l2)) throw ValidationError("spectrum", "square-root residuals are not square summable");
}

/// Least-squares estimate of A in sqrt(lambda_k) ~ k + A/k, residuals
/// weighted by k^2; i.e. the mean of k(sqrt(lambda_k) - k) = A + kappa_{k,1}.
/// Needs at least 4 head values.
struct AsymptoticFit {
    cplx A;
    double residual_l2;  ///< sqrt(sum_k |k(sqrt(lambda_k) - k) - A|^2)
};

inline AsymptoticFit fit_asymptotic_constant(const Spectrum& s) {
    const std::size_t K = s.head_size();
    if (K < 4) {
        throw ValidationError("spectrum", "asymptotic fit needs K >= 4 head eigenvalues, got " + std::to_string(K));
    }
    const auto kappa = sqrt_residuals(s);
    std::vector<cplx> scaled(K);
    cplx mean{};
    for (std::size_t k = 1; k <= K; ++k) {
        scaled[k - 1] = static_cast<double>(k) * kappa[k - 1];
        mean += scaled[k - 1];
    }
    mean /= static_cast<double>(K);
    double r = 0.0;
    for (cplx v : scaled) r += std::norm(v - mean);
    return {mean, std::sqrt(r)};
}

}  // namespace convspec
