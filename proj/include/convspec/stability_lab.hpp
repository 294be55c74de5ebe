#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "convspec/config.hpp"
#include "convspec/inversion.hpp"
#include "convspec/spectrum.hpp"

namespace convspec {

/// Deviations of every reconstruction stage for one pair of spectra, and
/// their quotients. A quotient is empty when its denominator is zero.
struct StabilityReport {
    double lambda_dist = 0.0;   ///< Lambda(s, s~)
    double lambda1_dist = 0.0;  ///< Lambda_1(s, s~)
    double dw_l2 = 0.0, dw_inf = 0.0;
    double dN_l2w = 0.0, dN_infw = 0.0;
    double dM_l2w = 0.0, dM_infw = 0.0;
    double r_ball = 0.0;  ///< max of Lambda(., {n^2}) over the pair
    int theta_r = 1;
    std::vector<double> theta;
    std::vector<cplx> a_head;  ///< a_k of the first spectrum, k = 1..K

    struct Ratios {
        std::optional<double> M_l2w_per_Lambda, M_infw_per_Lambda1;
        std::optional<double> w_l2_per_Lambda, w_inf_per_Lambda1;
        std::optional<double> N_l2w_per_w_l2, N_infw_per_w_inf;
        std::optional<double> M_l2w_per_N_l2w, M_infw_per_N_infw;
    };

    Ratios ratios() const {
        auto q = [](double num, double den) -> std::optional<double> {
            if (!(den > 0.0)) return std::nullopt;
            return num / den;
        };
        return {q(dM_l2w, lambda_dist), q(dM_infw, lambda1_dist), q(dw_l2, lambda_dist),
                q(dw_inf, lambda1_dist), q(dN_l2w, dw_l2),       q(dN_infw, dw_inf),
                q(dM_l2w, dN_l2w),       q(dM_infw, dN_infw)};
    }
};

/// theta_k = sum over |j - k| >= 6r of |(lambda_j - mu_j)/(lambda_j - k^2)|, k = 1..k_max.
/// Only head indices contribute; a vanishing denominator under a nonzero
/// numerator gives +inf.
inline std::vector<double> theta_sequence(const Spectrum& s, const Spectrum& t, int r, std::size_t k_max) {
    if (r < 1) throw ValidationError("stability", "theta_sequence needs r >= 1");
    const std::size_t K = std::max(s.head_size(), t.head_size());
    const long gap = 6L * r;
    std::vector<double> theta(k_max, 0.0);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double k2 = static_cast<double>(k) * static_cast<double>(k);
        double sum = 0.0;
        for (std::size_t j = 1; j <= K; ++j) {
            if (std::labs(static_cast<long>(j) - static_cast<long>(k)) < gap) continue;
            const double num = std::abs(s(j) - t(j));
            if (num == 0.0) continue;
            const double den = std::abs(s(j) - k2);
            sum += den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
        }
        theta[k - 1] = sum;
    }
    return theta;
}

/// a_k = prod_{j<=J, j!=k} (lambda_j - k^2)/(j^2 - k^2), k = 1..k_max. Factors
/// past the head are 1, so J >= K gives the infinite product exactly.
inline std::vector<cplx> a_coefficients(const Spectrum& s, std::size_t k_max, std::size_t J) {
    if (J < k_max + 1) throw ValidationError("stability", "a_coefficients needs J >= k_max + 1");
    const std::size_t last = std::min(J, std::max(s.head_size(), k_max));
    std::vector<cplx> a(k_max, cplx(1.0));
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double k2 = static_cast<double>(k * k);
        for (std::size_t j = 1; j <= last; ++j) {
            if (j == k) continue;
            a[k - 1] *= (s(j) - k2) / (static_cast<double>(j * j) - k2);
        }
    }
    return a;
}

/// pi * prod_{j<=J, j!=k} (j^2 - k^2)/j^2; tends to (-1)^(k+1) pi/2.
inline double b_coefficient(std::size_t k, std::size_t J) {
    const double k2 = static_cast<double>(k) * static_cast<double>(k);
    double p = kPi;
    for (std::size_t j = 1; j <= J; ++j) {
        if (j == k) continue;
        const double j2 = static_cast<double>(j) * static_cast<double>(j);
        p *= (j2 - k2) / j2;
    }
    return p;
}

struct SmoothnessDiagnostic {
    cplx A_est;
    cplx M0;              ///< M(0) extrapolated from nodes 1..3
    double residual_l2;   ///< misfit of k(sqrt(lambda_k) - k) about A_est
    double discrepancy;   ///< |M0 - 2 A_est|
};

/// Compares the spectral constant A (sqrt(lambda_k) ~ k + A/k) with the
/// kernel value at the origin; smooth kernels have M(0) = 2A. A large
/// residual flags a kernel outside the smooth class.
inline SmoothnessDiagnostic smoothness_diagnostic(const Spectrum& s, const GridFunction& M) {
    if (s.head_size() < 4) throw ValidationError("stability", "smoothness diagnostic needs K >= 4");
    if (M.size() < 4) throw ValidationError("stability", "smoothness diagnostic needs a grid of >= 4 nodes");
    const AsymptoticFit fit = fit_asymptotic_constant(s);
    const cplx M0 = 3.0 * M[1] - 3.0 * M[2] + M[3];
    return {fit.A, M0, fit.residual_l2, std::abs(M0 - 2.0 * fit.A)};
}

/// lambda_k = k^2 + k xi_k, k = 1..K, with complex Gaussian xi rescaled to
/// ||xi||_2 = r u, u uniform in (0, 1]; hence Lambda(s, {n^2}) <= r.
inline Spectrum random_spectrum(std::mt19937_64& rng, std::size_t K, double r, bool complex_values = true) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<cplx> xi(K);
    double norm2 = 0.0;
    for (auto& v : xi) {
        v = cplx(gauss(rng), complex_values ? gauss(rng) : 0.0);
        norm2 += std::norm(v);
    }
    const double radius = r * (1.0 - unif(rng));
    const double scale = norm2 > 0.0 ? radius / std::sqrt(norm2) : 0.0;
    std::vector<cplx> head(K);
    for (std::size_t k = 1; k <= K; ++k) {
        const double kd = static_cast<double>(k);
        head[k - 1] = kd * kd + kd * scale * xi[k - 1];
    }
    return Spectrum(std::move(head));
}

/// s + delta * d, head-wise (d given as a head of deviations).
inline Spectrum perturb(const Spectrum& s, const std::vector<cplx>& direction, double delta) {
    const std::size_t K = std::max(s.head_size(), direction.size());
    std::vector<cplx> head(K);
    for (std::size_t k = 1; k <= K; ++k) {
        head[k - 1] = s(k) + (k <= direction.size() ? delta * direction[k - 1] : cplx(0.0));
    }
    return Spectrum(std::move(head));
}

/// Runs the reconstruction on both spectra and records every deviation.
inline StabilityReport run_pair(const Spectrum& s, const Spectrum& t, const SolverConfig& cfg) {
    StabilityReport rep;
    rep.lambda_dist = lambda_distance(s, t);
    rep.lambda1_dist = lambda1_distance(s, t);
    rep.r_ball = std::max(ball_radius(s), ball_radius(t));
    rep.theta_r = std::max(1, static_cast<int>(std::ceil(rep.r_ball)));
    const std::size_t K = std::max(s.head_size(), t.head_size());
    rep.theta = theta_sequence(s, t, rep.theta_r, 2 * K);
    rep.a_head = a_coefficients(s, s.head_size(), K + 1);

    const Inversion a = invert_spectrum(s, cfg);
    const Inversion b = invert_spectrum(t, cfg);
    const GridFunction dw = a.w.w - b.w.w;
    const GridFunction dN = a.main.N - b.main.N;
    const GridFunction dM = a.M - b.M;
    rep.dw_l2 = norm_l2(dw);
    rep.dw_inf = norm_inf(dw);
    rep.dN_l2w = norm_weighted_l2(dN);
    rep.dN_infw = norm_weighted_inf(dN);
    rep.dM_l2w = norm_weighted_l2(dM);
    rep.dM_infw = norm_weighted_inf(dM);
    return rep;
}

struct EnsembleRow {
    std::uint64_t seed = 0;
    double delta = 0.0;  ///< perturbation scale for sweeps, 0 for random pairs
    StabilityReport report;
};

/// `count` independent random pairs inside the r-ball; pair i draws from
/// mt19937_64(seed + i).
inline std::vector<EnsembleRow> run_ensemble(std::uint64_t seed, std::size_t count, double r, std::size_t K,
                                             const SolverConfig& cfg) {
    std::vector<EnsembleRow> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::mt19937_64 rng(seed + i);
        const Spectrum s = random_spectrum(rng, K, r);
        const Spectrum t = random_spectrum(rng, K, r);
        rows.push_back({seed + i, 0.0, run_pair(s, t, cfg)});
    }
    return rows;
}

/// Fixed base spectrum and direction, shrinking scale: pairs (s, s + delta d).
/// The base lies in the (r/2)-ball and d has Lambda-length r/2, so every
/// perturbed spectrum with delta <= 1 stays in the r-ball.
inline std::vector<EnsembleRow> run_sweep(std::uint64_t seed, double r, std::size_t K,
                                          const std::vector<double>& deltas, const SolverConfig& cfg) {
    std::mt19937_64 rng(seed);
    const Spectrum base = random_spectrum(rng, K, 0.5 * r);
    const Spectrum dir_spec = random_spectrum(rng, K, 0.5 * r);
    const double len = ball_radius(dir_spec);
    std::vector<cplx> direction(K);
    for (std::size_t k = 1; k <= K; ++k) {
        const double kd = static_cast<double>(k);
        direction[k - 1] = (dir_spec(k) - kd * kd) * (len > 0.0 ? 0.5 * r / len : 0.0);
    }
    std::vector<EnsembleRow> rows;
    for (double d : deltas) rows.push_back({seed, d, run_pair(base, perturb(base, direction, d), cfg)});
    return rows;
}

}  // namespace convspec
