#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "convspec/spectrum.hpp"
#include "convspec/stability_lab.hpp"

namespace convspec {
namespace {

TEST(Spectrum, TailRule) {
    const Spectrum s({1.01, 4.0, 9.0});
    EXPECT_EQ(s.head_size(), 3u);
    EXPECT_EQ(s(1), cplx(1.01));
    EXPECT_EQ(s(4), cplx(16.0));
    EXPECT_EQ(s(100), cplx(10000.0));
    EXPECT_THROW(Spectrum({}), ValidationError);
}

TEST(Spectrum, CompleteTail) {
    const std::vector<cplx> head{1.0};
    const auto s = complete_tail(head, 1);
    EXPECT_EQ(s(1), cplx(1.0));
    EXPECT_EQ(s(2), cplx(4.0));
    EXPECT_THROW(complete_tail({}, 0), ValidationError);
    EXPECT_THROW(complete_tail(head, 2), ValidationError);
}

TEST(SqrtResiduals, Examples) {
    for (cplx k : sqrt_residuals(Spectrum::unperturbed(10))) EXPECT_EQ(k, cplx(0.0));
    EXPECT_NEAR(std::abs(sqrt_residuals(Spectrum({4.0}))[0] - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(sqrt_residuals(Spectrum({1.01}))[0].real(), std::sqrt(1.01) - 1.0, 1e-15);
    EXPECT_NEAR(sqrt_residuals(Spectrum({1.01}))[0].real(), 0.0049876, 1e-7);
}

TEST(SqrtResiduals, BranchTieTakesUpperHalfPlane) {
    // lambda_1 = -3: sqrt(1 + eps) = sqrt(-3) on the cut, root 1 + kappa = i sqrt(3).
    const cplx kappa = sqrt_residuals(Spectrum({-3.0}))[0];
    EXPECT_NEAR(kappa.real(), -1.0, 1e-15);
    EXPECT_NEAR(kappa.imag(), std::sqrt(3.0), 1e-15);
    EXPECT_EQ(principal_sqrt(cplx(-4.0, -0.0)), cplx(0.0, 2.0));
}

TEST(SqrtResiduals, BoundedByScaledDeviation) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_spectrum(rng, 24, 5.0);
        const auto eps = scaled_deviations(s);
        const auto kappa = sqrt_residuals(s);
        for (std::size_t k = 0; k < eps.size(); ++k) {
            EXPECT_LE(std::abs(kappa[k]), std::abs(eps[k]) * (1 + 1e-14));
            const cplx rho = static_cast<double>(k + 1) + kappa[k];
            EXPECT_NEAR(std::abs(rho * rho - s(k + 1)), 0.0, 1e-11 * std::abs(s(k + 1)));
        }
    }
}

TEST(Distances, Examples) {
    const auto base = Spectrum::unperturbed(5);
    EXPECT_EQ(lambda_distance(base, base), 0.0);
    EXPECT_EQ(lambda1_distance(base, base), 0.0);
    const Spectrum bumped({1.0 + 0.3});
    EXPECT_NEAR(lambda_distance(base, bumped), 0.3, 1e-15);
    EXPECT_NEAR(lambda1_distance(base, bumped), 0.3, 1e-15);
}

TEST(Distances, TriangleInequality) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_spectrum(rng, 8, 2.0);
        const auto b = random_spectrum(rng, 12, 2.0);
        const auto c = random_spectrum(rng, 5, 2.0);
        EXPECT_LE(lambda_distance(a, c), lambda_distance(a, b) + lambda_distance(b, c) + 1e-14);
        EXPECT_TRUE(std::isfinite(lambda1_distance(a, c)));
    }
}

TEST(Admissibility, RejectsNonFinite) {
    EXPECT_NO_THROW(check_admissible(Spectrum({1.0, 4.5})));
    EXPECT_THROW(check_admissible(Spectrum({1.0, std::nan("")})), ValidationError);
}

TEST(AsymptoticFit, RecoversExactConstant) {
    std::vector<cplx> head;
    for (int k = 1; k <= 20; ++k) head.push_back(std::pow(k + 0.3 / k, 2));
    const auto fit = fit_asymptotic_constant(Spectrum(head));
    EXPECT_NEAR(std::abs(fit.A - 0.3), 0.0, 1e-12);
    EXPECT_LT(fit.residual_l2, 1e-11);
    EXPECT_THROW(fit_asymptotic_constant(Spectrum({1.0, 4.0, 9.0})), ValidationError);
}

}  // namespace
}  // namespace convspec
