#include <gtest/gtest.h>

#include <cmath>

#include "convspec/grid.hpp"
#include "test_support.hpp"

namespace convspec {
namespace {

using testing::max_abs_diff;
using testing::random_smooth;

TEST(GridFunction, StepCoversInterval) {
    const auto f = GridFunction::zeros(1025);
    EXPECT_EQ(f.size(), 1025u);
    EXPECT_NEAR(f.step() * 1024, kPi, 1e-15);
    EXPECT_EQ(f.x(1024), kPi);
    EXPECT_THROW(GridFunction::zeros(1), ValidationError);
}

TEST(GridFunction, MismatchedGridsAreRejected) {
    const auto f = GridFunction::zeros(33);
    const auto g = GridFunction::zeros(65);
    EXPECT_THROW(convolve(f, g), GridMismatchError);
    EXPECT_THROW(f - g, GridMismatchError);
}

TEST(Convolve, ConstantsGiveX) {
    const auto one = GridFunction::constant(257, 1.0);
    for (auto rule : {Quadrature::trapezoid, Quadrature::gregory}) {
        const auto c = convolve(one, one, rule);
        EXPECT_EQ(c[0], cplx(0.0));
        for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(std::abs(c[i] - c.x(i)), 0.0, 1e-13);
    }
}

TEST(Convolve, SineSineClosedForm) {
    // int_0^x sin(x-t) sin t dt = (sin x - x cos x)/2
    const std::size_t n = 1025;
    const auto s = GridFunction::sample(n, [](double x) { return std::sin(x); });
    const auto exact = GridFunction::sample(n, [](double x) { return 0.5 * (std::sin(x) - x * std::cos(x)); });
    EXPECT_LT(max_abs_diff(convolve(s, s, Quadrature::trapezoid), exact), 1e-5);
    EXPECT_LT(max_abs_diff(convolve(s, s, Quadrature::gregory), exact), 1e-8);
}

TEST(Convolve, TrapezoidConvergesAtSecondOrder) {
    auto err = [](std::size_t n, Quadrature rule) {
        const auto s = GridFunction::sample(n, [](double x) { return std::sin(x); });
        const auto exact = GridFunction::sample(n, [](double x) { return 0.5 * (std::sin(x) - x * std::cos(x)); });
        return max_abs_diff(convolve(s, s, rule), exact);
    };
    const double ratio = err(257, Quadrature::trapezoid) / err(513, Quadrature::trapezoid);
    EXPECT_NEAR(ratio, 4.0, 0.2);
    // The corrected rule gains at least a full extra order.
    EXPECT_GT(err(257, Quadrature::gregory) / err(513, Quadrature::gregory), 7.0);
}

TEST(Convolve, CommutativeAndAssociative) {
    const std::size_t n = 513;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto f = random_smooth(seed, n);
        const auto g = random_smooth(seed + 100, n);
        const auto k = random_smooth(seed + 200, n);
        EXPECT_LT(max_abs_diff(convolve(f, g), convolve(g, f)), 1e-12);
        const double h = f.step();
        for (auto rule : {Quadrature::trapezoid, Quadrature::gregory}) {
            const auto left = convolve(convolve(f, g, rule), k, rule);
            const auto right = convolve(f, convolve(g, k, rule), rule);
            EXPECT_LE(max_abs_diff(left, right), 10 * h * h);
        }
    }
}

TEST(ConvPower, BaseCaseAndErrors) {
    const auto f = random_smooth(7, 129);
    EXPECT_EQ(max_abs_diff(conv_power(f, 1), f), 0.0);
    EXPECT_THROW(conv_power(f, 0), ValidationError);
}

TEST(ConvPower, ConstantPowers) {
    // a^{*nu} = a^nu x^{nu-1} / (nu-1)!
    const std::size_t n = 513;
    const cplx a(0.7, -0.2);
    const auto f = GridFunction::constant(n, a);
    for (int nu = 1; nu <= 6; ++nu) {
        const auto p = conv_power(f, nu);
        const auto exact = GridFunction::sample(
            n, [&](double x) { return std::pow(a, nu) * std::pow(x, nu - 1) / std::tgamma(nu); });
        // The one-interval trapezoid at the first node costs O(h^3).
        EXPECT_LT(max_abs_diff(p, exact), 1e-8) << "nu=" << nu;
    }
    const auto one = GridFunction::constant(n, 1.0);
    const auto third = conv_power(one, 3);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(third[i].real(), 0.5 * third.x(i) * third.x(i), 1e-12);
}

TEST(CumulativeIntegral, Polynomial) {
    const auto f = GridFunction::sample(101, [](double x) { return x * x; });
    const auto F = cumulative_integral(f);
    for (std::size_t i = 0; i < F.size(); ++i) EXPECT_NEAR(F[i].real(), std::pow(F.x(i), 3) / 3, 1e-12);
}

TEST(Norms, ClosedForms) {
    const auto one = GridFunction::constant(1025, 1.0);
    EXPECT_NEAR(norm_l2(one), std::sqrt(kPi), 1e-14);
    EXPECT_NEAR(norm_weighted_l2(one), std::sqrt(std::pow(kPi, 3) / 3), 1e-5);
    EXPECT_DOUBLE_EQ(norm_weighted_inf(one), kPi);
    EXPECT_DOUBLE_EQ(norm_inf(one), 1.0);
    const auto zero = GridFunction::zeros(1025);
    EXPECT_EQ(norm_l2(zero), 0.0);
    EXPECT_EQ(norm_weighted_l2(zero), 0.0);
    EXPECT_EQ(norm_inf(zero), 0.0);
    EXPECT_EQ(norm_weighted_inf(zero), 0.0);
}

TEST(Norms, WeightedInequalities) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto f = random_smooth(seed, 257, 8);
        EXPECT_LE(norm_weighted_l2(f), kPi * norm_l2(f) * (1 + 1e-14));
        EXPECT_LE(norm_weighted_l2(f), std::sqrt(kPi) * norm_weighted_inf(f) * (1 + 1e-14));
    }
}

TEST(Norms, Deterministic) {
    const auto f = random_smooth(3, 1025);
    EXPECT_EQ(norm_weighted_l2(f), norm_weighted_l2(random_smooth(3, 1025)));
}

}  // namespace
}  // namespace convspec
