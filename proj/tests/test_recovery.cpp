#include <gtest/gtest.h>

#include <cmath>

#include "convspec/recovery.hpp"
#include "test_support.hpp"

namespace convspec {
namespace {

TEST(NToM, Zero) { EXPECT_EQ(norm_inf(n_to_m(GridFunction::zeros(65))), 0.0); }

TEST(NToM, ConstantKernel) {
    const auto M = n_to_m(GridFunction::constant(513, 0.25));
    EXPECT_LT(testing::max_abs_diff(M, testing::quadratic_kernel(0.25, 513)), 1e-13);
}

TEST(NToM, FirstOrder) {
    const auto N = testing::random_smooth_w2(4, 513, 1e-3);
    const auto M = n_to_m(N);
    const double rem = norm_weighted_l2(M - 2.0 * N);
    EXPECT_GT(rem, 0.0);
    EXPECT_LT(rem, kPi * kPi * 1e-6);
}

TEST(MToN, Examples) {
    EXPECT_EQ(norm_inf(m_to_n(GridFunction::zeros(65)).N), 0.0);
    const auto r = m_to_n(testing::quadratic_kernel(0.25, 513));
    EXPECT_LT(testing::max_abs_diff(r.N, GridFunction::constant(513, 0.25)), 1e-8);
    EXPECT_LT(r.residual_w2, 1e-12);
}

TEST(MToN, RoundTrips) {
    const double tol = 1e-13;
    for (std::uint64_t seed = 10; seed < 20; ++seed) {
        const auto N = testing::random_smooth_w2(seed, 257, 1.0);
        EXPECT_LT(norm_weighted_l2(m_to_n(n_to_m(N), tol).N - N), 10 * tol) << seed;
        const auto M = testing::random_smooth_w2(seed + 100, 257, 1.0);
        EXPECT_LT(norm_weighted_l2(n_to_m(m_to_n(M, tol).N) - M), 10 * tol) << seed;
    }
}

TEST(MToN, ErrorsCarryHistory) {
    EXPECT_THROW(m_to_n(GridFunction::zeros(9), 0.0), ValidationError);
    try {
        m_to_n(testing::quadratic_kernel(0.25, 129), 1e-13, 2);
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        EXPECT_EQ(e.history().size(), 2u);
    }
}

TEST(NToM, LipschitzConstantOfTheUnitBall) {
    const double C2 = 2 + 2 * std::sqrt(kPi);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto N = testing::random_smooth_w2(2 * seed + 1, 257, 1.0);
        const auto Nt = testing::random_smooth_w2(2 * seed + 2, 257, 0.3 + 0.035 * double(seed));
        const double dM2 = norm_weighted_l2(n_to_m(N) - n_to_m(Nt));
        const double dMi = norm_weighted_inf(n_to_m(N) - n_to_m(Nt));
        EXPECT_LE(dM2, C2 * norm_weighted_l2(N - Nt));
        EXPECT_LE(dMi, C2 * norm_weighted_inf(N - Nt));
    }
}

}  // namespace
}  // namespace convspec
