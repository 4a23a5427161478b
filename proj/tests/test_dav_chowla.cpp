#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thetalab/dav_chowla.hpp"

using namespace thetalab;

TEST(FracMul, MatchesHighPrecision) {
    const BigFloat x = sqrt(BigFloat(2L, 256)) / BigFloat(2L, 256);
    const auto dd = DoubleDouble::from(x);
    for (double k : {1.0, 977.0, 123456789.0, 4.0e15, 8.9e15}) {
        BigFloat kx = BigFloat(k, 256) * x;
        const double ref = (kx - floor(kx)).to_double();
        ASSERT_NEAR(frac_mul(k, dd), ref, 1e-15) << k;
    }
}

TEST(DcLhs, IntegerPointIsZero) {
    const auto tab = liouville_sieve(1000);
    for (std::uint64_t n : {1u, 10u, 1000u}) EXPECT_EQ(dc_lhs(3.0, n, tab), 0.0);
}

TEST(DcLhs, HandValue) {
    const auto tab = liouville_sieve(4);
    EXPECT_NEAR(dc_lhs(0.25, 4, tab), -1.0 / 3.0, 1e-16);
    EXPECT_THROW(dc_lhs(0.25, 5, tab), precondition_error);
}

TEST(DcLhs, HalfIntegerPointIsZero) {
    const auto tab = liouville_sieve(10'000);
    for (double x : {0.5, 1.5, -2.5}) EXPECT_EQ(dc_lhs(x, 10'000, tab), 0.0);
    EXPECT_EQ(dc_rhs(1.5).value, 0.0);
}

TEST(DcRhs, Values) {
    EXPECT_EQ(dc_rhs(0.0).value, 0.0);
    EXPECT_EQ(dc_rhs(0.5).value, 0.0);
    // Only odd n contribute at 1/4, each with sin(pi/2) = 1: -(1/pi)(pi^2/8).
    const auto q = dc_rhs(0.25);
    EXPECT_NEAR(q.value, -std::numbers::pi / 8.0, q.error_bound);
    EXPECT_LT(q.error_bound, 1e-8);
}

TEST(DcRhs, TruncationHonesty) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> xs(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double x = xs(rng);
        const auto a = dc_rhs(x, 1e-5);
        const auto b = dc_rhs(x, 5e-6);
        ASSERT_LE(std::abs(a.value - b.value), a.error_bound) << x;
    }
}

TEST(DcReport, QuarterPointSingleCheckpoint) {
    const auto tab = liouville_sieve(4);
    const auto rep = dc_report(0.25, {4}, tab);
    ASSERT_EQ(rep.residuals.size(), 1u);
    EXPECT_NEAR(rep.residuals[0], -1.0 / 3.0 + std::numbers::pi / 8.0, 1e-8);
}

TEST(DcReport, HalfPointAllZero) {
    const auto tab = liouville_sieve(100'000);
    const auto rep = dc_report(0.5, {1000, 10'000, 100'000}, tab);
    for (double r : rep.residuals) EXPECT_EQ(r, 0.0);
    EXPECT_TRUE(rep.final_within_bound);
    EXPECT_TRUE(rep.running_max_nonincreasing);
}

TEST(DcReport, PartialsMatchDirectSums) {
    const auto tab = liouville_sieve(50'000);
    const DoubleDouble x = DoubleDouble::from(sqrt(BigFloat(3L, 256)) - BigFloat(1L, 256));
    const auto rep = dc_report(x, {50'000, 100, 5'000}, tab);
    ASSERT_EQ(rep.schedule, (std::vector<std::uint64_t>{100, 5'000, 50'000}));
    for (std::size_t i = 0; i < rep.schedule.size(); ++i) {
        EXPECT_NEAR(rep.lhs_partials[i], dc_lhs(x, rep.schedule[i], tab), 1e-13);
    }
    EXPECT_THROW(dc_report(x, {60'000}, tab), precondition_error);
}
