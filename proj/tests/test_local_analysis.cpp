#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "thetalab/local_analysis.hpp"

using namespace thetalab;

namespace {

/// Second, independent statement of the parity table.
struct Expected {
    bool two_sided;
    const char* right;
    const char* left;
    const char* symmetric;
};

Expected table_entry(long r, long s) {
    const long r4 = ((r % 4) + 4) % 4;
    if (r % 2 != 0 && s % 2 != 0) return {true, "zero", "zero", "zero"};
    return {false, r4 == 1 ? "zero" : "infinite", r4 == 3 ? "zero" : "infinite",
            (s % 4 == 3 && r % 2 == 0) ? "zero" : "infinite"};
}

}  // namespace

TEST(Classify, Examples) {
    const auto one = classify_rational(reduce(1L, 1L));
    EXPECT_EQ(one.two_sided, TwoSided::derivative_zero_for_g);
    EXPECT_TRUE(one.kappa.is_zero);

    const auto half = classify_rational(reduce(1L, 2L));
    EXPECT_EQ(half.two_sided, TwoSided::none);
    EXPECT_EQ(half.right, DerivativeStatus::zero);
    EXPECT_EQ(half.left, DerivativeStatus::infinite);
    EXPECT_EQ(half.symmetric, DerivativeStatus::infinite);

    const auto zero = classify_rational(reduce(0L, 1L));
    EXPECT_EQ(zero.two_sided, TwoSided::none);
    EXPECT_FALSE(zero.kappa.is_zero);
    EXPECT_EQ(zero.kappa.phase.k, 1);
    EXPECT_EQ(zero.kappa.inv_radicand, 1);

    const auto two_thirds = classify_rational(reduce(2L, 3L));
    EXPECT_EQ(two_thirds.symmetric, DerivativeStatus::zero);
}

TEST(Classify, ExhaustiveParityTable) {
    for (long s = 1; s <= 100; ++s) {
        for (long r = 0; r <= 100; ++r) {
            if (std::gcd(r, s) != 1) continue;
            const auto v = classify_rational(reduce(r, s));
            const auto e = table_entry(r, s);
            ASSERT_EQ(v.two_sided == TwoSided::derivative_zero_for_g, e.two_sided) << r << "/" << s;
            ASSERT_EQ(to_string(v.right), e.right) << r << "/" << s;
            ASSERT_EQ(to_string(v.left), e.left) << r << "/" << s;
            ASSERT_EQ(to_string(v.symmetric), e.symmetric) << r << "/" << s;
        }
    }
}

TEST(Classify, NegativeNumerators) {
    // -1 = 3 mod 4: left derivative zero.
    const auto v = classify_rational(reduce(-1L, 2L));
    EXPECT_EQ(v.left, DerivativeStatus::zero);
    EXPECT_EQ(v.right, DerivativeStatus::infinite);
}

TEST(Kappa, ZeroExactlyForTwoSidedCase) {
    for (long s = 1; s <= 200; ++s) {
        for (long r = -200; r <= 200; ++r) {
            if (std::gcd(r, s) != 1) continue;
            const auto xi = reduce(r, s);
            ASSERT_EQ(predicted_kappa_exact(xi).is_zero, classify_rational(xi).two_sided == TwoSided::derivative_zero_for_g);
        }
    }
}

TEST(Kappa, Values) {
    const auto k0 = predicted_kappa(reduce(0L, 1L));
    EXPECT_NEAR(k0.re.to_double(), std::numbers::sqrt2 / 2, 1e-15);
    EXPECT_NEAR(k0.im.to_double(), std::numbers::sqrt2 / 2, 1e-15);
    const auto k12 = predicted_kappa(reduce(1L, 2L));
    EXPECT_NEAR(k12.re.to_double(), 0.0, 1e-15);
    EXPECT_NEAR(k12.im.to_double(), 1.0 / std::numbers::sqrt2, 1e-15);
    EXPECT_TRUE(predicted_kappa(reduce(3L, 5L)).re.is_zero());
    EXPECT_EQ(predicted_kappa_exact(reduce(1L, 2L)).to_string(), "e^(i*2π/4)/sqrt(2)");
}

TEST(Grid, GeometricEndpoints) {
    const auto g = geometric_grid(1e-5, 1e-2, 11);
    ASSERT_EQ(g.size(), 11u);
    EXPECT_EQ(g.front(), 1e-5);
    EXPECT_EQ(g.back(), 1e-2);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], std::pow(1000.0, 0.1), 1e-12);
    EXPECT_EQ(dyadic_steps(1e-5, 1e-2), 11);
    EXPECT_THROW(expansion_check(reduce(0L, 1L), 1e-2, 1e-3, 10), precondition_error);
    EXPECT_THROW(expansion_check(reduce(0L, 1L), 1e-3, 0.2, 10), precondition_error);
    EXPECT_THROW(expansion_check(reduce(0L, 1L), 1e-3, 1e-2, 4), precondition_error);
}

TEST(Expansion, OriginMatchesPrediction) {
    const auto r = expansion_check(reduce(0L, 1L), 1e-4, 1e-2, 8);
    EXPECT_LT(r.kappa_error, 1e-3);
    ASSERT_TRUE(r.fitted_exponent.has_value());
    EXPECT_NEAR(*r.fitted_exponent, 1.5, 0.1);
    EXPECT_EQ(r.rows.size(), 16u);
}

TEST(Expansion, InsensitiveToEpsilon) {
    const auto xi = reduce(1L, 2L);
    const auto a = expansion_check(xi, 1e-4, 1e-2, 8);
    const auto b = expansion_check(xi, 1e-4, 1e-2, 8, kDefaultPrecision, 2.0);
    EXPECT_LT(std::abs(a.kappa_fitted - b.kappa_fitted), 1e-4);
}

TEST(Expansion, RemainderBoundedUnderRefinement) {
    const auto xi = reduce(1L, 4L);
    const auto coarse = expansion_check(xi, 4e-4, 1e-2, 8);
    const auto fine = expansion_check(xi, 1e-4, 1e-2, 10);
    EXPECT_LT(fine.max_model_residual, 4.0 * coarse.max_model_residual + 1.0);
}

TEST(Derivative, OddOddPoint) {
    const auto d = derivative_estimate(reduce(1L, 1L));
    ASSERT_TRUE(d.estimate.has_value());
    EXPECT_NEAR(*d.estimate, -0.5, 5e-3);
    EXPECT_FALSE(d.left_diverges);
    EXPECT_FALSE(d.right_diverges);
}

TEST(Derivative, HalfDivergesFromTheLeft) {
    const auto d = derivative_estimate(reduce(1L, 2L));
    EXPECT_FALSE(d.estimate.has_value());
    EXPECT_TRUE(d.left_diverges);
    EXPECT_FALSE(d.right_diverges);
    // |D| ~ |h|^{-1/2}: halving h twice doubles the quotient.
    EXPECT_NEAR(d.rows[2].left / d.rows[0].left, 2.0, 0.05);
}

TEST(Holder, SyntheticPowerLaw) {
    for (double c : {0.25, 0.5, 0.75, 1.0}) {
        const auto hs = geometric_grid(1e-6, 1e-1, 20);
        std::vector<double> inc;
        for (double h : hs) inc.push_back(std::pow(h, c));
        const auto f = holder_from_increments(hs, inc);
        EXPECT_NEAR(f.exponent, c, 1e-6);
        EXPECT_LT(f.residual, 1e-9);
    }
}

TEST(Holder, NoiseFloorIsInconclusive) {
    const auto hs = geometric_grid(1e-6, 1e-1, 10);
    const std::vector<double> inc(hs.size(), 1e-30);
    EXPECT_TRUE(holder_from_increments(hs, inc, 1e-20).inconclusive);
}

TEST(Holder, WeierstrassExponent) {
    const auto r = holder_exponent(SeriesSpec::weierstrass(true, 0.5, 4.0), BigFloat(0L, 192), 1e-8, 1e-1, 57, 128);
    EXPECT_FALSE(r.inconclusive);
    EXPECT_NEAR(r.estimated_exponent, 0.5, 0.05);
}

TEST(Probe, HypothesisAndGrowth) {
    const auto r = infinite_derivative_probe(0.5, 2.0, ProbeKind::sine, 16, 128);
    EXPECT_TRUE(r.hypothesis);
    EXPECT_TRUE(r.strictly_increasing);
    const auto s = infinite_derivative_probe(0.3, 2.0, ProbeKind::sine, 12, 128);
    EXPECT_FALSE(s.hypothesis);
    EXPECT_EQ(s.rows.size(), 12u);
}

TEST(Probe, ShiftedCosineMirrorsSine) {
    // b = 1 mod 4: cos(b^n pi (1/2 + y)) = -sin(b^n pi y).
    const auto sine = infinite_derivative_probe(0.3, 5.0, ProbeKind::sine, 10, 128);
    const auto cosine = infinite_derivative_probe(0.3, 5.0, ProbeKind::cosine_shifted, 10, 128);
    for (std::size_t i = 0; i < sine.rows.size(); ++i) {
        ASSERT_NEAR(cosine.rows[i].quotient, -sine.rows[i].quotient, 1e-9 * (1.0 + std::abs(sine.rows[i].quotient)));
    }
}
