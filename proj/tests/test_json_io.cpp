#include <gtest/gtest.h>

#include "thetalab/json_io.hpp"
#include "thetalab/thetalab.hpp"

using namespace thetalab;

namespace {

/// to_json -> text -> parse -> reader -> to_json must reproduce the text.
template <class T, class Reader>
void expect_roundtrip(const T& value, Reader read) {
    const std::string text = to_json(value).dump();
    const T back = read(Json::parse(text));
    EXPECT_EQ(to_json(back).dump(), text);
}

}  // namespace

TEST(JsonIo, BigFloatIsExact) {
    for (long prec : {64L, 192L, 400L}) {
        const BigFloat x = BigFloat::pi(prec) / BigFloat(7L, prec);
        const BigFloat back = big_from_json(big_to_json(x), prec);
        EXPECT_TRUE(back == x) << prec;
    }
    const BigComplex z = expi(BigFloat(1L, 192));
    const BigComplex w = complex_from_json(complex_to_json(z), 192);
    EXPECT_TRUE(w.re == z.re && w.im == z.im);
}

TEST(JsonIo, ExactValues) {
    expect_roundtrip(reduce(-3L, 12L), rational_from_json);
    expect_roundtrip(gauss_sum_closed(7, 3), exact_gauss_from_json);
    expect_roundtrip(gauss_sum_closed(2, 1), exact_gauss_from_json);
    expect_roundtrip(predicted_kappa_exact(reduce(1L, 2L)), exact_kappa_from_json);
    expect_roundtrip(predicted_kappa_exact(reduce(1L, 3L)), exact_kappa_from_json);
}

TEST(JsonIo, SpecsAndVerdicts) {
    expect_roundtrip(SeriesSpec::riemann(false, 2.5), series_spec_from_json);
    expect_roundtrip(SeriesSpec::weierstrass(true, 0.6, 3.0), series_spec_from_json);
    expect_roundtrip(nondiff_criteria(0.2, 40.0), criteria_from_json);
    expect_roundtrip(nondiff_criteria(0.5, 13.0), criteria_from_json);
    for (long r = 0; r < 8; ++r) expect_roundtrip(classify_rational(reduce(r, 6L)), verdict_from_json);
}

TEST(JsonIo, Reports) {
    expect_roundtrip(expansion_check(reduce(0L, 1L), 1e-3, 1e-2, 8), expansion_from_json);
    expect_roundtrip(holder_exponent(SeriesSpec::weierstrass(true, 0.5, 4.0), BigFloat(0L, 128), 1e-6, 1e-1, 12, 96),
                     holder_from_json);
    expect_roundtrip(infinite_derivative_probe(0.5, 2.0, ProbeKind::cosine_shifted, 8, 96), probe_from_json);
    const auto tab = liouville_sieve(1000);
    expect_roundtrip(dc_report(0.3, {10, 1000}, tab), dc_from_json);
}

TEST(JsonIo, DerivativeReport) {
    DerivativeReport r;
    r.point = reduce(1L, 2L);
    r.epsilon = 1e-12;
    r.rows = {{1e-5, 0.25, -300.0}, {5e-6, 0.125, -424.0}};
    r.right_limit = 0.0;
    r.left_limit = -600.0;
    r.left_diverges = true;
    r.quotient_error_bound = 1e-9;
    expect_roundtrip(r, derivative_from_json);
    r.estimate = -0.5;
    expect_roundtrip(r, derivative_from_json);
}

TEST(JsonIo, RejectsUnknownEnums) {
    EXPECT_THROW(derivative_status_from_string("maybe"), precondition_error);
    EXPECT_THROW(series_spec_from_json(Json{{"kind", "fourier"}}), precondition_error);
    EXPECT_THROW(probe_kind_from_string("tangent"), precondition_error);
}
