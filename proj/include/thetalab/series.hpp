#pragma once

// Series evaluators with certified truncation bounds.
//
//   theta_upper(z)   Theta(z) = sum_{n in Z} e^{i pi n^2 z},     Im z > 0
//   theta_right(s)   theta(s) = Theta(i s),                       Re s > 0
//   F_eval(z)        F(z) = sum_{n>=1} e^{i pi n^2 z} / (i pi n^2), Im z >= 0
//   riemann_series   sum sin(n^2 x)/n^alpha  (or cos)
//   weierstrass_eval sum a^n cos(b^n pi x)   (or sin)
//
// Each evaluator returns the value together with a bound on |value - exact|
// that covers the truncated tail and the rounding of the working precision.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "thetalab/bigfloat.hpp"
#include "thetalab/exact_arith.hpp"
#include "thetalab/parallel.hpp"

namespace thetalab {

/// Smallest imaginary part accepted by theta_upper.
inline constexpr double kThetaImagFloor = 1e-12;

enum class SeriesKind { riemann_sin, riemann_cos, weierstrass_cos, weierstrass_sin };

inline std::string to_string(SeriesKind k) {
    switch (k) {
    case SeriesKind::riemann_sin: return "riemann_sin";
    case SeriesKind::riemann_cos: return "riemann_cos";
    case SeriesKind::weierstrass_cos: return "weierstrass_cos";
    case SeriesKind::weierstrass_sin: return "weierstrass_sin";
    }
    return "?";
}

inline SeriesKind series_kind_from_string(const std::string& s) {
    if (s == "riemann_sin") return SeriesKind::riemann_sin;
    if (s == "riemann_cos") return SeriesKind::riemann_cos;
    if (s == "weierstrass_cos") return SeriesKind::weierstrass_cos;
    if (s == "weierstrass_sin") return SeriesKind::weierstrass_sin;
    throw precondition_error("unknown series kind '" + s + "'");
}

/// A Riemann-type series sum trig(n^2 x)/n^alpha or a Weierstrass-type
/// series sum a^n trig(b^n pi x).
struct SeriesSpec {
    SeriesKind kind = SeriesKind::riemann_sin;
    double alpha = 2.0;
    double a = 0.5;
    double b = 3.0;

    static SeriesSpec riemann(bool sine, double alpha) {
        return {sine ? SeriesKind::riemann_sin : SeriesKind::riemann_cos, alpha, 0.5, 3.0};
    }
    static SeriesSpec weierstrass(bool cosine, double a, double b) {
        return {cosine ? SeriesKind::weierstrass_cos : SeriesKind::weierstrass_sin, 2.0, a, b};
    }

    bool is_riemann() const { return kind == SeriesKind::riemann_sin || kind == SeriesKind::riemann_cos; }
    bool is_sine() const { return kind == SeriesKind::riemann_sin || kind == SeriesKind::weierstrass_sin; }

    /// Hoelder exponent log(1/a)/log(b) of the Weierstrass kinds.
    double xi() const { return std::log(1.0 / a) / std::log(b); }

    void validate() const {
        if (is_riemann()) {
            if (!(alpha > 1.0)) throw precondition_error("riemann series needs alpha > 1 for absolute convergence");
        } else {
            if (!(a > 0.0 && a < 1.0)) throw precondition_error("weierstrass series needs 0 < a < 1");
            if (!(b > 1.0)) throw precondition_error("weierstrass series needs b > 1");
        }
    }
};

namespace detail {

/// Bound on the change from rounding to `prec` bits (round-to-nearest).
inline double output_rounding(const BigFloat& v, long prec) { return std::ldexp(std::abs(v.to_double()), -prec); }
inline double output_rounding(const BigComplex& v, long prec) {
    return output_rounding(v.re, prec) + output_rounding(v.im, prec);
}

inline long log2_ceil(double x) { return x <= 1.0 ? 0 : static_cast<long>(std::ceil(std::log2(x))); }

/// Bound on 2 sum_{n>=N} e^{-pi n^2 y}.
inline double theta_tail(double n, double y) {
    return 2.0 * std::exp(-std::numbers::pi * n * n * y) * (1.0 + 1.0 / (2.0 * std::numbers::pi * n * y));
}

/// Bound on sum_{n>=N} e^{-pi n^2 y} / (pi n^2).
inline double F_tail(double n, double y) {
    return std::exp(-std::numbers::pi * n * n * y) * (1.0 / (n * n) + 1.0 / n) / std::numbers::pi;
}

/// sum_{n=1}^{count} e^{i pi n^2 z} * weight(n), via q^{n^2} = q^{(n-1)^2} q^{2n-1}.
template <class Weight>
BigComplex theta_power_sum(const BigComplex& z, std::uint64_t count, long wp, Weight&& weight) {
    const BigFloat pi = BigFloat::pi(wp);
    BigComplex q = expi_pi(z.re.with_precision(wp));
    q *= exp(-(pi * z.im.with_precision(wp)));
    BigComplex q2 = q * q;
    BigComplex odd = q;                   // q^{2n-1}
    BigComplex power(1.0, 0.0, wp);       // q^{(n-1)^2}
    BigComplex acc(wp);
    for (std::uint64_t n = 1; n <= count; ++n) {
        power *= odd;
        acc += weight(n, power);
        odd *= q2;
    }
    return acc;
}

}  // namespace detail

/// Theta(z) = 1 + 2 sum_{n>=1} e^{i pi n^2 z} for Im z >= 1e-12.
inline Certified<BigComplex> theta_upper(const BigComplex& z, long prec = kDefaultPrecision) {
    require_precision(prec);
    const double y = z.im.to_double();
    if (!(y >= kThetaImagFloor)) {
        throw precondition_error("theta_upper: Im z must be >= 1e-12; near the real axis use the F-based probes");
    }
    const double target = pow2_bound(prec + 8);
    const double ln2 = std::numbers::ln2;
    double n = std::ceil(std::sqrt((prec + 16) * ln2 / (std::numbers::pi * y)));
    while (detail::theta_tail(n, y) > target) n += 1.0;
    const auto terms = static_cast<std::uint64_t>(n) - 1;  // n = 1 .. N-1 summed, tail from N

    const long wp = prec + kGuardBits + 2 * detail::log2_ceil(n + 1) + detail::log2_ceil(std::abs(z.re.to_double()) + 2);
    BigComplex s = detail::theta_power_sum(z, terms, wp, [](std::uint64_t, const BigComplex& t) { return t; });
    s *= 2L;
    s.re += 1L;

    const double abs_sum = 1.0 + 1.0 / std::sqrt(y);
    Certified<BigComplex> out{s.with_precision(prec), detail::theta_tail(n, y) + pow2_bound(prec + 16) * abs_sum + detail::output_rounding(s, prec)};
    return out;
}

/// theta(s) = sum_{n in Z} e^{-pi n^2 s} = Theta(i s) for Re s > 0.
inline Certified<BigComplex> theta_right(const BigComplex& s, long prec = kDefaultPrecision) {
    if (!(s.re > 0.0)) throw precondition_error("theta_right: Re s must be positive");
    return theta_upper(times_i(s), prec);
}

/// F(z) = sum_{n>=1} e^{i pi n^2 z} / (i pi n^2) for Im z >= 0.
///
/// For Im z > 0 the sum stops once the tail is below 2^-(prec+8). On the real
/// axis only 1/(pi n^2) decay is available; at most `max_terms` terms are
/// summed and the bound reports the accuracy actually achieved.
inline Certified<BigComplex> F_eval(const BigComplex& z, long prec = kDefaultPrecision, std::uint64_t max_terms = 1u << 20) {
    require_precision(prec);
    const double y = z.im.to_double();
    if (z.im.sign() < 0) throw precondition_error("F_eval: Im z must be >= 0");
    if (max_terms < 1) throw precondition_error("F_eval: max_terms must be positive");
    const double target = pow2_bound(prec + 8);
    double n = 1.0;
    if (y > 0.0) {
        n = std::max(1.0, std::ceil(std::sqrt((prec + 8) * std::numbers::ln2 / (std::numbers::pi * y))));
        while (n <= double(max_terms) && detail::F_tail(n, y) > target) n += 1.0;
    }
    if (y <= 0.0 || n > double(max_terms)) n = double(max_terms) + 1.0;
    const auto terms = static_cast<std::uint64_t>(n) - 1;

    const long wp = prec + kGuardBits + 2 * detail::log2_ceil(n + 1) + detail::log2_ceil(std::abs(z.re.to_double()) + 2);
    BigComplex s = detail::theta_power_sum(z, terms, wp, [](std::uint64_t k, const BigComplex& t) {
        BigComplex r = t;
        mpfr_div_ui(r.re.get(), r.re.get(), k * k, MPFR_RNDN);
        mpfr_div_ui(r.im.get(), r.im.get(), k * k, MPFR_RNDN);
        return r;
    });
    // 1/(i pi) = -i/pi
    BigFloat pi = BigFloat::pi(wp);
    BigComplex out(s.im / pi, -(s.re / pi));
    return {out.with_precision(prec), detail::F_tail(n, y) + pow2_bound(prec + 16) + detail::output_rounding(out, prec)};
}

/// sum_{n>=1} trig(n^2 x) / n^alpha, at most `max_terms` terms.
inline Certified<BigFloat> riemann_series(const SeriesSpec& spec, const BigFloat& x, long prec = kDefaultPrecision,
                                          std::uint64_t max_terms = 1u << 16) {
    require_precision(prec);
    spec.validate();
    if (!spec.is_riemann()) throw precondition_error("riemann_series: spec is not a Riemann kind");
    const double alpha = spec.alpha;
    // Tail sum_{n>N} n^-alpha <= N^{1-alpha}/(alpha-1).
    const double needed = std::exp(((prec + 8) * std::numbers::ln2 - std::log(alpha - 1.0)) / (alpha - 1.0));
    const std::uint64_t n = needed >= double(max_terms) ? max_terms : std::max<std::uint64_t>(1, std::uint64_t(std::ceil(needed)));
    const double tail = std::pow(double(n), 1.0 - alpha) / (alpha - 1.0);

    const long wp = prec + kGuardBits + 2 * detail::log2_ceil(double(n) + 1) + detail::log2_ceil(std::abs(x.to_double()) + 2);
    const BigFloat xw = x.with_precision(wp);
    const BigComplex step = expi(xw);  // e^{i x}
    const BigComplex step2 = step * step;
    BigComplex odd = step;
    BigComplex power(1.0, 0.0, wp);
    const bool integral_alpha = alpha == std::floor(alpha) && alpha <= 16.0;
    const BigFloat neg_alpha(-alpha, wp);
    BigFloat acc(wp);
    for (std::uint64_t k = 1; k <= n; ++k) {
        power *= odd;
        odd *= step2;
        BigFloat t = spec.is_sine() ? power.im : power.re;
        if (integral_alpha) {
            for (int e = 0; e < int(alpha); ++e) mpfr_div_ui(t.get(), t.get(), k, MPFR_RNDN);
        } else {
            t *= pow(BigFloat(static_cast<long>(k), wp), neg_alpha);
        }
        acc += t;
    }
    const double rounding = pow2_bound(prec + 16) * (1.0 + 1.0 / (alpha - 1.0));
    return {acc.with_precision(prec), (n >= max_terms && needed > double(max_terms) ? tail : pow2_bound(prec + 8)) + rounding + detail::output_rounding(acc, prec)};
}

/// sum_{n>=0} a^n trig(b^n pi x), truncated once a^N/(1-a) < 2^-(prec+8).
inline Certified<BigFloat> weierstrass_eval(const SeriesSpec& spec, const BigFloat& x, long prec = kDefaultPrecision) {
    require_precision(prec);
    spec.validate();
    if (spec.is_riemann()) throw precondition_error("weierstrass_eval: spec is not a Weierstrass kind");
    const double a = spec.a;
    const double b = spec.b;
    const auto n = static_cast<std::uint64_t>(
        std::ceil(((prec + 8) * std::numbers::ln2 + std::log(1.0 / (1.0 - a))) / std::log(1.0 / a)));
    const long wp = prec + kGuardBits + static_cast<long>(std::ceil(double(n) * std::log2(b))) +
                    detail::log2_ceil(std::abs(x.to_double()) + 2) + 8;
    const BigFloat pi = BigFloat::pi(wp);
    const BigFloat aw(a, wp);
    const BigFloat bw(b, wp);
    BigFloat an(1L, wp);
    BigFloat bnx = x.with_precision(wp);
    BigFloat acc(wp);
    for (std::uint64_t k = 0; k < n; ++k) {
        BigFloat angle = mod2(bnx) * pi;
        BigFloat t = spec.is_sine() ? sin(angle) : cos(angle);
        acc += an * t;
        an *= aw;
        bnx *= bw;
    }
    const double tail = std::pow(a, double(n)) / (1.0 - a);
    return {acc.with_precision(prec), tail + pow2_bound(prec + 16) / (1.0 - a) + detail::output_rounding(acc, prec)};
}

/// Generic dispatch on the series kind.
inline Certified<BigFloat> series_eval(const SeriesSpec& spec, const BigFloat& x, long prec = kDefaultPrecision,
                                       std::uint64_t max_terms = 1u << 16) {
    return spec.is_riemann() ? riemann_series(spec, x, prec, max_terms) : weierstrass_eval(spec, x, prec);
}

/// Centered fractional part ((x)) = x - floor(x) - 1/2, and 0 at integers.
template <std::floating_point T>
T sawtooth_psi(T x) {
    T f = x - std::floor(x);
    return f == T(0) ? T(0) : f - T(0.5);
}

/// |Theta(z) - e^{i pi/4} z^{-1/2} Theta(-1/z)| with the principal square root.
inline double theta_transform_residual(const BigComplex& z, long prec = kDefaultPrecision) {
    require_precision(prec);
    if (!(z.im > 0.0)) throw precondition_error("theta_transform_residual: Im z must be positive");
    const long wp = prec + kGuardBits;
    BigComplex zw = z.with_precision(wp);
    BigComplex lhs = theta_upper(zw, wp).value;
    BigComplex minus_inv = BigComplex(-1.0, 0.0, wp) / zw;
    BigComplex rhs = theta_upper(minus_inv, wp).value;
    rhs *= eighth_root(1, wp);
    rhs /= sqrt(zw);
    return abs(lhs - rhs).to_double();
}

/// Classical sufficient conditions for non-differentiability of
/// sum a^n cos(b^n pi x); the two general Dini conditions are only defined for
/// a < 1/3 and a < 5/21 respectively.
struct CriteriaReport {
    bool weierstrass = false;                 // ab > 1 + 3pi/2
    bool bromwich = false;                    // ab > 1 + (3pi/2)(1-a)
    bool dini_pair = false;                   // ab >= 1, ab^2 > 1 + 3pi^2
    bool lerch_pair = false;                  // ab >= 1, ab^2 > 1 + pi^2
    std::optional<bool> dini_general;         // ab > 1 + (3pi/2)(1-a)/(1-3a)
    std::optional<bool> dini_general2;        // ab > 1, ab^2 > 1 + 15pi^2 (1-a)/(5-21a)
    bool hardy = false;                       // ab >= 1
};

inline CriteriaReport nondiff_criteria(double a, double b) {
    if (!(a > 0.0 && a < 1.0) || !(b > 1.0)) throw precondition_error("nondiff_criteria: need 0 < a < 1 and b > 1");
    const long wp = kDefaultPrecision;
    const BigFloat A(a, wp), B(b, wp), pi = BigFloat::pi(wp), one(1L, wp);
    const BigFloat ab = A * B;
    const BigFloat ab2 = ab * B;
    const BigFloat pi2 = pi * pi;
    const BigFloat three_half_pi = pi * 3L / 2L;
    const BigFloat one_minus_a = one - A;

    CriteriaReport r;
    r.hardy = ab >= one;
    r.weierstrass = ab > one + three_half_pi;
    r.bromwich = ab > one + three_half_pi * one_minus_a;
    r.dini_pair = r.hardy && ab2 > one + pi2 * 3L;
    r.lerch_pair = r.hardy && ab2 > one + pi2;
    const BigFloat one_minus_3a = one - A * 3L;
    if (one_minus_3a > 0.0) r.dini_general = ab > one + three_half_pi * one_minus_a / one_minus_3a;
    const BigFloat five_minus_21a = BigFloat(5L, wp) - A * 21L;
    if (five_minus_21a > 0.0) r.dini_general2 = ab > one && ab2 > one + pi2 * 15L * one_minus_a / five_minus_21a;
    return r;
}

// ---------------------------------------------------------------------------
// F near the real axis at a rational base point.
// ---------------------------------------------------------------------------

/// Largest index for which n^2 is exact in binary64.
inline constexpr std::uint64_t kNearRealMaxTerms = 94'000'000;

/// F(q/p + h + i eps) summed in binary64.
///
/// The rational part of the phase, n^2 q/p mod 2, is reduced exactly in
/// integers; the n^2 h part is reduced with one rounding. Terms are dropped
/// once pi n^2 eps > 40 (or at max_terms). The bound covers the tail, the
/// phase rounding (|h| 2^-52 per term), the decay recurrence and the
/// compensated summation.
inline Certified<std::complex<double>> F_near_rational(const ReducedRational& x, double h, double eps,
                                                      std::uint64_t max_terms = kNearRealMaxTerms) {
    if (!(eps >= 0.0)) throw precondition_error("F_near_rational: eps must be >= 0");
    if (!x.den().fits_slong_p() || x.den() > 1'000'000'000) throw precondition_error("F_near_rational: denominator too large");
    max_terms = std::min(max_terms, kNearRealMaxTerms);
    const std::int64_t p = x.den().get_si();
    const std::int64_t modulus = 2 * p;
    const auto q = static_cast<std::int64_t>(mpz_fdiv_ui(x.num().get_mpz_t(), static_cast<unsigned long>(modulus)));

    constexpr double kCut = 40.0;
    std::uint64_t n_max = max_terms;
    if (eps > 0.0) {
        const double need = std::ceil(std::sqrt(kCut / (std::numbers::pi * eps)));
        if (need < double(max_terms)) n_max = static_cast<std::uint64_t>(need);
    }
    const double inv_p = 1.0 / double(p);

    const auto m = static_cast<std::uint64_t>(modulus);
    const auto qm = static_cast<std::uint64_t>(q);
    const double decay = std::numbers::pi * eps;
    auto partials = chunked_map(1, n_max + 1, 1u << 16, [&](std::uint64_t lo, std::uint64_t hi) {
        ComplexCompensatedSum acc;
        // r = n^2 q mod 2p and dr = (2n+1) q mod 2p, advanced by additions only.
        std::uint64_t r = (lo % m) * (lo % m) % m * qm % m;
        std::uint64_t dr = (2 * (lo % m) + 1) % m * qm % m;
        const std::uint64_t ddr = 2 * qm % m;
        double g = 0.0, dg = 0.0;
        const double gg = std::exp(-2.0 * decay);
        for (std::uint64_t n = lo; n < hi; ++n) {
            const double nd = double(n);
            const double n2 = nd * nd;
            // e^{-pi eps n^2} by recurrence, refreshed every 64 terms.
            if (((n - lo) & 63) == 0) {
                g = std::exp(-decay * n2);
                dg = std::exp(-decay * (2.0 * nd + 1.0));
            }
            const double nh = n2 * h;
            double t = double(r) * inv_p + (nh - 2.0 * std::floor(nh * 0.5));
            t -= 2.0 * std::floor((t + 1.0) * 0.5);  // into [-1, 1)
            const double mag = g / (std::numbers::pi * n2);
            const double s = std::sin(std::numbers::pi * t);
            const double c = std::cos(std::numbers::pi * t);
            acc.add({mag * s, -mag * c});  // e^{i theta}/i
            r += dr;
            if (r >= m) r -= m;
            dr += ddr;
            if (dr >= m) dr -= m;
            g *= dg;
            dg *= gg;
        }
        return acc;
    });
    ComplexCompensatedSum total;
    for (const auto& part : partials) total.add(part);

    const double nd = double(n_max) + 1.0;
    const double tail = eps > 0.0 ? detail::F_tail(nd, eps) : (1.0 / (nd * nd) + 1.0 / nd) / std::numbers::pi;
    const double rounding = double(n_max) * std::abs(h) * 0x1p-51 + 0x1p-44;
    return {total.value(), tail + rounding};
}

}  // namespace thetalab
