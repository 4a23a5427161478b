#pragma once

// Local behaviour of F(z) = sum e^{i pi n^2 z}/(i pi n^2) and of Riemann's
// function f(y) = sum sin(n^2 y)/n^2 = pi Re F(y/pi) at rational points, plus
// Hoelder-exponent and infinite-derivative probes for the Weierstrass series.
//
// Near x = q/p the model is
//     F(x + w) - F(x) = kappa sqrt(w) - w/2 + O(|w|^{3/2}),
//     kappa = e^{i pi/4} R(p, q) / sqrt(p),
// with the principal square root; kappa = 0 exactly when p and q are odd.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thetalab/bigfloat.hpp"
#include "thetalab/exact_arith.hpp"
#include "thetalab/gauss.hpp"
#include "thetalab/parallel.hpp"
#include "thetalab/series.hpp"

namespace thetalab {

enum class TwoSided { derivative_zero_for_g, none };
enum class DerivativeStatus { zero, infinite, none };

inline std::string to_string(TwoSided t) { return t == TwoSided::derivative_zero_for_g ? "derivative_zero_for_g" : "none"; }
inline std::string to_string(DerivativeStatus d) {
    switch (d) {
    case DerivativeStatus::zero: return "zero";
    case DerivativeStatus::infinite: return "infinite";
    case DerivativeStatus::none: return "none";
    }
    return "?";
}

/// kappa in exact form: zero, or e^{i k pi/4} / sqrt(m).
struct ExactKappa {
    bool is_zero = true;
    EighthRootPhase phase;
    Integer inv_radicand = 1;

    std::complex<double> to_complex() const {
        if (is_zero) return {0.0, 0.0};
        return std::polar(1.0 / std::sqrt(inv_radicand.get_d()), phase.k * std::numbers::pi / 4.0);
    }
    std::string to_string() const {
        if (is_zero) return "0";
        return phase.to_string() + "/sqrt(" + inv_radicand.get_str() + ")";
    }
    friend bool operator==(const ExactKappa&, const ExactKappa&) = default;
};

struct Verdict {
    ReducedRational point;
    TwoSided two_sided = TwoSided::none;
    DerivativeStatus right = DerivativeStatus::none;
    DerivativeStatus left = DerivativeStatus::none;
    DerivativeStatus symmetric = DerivativeStatus::none;
    ExactKappa kappa;
};

/// Exact kappa for the point q/p.
inline ExactKappa predicted_kappa_exact(const ReducedRational& xi) {
    const ExactGaussSum r = itatsu_R(xi.den(), xi.num());
    if (r.is_zero) return {};
    return {false, r.phase * EighthRootPhase{1}, xi.den()};
}

inline BigComplex predicted_kappa(const ReducedRational& xi, long prec = kDefaultPrecision) {
    require_precision(prec);
    const ExactKappa k = predicted_kappa_exact(xi);
    if (k.is_zero) return BigComplex(prec);
    return eighth_root(k.phase.k, prec) / sqrt(BigFloat(k.inv_radicand, prec));
}

/// Differentiability of Riemann's function at x = pi r/s, by parity of r and s.
inline Verdict classify_rational(const ReducedRational& xi) {
    using detail::residue;
    Verdict v;
    v.point = xi;
    v.kappa = predicted_kappa_exact(xi);
    const unsigned r4 = residue(xi.num(), 4u);
    const unsigned s4 = residue(xi.den(), 4u);
    if ((r4 & 1) && (s4 & 1)) {
        v.two_sided = TwoSided::derivative_zero_for_g;
        v.right = v.left = v.symmetric = DerivativeStatus::zero;
        return v;
    }
    v.two_sided = TwoSided::none;
    v.right = r4 == 1 ? DerivativeStatus::zero : DerivativeStatus::infinite;
    v.left = r4 == 3 ? DerivativeStatus::zero : DerivativeStatus::infinite;
    v.symmetric = (s4 == 3 && (r4 & 1) == 0) ? DerivativeStatus::zero : DerivativeStatus::infinite;
    return v;
}

// ---------------------------------------------------------------------------
// Expansion check
// ---------------------------------------------------------------------------

struct ExpansionRow {
    double h = 0;
    std::complex<double> delta;  // F(x + h + i eps) - F(x + i eps)
    std::complex<double> model;  // kappa_fitted (sqrt(z) - sqrt(i eps)) - h/2
    double residual = 0;         // |delta - model| / |z|^{3/2}
};

struct ExpansionReport {
    ReducedRational point;
    double epsilon = 0;
    std::vector<double> h_grid;  // positive magnitudes; both signs are evaluated
    std::complex<double> kappa_fitted;
    std::complex<double> kappa_predicted;
    double kappa_error = 0;
    double max_model_residual = 0;
    std::optional<double> fitted_exponent;  // absent when every residual is at the noise floor
    double delta_error_bound = 0;
    bool exact_match = false;  // predicted kappa is zero and the fit is at the noise floor
    std::vector<ExpansionRow> rows;
};

/// Geometric grid of `steps` points from lo to hi inclusive.
inline std::vector<double> geometric_grid(double lo, double hi, int steps) {
    std::vector<double> g(static_cast<std::size_t>(steps));
    const double ratio = std::log(hi / lo) / (steps - 1);
    for (int j = 0; j < steps; ++j) g[j] = lo * std::exp(ratio * j);
    g.front() = lo;
    g.back() = hi;
    return g;
}

/// Default step count for a ratio-2 grid over [lo, hi].
inline int dyadic_steps(double lo, double hi) {
    return std::max(8, static_cast<int>(std::ceil(std::log2(hi / lo))) + 1);
}

namespace detail {

inline void check_grid(double h_min, double h_max, int steps) {
    if (!(h_min > 0.0 && h_min < h_max && h_max <= 0.1)) throw precondition_error("grid needs 0 < h_min < h_max <= 0.1");
    if (steps < 8) throw precondition_error("grid needs steps >= 8");
}

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double rms = 0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss += e * e;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

}  // namespace detail

/// Fits kappa in F(x + z) - F(x + i eps) = kappa (sqrt(z) - sqrt(i eps)) - h/2
/// over z = +-h + i eps, h on a geometric grid, eps = eps_scale * h_min^2/100.
///
/// The fit is weighted by 1/|z|^3, the inverse variance of an O(|z|^{3/2})
/// remainder, so small |h| (where the model is sharpest) dominates.
inline ExpansionReport expansion_check(const ReducedRational& xi, double h_min, double h_max, int steps,
                                       long prec = kDefaultPrecision, double eps_scale = 1.0) {
    require_precision(prec);
    detail::check_grid(h_min, h_max, steps);
    if (!(eps_scale > 0.0)) throw precondition_error("expansion_check: eps_scale must be positive");
    ExpansionReport rep;
    rep.point = xi;
    rep.epsilon = eps_scale * h_min * h_min / 100.0;
    rep.h_grid = geometric_grid(h_min, h_max, steps);
    rep.kappa_predicted = predicted_kappa_exact(xi).to_complex();
    const double eps = rep.epsilon;

    std::vector<double> hs;
    for (double h : rep.h_grid) hs.push_back(h);
    for (double h : rep.h_grid) hs.push_back(-h);

    const auto base = F_near_rational(xi, 0.0, eps);
    std::vector<Certified<std::complex<double>>> vals;
    vals.reserve(hs.size());
    for (double h : hs) vals.push_back(F_near_rational(xi, h, eps));

    using C = std::complex<double>;
    const C sqrt_ieps = std::sqrt(C(0.0, eps));
    std::vector<C> delta(hs.size()), basis(hs.size());
    C num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const C z(hs[i], eps);
        delta[i] = vals[i].value - base.value;
        basis[i] = std::sqrt(z) - sqrt_ieps;
        rep.delta_error_bound = std::max(rep.delta_error_bound, vals[i].error_bound + base.error_bound);
        const double w = 1.0 / std::pow(std::abs(z), 3);
        const C target = delta[i] + hs[i] / 2.0;
        num += w * std::conj(basis[i]) * target;
        den += w * std::norm(basis[i]);
    }
    rep.kappa_fitted = num / den;
    rep.kappa_error = std::abs(rep.kappa_fitted - rep.kappa_predicted);

    std::vector<double> lx, ly;
    bool all_at_floor = true;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const C z(hs[i], eps);
        const double scale = std::pow(std::abs(z), 1.5);
        ExpansionRow row;
        row.h = hs[i];
        row.delta = delta[i];
        row.model = rep.kappa_fitted * basis[i] - hs[i] / 2.0;
        row.residual = std::abs(delta[i] - row.model) / scale;
        rep.max_model_residual = std::max(rep.max_model_residual, row.residual);
        rep.rows.push_back(row);

        const std::size_t j = i % rep.h_grid.size();
        const double pred_res = std::abs(delta[i] - (rep.kappa_predicted * basis[i] - hs[i] / 2.0));
        if (pred_res > 4.0 * rep.delta_error_bound) all_at_floor = false;
        if (j == 0 || j + 1 == rep.h_grid.size()) continue;
        if (pred_res > 4.0 * rep.delta_error_bound) {
            lx.push_back(std::log(std::abs(hs[i])));
            ly.push_back(std::log(pred_res));
        }
    }
    if (lx.size() >= 2) rep.fitted_exponent = detail::fit_line(lx, ly).slope;
    rep.exact_match = rep.kappa_predicted == C(0.0, 0.0) && all_at_floor;
    return rep;
}

// ---------------------------------------------------------------------------
// Derivative estimate
// ---------------------------------------------------------------------------

struct DerivativeRow {
    double h = 0;
    double right = 0;  // Re(F(x + h + i eps) - F(x + i eps)) / h
    double left = 0;   // same at -h
};

struct DerivativeReport {
    ReducedRational point;
    double epsilon = 0;
    std::vector<DerivativeRow> rows;
    double right_limit = 0;
    double left_limit = 0;
    bool right_diverges = false;
    bool left_diverges = false;
    std::optional<double> estimate;  // present when neither side diverges
    double quotient_error_bound = 0;
};

/// Largest starting step of the derivative grid.
inline constexpr double kDerivativeStartStep = 1.6e-5;

/// d/dy sum sin(n^2 y)/n^2 at y = pi xi, as Re(F(xi + h) - F(xi))/h.
///
/// h runs over 1/(2 M^2 2^j), M = 2p, so h M^2 is a fixed dyadic fraction and
/// the oscillating part of the remainder keeps its phase. The three steps h,
/// h/2, h/4 eliminate the sqrt(h) and h terms of D(h) = L + c1 sqrt(h) + c2 h.
/// A side whose quotient grows like |h|^{-1/2} is reported as divergent.
inline DerivativeReport derivative_estimate(const ReducedRational& xi, long prec = kDefaultPrecision) {
    require_precision(prec);
    if (xi.den() > 1'000'000) throw precondition_error("derivative_estimate: denominator too large");
    DerivativeReport rep;
    rep.point = xi;
    const double m = 2.0 * xi.den().get_d();
    double h0 = 1.0 / (2.0 * m * m);
    while (h0 > kDerivativeStartStep) h0 /= 2.0;
    const std::array<double, 3> hs{h0, h0 / 2.0, h0 / 4.0};
    rep.epsilon = hs[2] * hs[2] / 100.0;

    const auto base = F_near_rational(xi, 0.0, rep.epsilon);
    for (double h : hs) {
        const auto plus = F_near_rational(xi, h, rep.epsilon);
        const auto minus = F_near_rational(xi, -h, rep.epsilon);
        rep.rows.push_back({h, (plus.value - base.value).real() / h, (minus.value - base.value).real() / -h});
        rep.quotient_error_bound =
            std::max(rep.quotient_error_bound, (std::max(plus.error_bound, minus.error_bound) + base.error_bound) / h);
    }

    const double s2 = std::numbers::sqrt2;
    auto extrapolate = [&](auto pick) {
        const double d0 = pick(rep.rows[0]), d1 = pick(rep.rows[1]), d2 = pick(rep.rows[2]);
        const double r0 = (s2 * d1 - d0) / (s2 - 1.0);
        const double r1 = (s2 * d2 - d1) / (s2 - 1.0);
        return 2.0 * r1 - r0;
    };
    auto diverges = [&](auto pick) { return std::abs(pick(rep.rows[2])) > 1.5 * std::abs(pick(rep.rows[0])) + 1.0; };
    auto right = [](const DerivativeRow& r) { return r.right; };
    auto left = [](const DerivativeRow& r) { return r.left; };
    rep.right_limit = extrapolate(right);
    rep.left_limit = extrapolate(left);
    rep.right_diverges = diverges(right);
    rep.left_diverges = diverges(left);
    if (!rep.right_diverges && !rep.left_diverges) rep.estimate = 0.5 * (rep.right_limit + rep.left_limit);
    return rep;
}

// ---------------------------------------------------------------------------
// Hoelder exponent
// ---------------------------------------------------------------------------

struct HolderReport {
    SeriesSpec spec;
    double point = 0;
    double estimated_exponent = 0;
    double regression_residual = 0;
    double h_min = 0;
    double h_max = 0;
    bool inconclusive = false;
    std::vector<double> h_grid;
    std::vector<double> increments;  // max(|g(x+h)-g(x)|, |g(x-h)-g(x)|)
    double increment_error_bound = 0;
};

struct HolderFit {
    double exponent = 0;
    double residual = 0;
    bool inconclusive = false;
};

/// Least-squares slope of log(increment) against log(h), endpoints dropped.
/// Increments at or below `noise` are excluded.
inline HolderFit holder_from_increments(std::span<const double> h, std::span<const double> inc, double noise = 0.0) {
    if (h.size() != inc.size() || h.size() < 4) throw precondition_error("holder fit needs at least 4 paired samples");
    std::vector<double> lx, ly;
    for (std::size_t i = 1; i + 1 < h.size(); ++i) {
        if (!(inc[i] > noise) || !(h[i] > 0.0)) continue;
        lx.push_back(std::log(h[i]));
        ly.push_back(std::log(inc[i]));
    }
    HolderFit f;
    if (lx.size() < 2) {
        f.inconclusive = true;
        return f;
    }
    const auto line = detail::fit_line(lx, ly);
    f.exponent = line.slope;
    f.residual = line.rms;
    return f;
}

inline HolderReport holder_exponent(const SeriesSpec& spec, const BigFloat& x, double h_min, double h_max, int steps,
                                    long prec = kDefaultPrecision, std::uint64_t max_terms = 1u << 16) {
    require_precision(prec);
    spec.validate();
    detail::check_grid(h_min, h_max, steps);
    HolderReport rep;
    rep.spec = spec;
    rep.point = x.to_double();
    rep.h_min = h_min;
    rep.h_max = h_max;
    rep.h_grid = geometric_grid(h_min, h_max, steps);

    const long wp = prec + kGuardBits;
    const BigFloat xw = x.with_precision(wp);
    const auto g0 = series_eval(spec, xw, prec, max_terms);
    auto parts = chunked_map(0, rep.h_grid.size(), 1, [&](std::uint64_t lo, std::uint64_t) {
        const BigFloat h(rep.h_grid[lo], wp);
        const auto up = series_eval(spec, xw + h, prec, max_terms);
        const auto down = series_eval(spec, xw - h, prec, max_terms);
        const double inc = std::max(abs(up.value - g0.value).to_double(), abs(down.value - g0.value).to_double());
        return std::pair{inc, std::max(up.error_bound, down.error_bound) + g0.error_bound};
    });
    for (const auto& [inc, err] : parts) {
        rep.increments.push_back(inc);
        rep.increment_error_bound = std::max(rep.increment_error_bound, err);
    }
    const auto fit = holder_from_increments(rep.h_grid, rep.increments, 2.0 * rep.increment_error_bound);
    rep.estimated_exponent = fit.exponent;
    rep.regression_residual = fit.residual;
    rep.inconclusive = fit.inconclusive;
    return rep;
}

// ---------------------------------------------------------------------------
// Infinite-derivative probe
// ---------------------------------------------------------------------------

enum class ProbeKind { sine, cosine_shifted };

inline std::string to_string(ProbeKind k) { return k == ProbeKind::sine ? "sine" : "cosine_shifted"; }
inline ProbeKind probe_kind_from_string(const std::string& s) {
    if (s == "sine") return ProbeKind::sine;
    if (s == "cosine_shifted") return ProbeKind::cosine_shifted;
    throw precondition_error("unknown probe kind '" + s + "'");
}

struct ProbeRow {
    int k = 0;
    double h = 0;         // b^{-k}
    double quotient = 0;  // (S(x0 + h) - S(x0)) / h
    double error_bound = 0;
};

struct ProbeReport {
    double a = 0;
    double b = 0;
    ProbeKind kind = ProbeKind::sine;
    bool hypothesis = false;            // ab >= 1 and a(b+1) < 2
    std::vector<ProbeRow> rows;
    bool strictly_increasing = false;   // |quotient| strictly increasing for k = 5..k_max
    bool exceeds_1e3 = false;           // |quotient| > 1e3 at k_max
};

/// Difference quotients of sum a^n sin(b^n pi x) at x0 = 0 (sine), or of
/// sum a^n cos(b^n pi x) at x0 = 1/2 (cosine_shifted), at h = b^{-k}.
inline ProbeReport infinite_derivative_probe(double a, double b, ProbeKind kind, int k_max, long prec = kDefaultPrecision) {
    require_precision(prec);
    const SeriesSpec spec = SeriesSpec::weierstrass(kind == ProbeKind::cosine_shifted, a, b);
    spec.validate();
    if (k_max < 1 || k_max > 200) throw precondition_error("infinite_derivative_probe needs 1 <= k_max <= 200");
    ProbeReport rep;
    rep.a = a;
    rep.b = b;
    rep.kind = kind;
    rep.hypothesis = a * b >= 1.0 && a * (b + 1.0) < 2.0;

    // x0 + b^{-k} must be represented exactly enough that b^n (x0 + h) stays
    // accurate for every summed n.
    const long xp = prec + kGuardBits + static_cast<long>(std::ceil(k_max * std::log2(b))) + 64;
    const BigFloat x0 = kind == ProbeKind::sine ? BigFloat(0L, xp) : BigFloat(0.5, xp);
    const auto s0 = weierstrass_eval(spec, x0, prec);
    const BigFloat bw(b, xp);
    for (int k = 1; k <= k_max; ++k) {
        const BigFloat h = BigFloat(1L, xp) / pow(bw, BigFloat(static_cast<long>(k), xp));
        const auto s = weierstrass_eval(spec, x0 + h, prec);
        const BigFloat q = (s.value - s0.value) / h;
        rep.rows.push_back({k, h.to_double(), q.to_double(), (s.error_bound + s0.error_bound) / h.to_double()});
    }
    rep.strictly_increasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        if (rep.rows[i].k <= 5) continue;
        if (!(std::abs(rep.rows[i].quotient) > std::abs(rep.rows[i - 1].quotient))) rep.strictly_increasing = false;
    }
    rep.exceeds_1e3 = std::abs(rep.rows.back().quotient) > 1e3;
    return rep;
}

}  // namespace thetalab
