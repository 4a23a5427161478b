#pragma once

// Both sides of the Davenport-Chowla identity
//     sum_{n>=1} lambda(n) psi(n x) / n  =  -(1/pi) sum_{n>=1} sin(2 pi n^2 x) / n^2,
// psi the centered sawtooth. The right side converges absolutely; the left
// side converges as slowly as the prime number theorem allows, so only
// diagnostics are reported for it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "thetalab/bigfloat.hpp"
#include "thetalab/errors.hpp"
#include "thetalab/exact_arith.hpp"
#include "thetalab/parallel.hpp"

namespace thetalab {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    DoubleDouble() = default;
    DoubleDouble(double x) : hi(x) {}  // NOLINT: implicit widening is exact
    DoubleDouble(double h, double l) : hi(h + l), lo(l - ((h + l) - h)) {}

    static DoubleDouble from(const BigFloat& x) {
        const double h = x.to_double();
        const double l = (x - BigFloat(h, x.precision())).to_double();
        return {h, l};
    }
    double to_double() const { return hi + lo; }
};

/// Fractional part of k * x in [0, 1) for an integer-valued k < 2^53, computed
/// with an exact product of the high word.
inline double frac_mul(double k, const DoubleDouble& x) {
    const double p = k * x.hi;
    const double e = std::fma(k, x.hi, -p);
    const double fl = std::floor(p);
    double f = (p - fl) + (e + k * x.lo);
    f -= std::floor(f);
    return f;
}

/// sin(2 pi f) for f in [0, 1), exact at multiples of 1/4.
inline double sin_two_pi(double f) {
    double t = 2.0 * f;  // [0, 2)
    if (t > 1.0) t -= 2.0;
    if (t > 0.5) t = 1.0 - t;
    if (t < -0.5) t = -1.0 - t;
    return std::sin(std::numbers::pi * t);
}

/// psi of the fractional part f in [0, 1): 0 at f = 0, else f - 1/2.
inline double psi_of_frac(double f) { return f == 0.0 ? 0.0 : f - 0.5; }

namespace detail {

/// Adds sum_{lo <= n < hi} lambda(n) psi(n x)/n to acc in fixed chunk order.
inline void add_lhs_range(CompensatedSum<double>& acc, const DoubleDouble& x, std::uint64_t lo, std::uint64_t hi,
                          const LiouvilleTable& table) {
    const auto parts = chunked_map(lo, hi, 1u << 16, [&](std::uint64_t a, std::uint64_t b) {
        CompensatedSum<double> part;
        for (std::uint64_t k = a; k < b; ++k) {
            const double v = psi_of_frac(frac_mul(double(k), x));
            if (v != 0.0) part.add(table[k] * v / double(k));
        }
        return part;
    });
    for (const auto& p : parts) acc.add(p);
}

}  // namespace detail

/// sum_{n <= N} lambda(n) psi(n x) / n.
inline double dc_lhs(const DoubleDouble& x, std::uint64_t n, const LiouvilleTable& table) {
    if (n > table.limit()) throw precondition_error("dc_lhs: Liouville table is smaller than N");
    CompensatedSum<double> total;
    detail::add_lhs_range(total, x, 1, n + 1, table);
    return total.value();
}

/// RHS target accuracy; the truncation point is N = ceil(1/(pi * target)).
inline constexpr double kDcRhsTarget = 5e-9;

/// -(1/pi) sum sin(2 pi n^2 x)/n^2 with tail bound 1/(pi N).
inline Certified<double> dc_rhs(const DoubleDouble& x, double target = kDcRhsTarget) {
    if (!(target > 0.0)) throw precondition_error("dc_rhs: target must be positive");
    const double nd = std::ceil(1.0 / (std::numbers::pi * target));
    if (nd > 9.0e7) throw precondition_error("dc_rhs: target too small for exact n^2");
    const auto n = static_cast<std::uint64_t>(nd);
    const auto parts = chunked_map(1, n + 1, 1u << 16, [&](std::uint64_t lo, std::uint64_t hi) {
        CompensatedSum<double> acc;
        for (std::uint64_t k = lo; k < hi; ++k) {
            const double k2 = double(k) * double(k);
            const double f = frac_mul(k2, x);
            acc.add(sin_two_pi(f) / k2);
        }
        return acc;
    });
    CompensatedSum<double> total;
    for (const auto& p : parts) total.add(p);
    const double value = -total.value() / std::numbers::pi + 0.0;  // no negative zero
    return {value, 1.0 / (std::numbers::pi * nd) + 0x1p-46};
}

struct DcReport {
    double x = 0;
    std::vector<std::uint64_t> schedule;
    std::vector<double> lhs_partials;
    double rhs_value = 0;
    double rhs_error_bound = 0;
    std::vector<double> residuals;  // lhs_partial - rhs_value
    double loose_bound = 0.1;
    bool final_within_bound = false;
    bool running_max_nonincreasing = true;  // no checkpoint beyond 1e4 sets a new record |residual|
};

/// Checkpoint from which the residual record is tracked.
inline constexpr std::uint64_t kDcTrendStart = 10'000;

/// LHS partial sums at every N of the (ascending) schedule, from one pass.
inline DcReport dc_report(const DoubleDouble& x, std::vector<std::uint64_t> schedule, const LiouvilleTable& table,
                          double loose_bound = 0.1) {
    if (schedule.empty()) throw precondition_error("dc_report: empty schedule");
    std::sort(schedule.begin(), schedule.end());
    schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());
    if (schedule.front() < 1) throw precondition_error("dc_report: schedule entries must be positive");
    if (schedule.back() > table.limit()) throw precondition_error("dc_report: Liouville table is smaller than max schedule");

    DcReport rep;
    rep.x = x.to_double();
    rep.schedule = schedule;
    rep.loose_bound = loose_bound;
    const auto rhs = dc_rhs(x);
    rep.rhs_value = rhs.value;
    rep.rhs_error_bound = rhs.error_bound;

    CompensatedSum<double> running;
    std::uint64_t done = 0;
    for (std::uint64_t target : schedule) {
        detail::add_lhs_range(running, x, done + 1, target + 1, table);
        done = target;
        rep.lhs_partials.push_back(running.value());
        rep.residuals.push_back(running.value() - rep.rhs_value);
    }

    rep.final_within_bound = std::abs(rep.residuals.back()) < loose_bound;
    double record = -1.0;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < kDcTrendStart) continue;
        const double r = std::abs(rep.residuals[i]);
        if (record >= 0.0 && r > record) rep.running_max_nonincreasing = false;
        record = std::max(record, r);
    }
    return rep;
}

}  // namespace thetalab
