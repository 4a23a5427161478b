// Acceptance run: one PASS/FAIL line per criterion. Every criterion is
// evaluated at 1 and at 8 worker threads; the last criterion compares the
// JSON payloads of the two passes byte for byte.
//
// usage: acceptance [results.json]

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "thetalab/json_io.hpp"
#include "thetalab/thetalab.hpp"

using namespace thetalab;

namespace {

constexpr long kPrec = 192;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = false;
    std::string detail;
    Json json;
    double seconds = 0;
};

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome gauss_closed_vs_brute() {
    const double tol = std::ldexp(1.0, -48);
    // One chunk per modulus; each returns {max difference, pairs checked}.
    const auto parts = chunked_map(1, 1000, 1, [](std::uint64_t lo, std::uint64_t) {
        const auto p = static_cast<long>(lo);
        const UnitRoots roots(p, gauss_table_precision(kPrec, p));
        double worst = 0;
        long count = 0;
        for (long q = -99; q <= 99; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const BigComplex closed = gauss_sum_closed(p, q).to_complex(kPrec);
            worst = std::max(worst, abs(closed - gauss_sum_bruteforce(roots, q, kPrec)).to_double());
            ++count;
        }
        return std::pair{worst, count};
    });
    double worst = 0;
    long count = 0;
    for (const auto& [w, c] : parts) {
        worst = std::max(worst, w);
        count += c;
    }
    return {worst <= tol, fmt("%.0f reduced pairs, max |closed - brute| = %.3g (tol %.3g)", double(count), worst, tol),
            Json{{"pairs", count}, {"max_difference", worst}, {"tolerance", tol}}};
}

Outcome reciprocity_constant() {
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<long> pd(1, 500), qd(-500, 500);
    std::vector<BigComplex> ratios;
    Json pairs = Json::array();
    long degenerate = 0;
    while (ratios.size() < 500) {
        const long p = pd(rng), q = qd(rng);
        if (q == 0 || std::gcd(p, q) != 1) continue;
        const auto r = reciprocity_ratio(p, q, kPrec);
        if (!r) {
            ++degenerate;
            continue;
        }
        ratios.push_back(*r);
        pairs.push_back(Json::array({p, q}));
    }
    double spread = 0;
    for (std::size_t i = 0; i < ratios.size(); ++i)
        for (std::size_t j = i + 1; j < ratios.size(); ++j) spread = std::max(spread, abs(ratios[i] - ratios[j]).to_double());
    const BigComplex half(0.5, 0.0, kPrec);
    const double from_half = abs(ratios.front() - half).to_double();
    return {spread <= 1e-12 && from_half <= 1e-12,
            fmt("500 pairs, constant = %.15g%+.3gi, max pairwise deviation %.3g", ratios.front().re.to_double(),
                ratios.front().im.to_double(), spread),
            Json{{"constant", complex_to_json(ratios.front())},
                 {"max_pairwise_deviation", spread},
                 {"skipped_degenerate", degenerate},
                 {"pairs", pairs}}};
}

Outcome landsberg_schaar() {
    const auto parts = chunked_map(1, 51, 1, [](std::uint64_t lo, std::uint64_t) {
        double worst = 0;
        for (long q = 1; q <= 50; ++q) worst = std::max(worst, landsberg_schaar_residual(long(lo), q, kPrec));
        return worst;
    });
    const double worst = *std::max_element(parts.begin(), parts.end());
    return {worst <= 1e-12, fmt("1 <= p,q <= 50, max residual %.3g", worst), Json{{"max_residual", worst}}};
}

Outcome theta_transformation() {
    std::mt19937_64 rng(kSeed + 4);
    std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.05, 10.0);
    std::vector<std::pair<double, double>> zs;
    for (int i = 0; i < 100; ++i) {
        const double x = re(rng);
        zs.emplace_back(x, im(rng));
    }
    const auto res = chunked_map(0, zs.size(), 1, [&](std::uint64_t lo, std::uint64_t) {
        return theta_transform_residual(BigComplex(zs[lo].first, zs[lo].second, kPrec), kPrec);
    });
    const double worst = *std::max_element(res.begin(), res.end());
    const double tol = std::ldexp(1.0, -90);
    return {worst <= tol, fmt("100 random z, max residual %.3g (tol %.3g)", worst, tol),
            Json{{"max_residual", worst}, {"residuals", res}}};
}

Outcome odd_odd_derivative() {
    bool ok = true;
    Json points = Json::object();
    std::string detail;
    double slowest = 0;
    for (const char* s : {"1/1", "1/3", "3/5", "5/7"}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto rep = derivative_estimate(parse_rational(s), kPrec);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        slowest = std::max(slowest, secs);
        const bool good = rep.estimate && std::abs(*rep.estimate + 0.5) <= 5e-3;
        ok = ok && good;
        points[s] = to_json(rep);
        detail += std::string(s) + (rep.estimate ? fmt(" %.6f", *rep.estimate) : " none") + "; ";
    }
    ok = ok && slowest < 30.0;
    return {ok, detail + fmt("slowest point %.1f s", slowest), points};
}

Outcome local_coefficient() {
    Json points = Json::object();
    double worst_err = 0, worst_zero = 0;
    const double hmin = 1e-5, hmax = 1e-2;
    for (const char* s : {"0/1", "1/2", "1/4", "2/3", "1/6", "1/1", "1/3", "3/5"}) {
        const auto xi = parse_rational(s);
        const auto rep = expansion_check(xi, hmin, hmax, dyadic_steps(hmin, hmax), kPrec);
        if (predicted_kappa_exact(xi).is_zero) {
            worst_zero = std::max(worst_zero, std::abs(rep.kappa_fitted));
        } else {
            worst_err = std::max(worst_err, rep.kappa_error);
        }
        points[s] = to_json(rep);
    }
    return {worst_err <= 1e-3 && worst_zero <= 1e-4,
            fmt("max |kappa_fit - kappa_pred| = %.3g at nonzero points, max |kappa_fit| = %.3g at odd/odd points", worst_err,
                worst_zero),
            points};
}

/// The parity table, stated independently of classify_rational.
Json expected_verdict(long r, long s) {
    const bool odd_odd = r % 2 != 0 && s % 2 != 0;
    const long r4 = ((r % 4) + 4) % 4;
    auto status = [&](bool zero) { return odd_odd || zero ? "zero" : "infinite"; };
    return Json{{"two_sided", odd_odd ? "derivative_zero_for_g" : "none"},
                {"right", status(r4 == 1)},
                {"left", status(r4 == 3)},
                {"symmetric", status(s % 4 == 3 && r % 2 == 0)}};
}

Outcome classification_table() {
    long checked = 0, mismatches = 0;
    Json first_mismatch = nullptr;
    for (long s = 1; s <= 100; ++s) {
        for (long r = 0; r <= 100; ++r) {
            if (std::gcd(r, s) != 1) continue;
            const Json got = to_json(classify_rational(reduce(r, s)));
            const Json want = expected_verdict(r, s);
            ++checked;
            for (const char* key : {"two_sided", "right", "left", "symmetric"}) {
                if (got.at(key) != want.at(key)) {
                    if (first_mismatch.is_null()) first_mismatch = Json{{"r", r}, {"s", s}, {"got", got}, {"want", want}};
                    ++mismatches;
                    break;
                }
            }
        }
    }
    return {mismatches == 0, fmt("%.0f reduced r/s checked, %.0f mismatches", double(checked), double(mismatches)),
            Json{{"checked", checked}, {"mismatches", mismatches}, {"first_mismatch", first_mismatch}}};
}

Outcome holder_exponents() {
    Json out = Json::object();
    bool ok = true;
    std::string detail;
    for (auto [a, b] : {std::pair{0.6, 3.0}, std::pair{0.5, 4.0}}) {
        const auto spec = SeriesSpec::weierstrass(true, a, b);
        const auto rep = holder_exponent(spec, BigFloat(0L, kPrec), 1e-8, 1e-1, 57, kPrec);
        const bool good = !rep.inconclusive && std::abs(rep.estimated_exponent - spec.xi()) <= 0.05;
        ok = ok && good;
        detail += fmt("W(%.1f,%.0f) %.4f", a, b, rep.estimated_exponent) + fmt(" vs %.4f; ", spec.xi());
        out[fmt("weierstrass_%.1f_%.0f", a, b)] = to_json(rep);
    }
    // Riemann's function at pi/2.
    const BigFloat x = BigFloat::pi(kPrec + kGuardBits) / 2L;
    const auto rr = holder_exponent(SeriesSpec::riemann(true, 2.0), x, 1e-4, 1e-2, 16, kPrec);
    const bool rgood = !rr.inconclusive && std::abs(rr.estimated_exponent - 0.5) <= 0.03;
    ok = ok && rgood;
    detail += fmt("riemann at pi/2 %.4f; ", rr.estimated_exponent);
    out["riemann_pi_over_2"] = to_json(rr);
    double synth_worst = 0;
    for (double c : {0.25, 0.5, 0.75}) {
        const auto hs = geometric_grid(1e-8, 1e-1, 57);
        std::vector<double> inc;
        for (double h : hs) inc.push_back(std::pow(h, c));
        synth_worst = std::max(synth_worst, std::abs(holder_from_increments(hs, inc).exponent - c));
    }
    ok = ok && synth_worst <= 1e-6;
    detail += fmt("synthetic max error %.2g", synth_worst);
    out["synthetic_max_error"] = synth_worst;
    return {ok, detail, out};
}

Outcome lacunary_probe() {
    const auto rep = infinite_derivative_probe(0.4, 3.0, ProbeKind::sine, 20, kPrec);
    const double last = rep.rows.back().quotient;
    return {rep.strictly_increasing && rep.exceeds_1e3,
            fmt("|quotient| at k=20 is %.4g (needs > 1e3); strictly increasing for k>=5: ", std::abs(last)) +
                (rep.strictly_increasing ? "yes" : "no"),
            to_json(rep)};
}

Outcome davenport_chowla() {
    const DoubleDouble x = DoubleDouble::from(sqrt(BigFloat(2L, 256)) / BigFloat(2L, 256));
    const std::vector<std::uint64_t> schedule{1'000, 10'000, 100'000, 1'000'000, 10'000'000};
    const auto table = liouville_sieve(schedule.back());
    const auto rep = dc_report(x, schedule, table);
    const double r4 = std::abs(rep.residuals[1]);
    const double r7 = std::abs(rep.residuals.back());
    const bool ok = r7 < 0.1 && r7 < r4 && rep.rhs_error_bound <= 1e-8;
    return {ok, fmt("rhs = %.10f (+/- %.1g), |residual| at 1e4 = %.3g", rep.rhs_value, rep.rhs_error_bound, r4) +
                    fmt(", at 1e7 = %.3g", r7),
            to_json(rep)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "closed-form Gauss sums match brute force", gauss_closed_vs_brute},
        {2, "reciprocity ratio is constant", reciprocity_constant},
        {3, "Landsberg-Schaar residual", landsberg_schaar},
        {4, "theta transformation residual", theta_transformation},
        {5, "derivative -1/2 at odd/odd points", odd_odd_derivative},
        {6, "local coefficient kappa", local_coefficient},
        {7, "rational classification table", classification_table},
        {8, "Hoelder exponents", holder_exponents},
        {9, "infinite-derivative probe at (0.4, 3)", lacunary_probe},
        {10, "Davenport-Chowla diagnostic at 1/sqrt(2)", davenport_chowla},
    };
    const double runtime_limit[] = {60, 0, 10, 0, 0, 0, 0, 0, 0, 60};

    std::vector<Outcome> first, second;
    for (unsigned threads : {1u, 8u}) {
        set_thread_count(threads);
        auto& into = threads == 1 ? first : second;
        for (const auto& c : criteria) {
            const auto t0 = std::chrono::steady_clock::now();
            Outcome o;
            try {
                o = c.run();
            } catch (const std::exception& e) {
                o = {false, std::string("exception: ") + e.what(), Json{{"exception", e.what()}}};
            }
            o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            into.push_back(std::move(o));
        }
    }

    bool all = true;
    Json results = Json::object();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto& o = first[i];
        const double limit = runtime_limit[i];
        if (limit > 0 && o.seconds >= limit) {
            o.pass = false;
            o.detail += fmt(" [runtime %.1f s exceeds %.0f s]", o.seconds, limit);
        }
        all = all && o.pass;
        std::printf("criterion %2d: %s  %s: %s (%.1f s)\n", criteria[i].id, o.pass ? "PASS" : "FAIL", criteria[i].title,
                    o.detail.c_str(), o.seconds);
        results[std::to_string(criteria[i].id)] = Json{{"pass", o.pass}, {"detail", o.detail}, {"data", o.json}};
    }

    std::string differing;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (first[i].json.dump() != second[i].json.dump()) differing += " " + std::to_string(criteria[i].id);
    }
    const bool same = differing.empty();
    all = all && same;
    std::printf("criterion 11: %s  determinism: JSON of criteria 1-10 at 1 and 8 threads %s\n", same ? "PASS" : "FAIL",
                same ? "byte-identical" : ("differs for" + differing).c_str());
    results["11"] = Json{{"pass", same}, {"differing", differing}};

    if (argc > 1) std::ofstream(argv[1]) << results.dump(2) << "\n";
    return all ? 0 : 1;
}
