// thetalab command-line front end.
//
// Exit codes: 0 success, 1 selftest failure or internal error,
// 2 precondition violation or bad usage, 3 resource error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetalab/json_io.hpp"
#include "thetalab/thetalab.hpp"

using namespace thetalab;

namespace {

/// One subcommand's output: echoed inputs, the result object, and optional
/// grid rows for CSV.
struct Output {
    Json input = Json::object();
    Json result = Json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
    bool ok = true;
};

std::string csv_cell(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return v.dump();
    if (v.is_number()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17e", v.get<double>());
        return buf;
    }
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

/// Leaves of a JSON tree as dotted paths, arrays indexed.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, j);
    }
}

void emit(const std::string& format, const std::string& command, long prec, const Output& out) {
    if (format == "json") {
        Json doc{{"schema", kSchema}, {"command", command}, {"precision", prec}, {"input", out.input}, {"result", out.result}};
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, Json>> flat;
    if (format == "csv") {
        if (!out.columns.empty()) {
            for (std::size_t i = 0; i < out.columns.size(); ++i) std::cout << (i ? "," : "") << out.columns[i];
            std::cout << "\n";
            for (const auto& row : out.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << csv_cell(row[i]);
                std::cout << "\n";
            }
            return;
        }
        flatten(out.result, "", flat);
        for (std::size_t i = 0; i < flat.size(); ++i) std::cout << (i ? "," : "") << csv_cell(flat[i].first);
        std::cout << "\n";
        for (std::size_t i = 0; i < flat.size(); ++i) std::cout << (i ? "," : "") << csv_cell(flat[i].second);
        std::cout << "\n";
        return;
    }
    flatten(out.input, "input", flat);
    flatten(out.result, "", flat);
    for (const auto& [k, v] : flat) {
        std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

Integer parse_integer(const std::string& s) {
    const auto r = parse_rational(s);
    if (r.den() != 1) throw precondition_error("expected an integer, got '" + s + "'");
    return r.num();
}

std::int64_t small_int(const Integer& v, const char* what) {
    if (!v.fits_slong_p()) throw precondition_error(std::string(what) + " is out of range");
    return v.get_si();
}

double error_of_sum(std::int64_t terms, long prec) {
    return (std::sqrt(2.0 * double(terms)) + 1.0) * pow2_bound(prec);
}

long default_precision() {
    if (const char* env = std::getenv("THETALAB_PRECISION")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0') throw precondition_error("THETALAB_PRECISION is not an integer");
        return v;
    }
    return kDefaultPrecision;
}

std::vector<std::uint64_t> parse_schedule(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const double v = parse_real(item, 128).to_double();
        if (!(v >= 1.0 && v <= 1.0e12) || v != std::floor(v)) throw precondition_error("bad schedule entry '" + item + "'");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    if (out.empty()) throw precondition_error("empty schedule");
    return out;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

Output run_selftest(long prec, std::uint64_t seed) {
    Output out;
    out.input["seed"] = seed;
    std::mt19937_64 rng(seed);
    Json checks = Json::array();
    auto check = [&](const std::string& name, bool pass) {
        checks.push_back(Json{{"name", name}, {"passed", pass}});
        if (!pass) out.ok = false;
    };

    {
        bool ok = true;
        for (long a = -60; a <= 60; ++a) {
            for (long n = -60; n <= 60; ++n) {
                const Integer A(a), N(n);
                if (kronecker(a, n) != mpz_kronecker(A.get_mpz_t(), N.get_mpz_t())) ok = false;
            }
        }
        check("kronecker_matches_reference", ok);
    }
    {
        const auto tab = liouville_sieve(10'000);
        bool ok = true;
        for (std::uint64_t n = 1; n <= 10'000; ++n) {
            int omega = 0;
            std::uint64_t m = n;
            for (std::uint64_t p = 2; p * p <= m; ++p) {
                while (m % p == 0) {
                    m /= p;
                    ++omega;
                }
            }
            if (m > 1) ++omega;
            if (tab[n] != (omega % 2 ? -1 : 1)) ok = false;
        }
        check("liouville_matches_trial_division", ok);
    }
    {
        bool ok = true;
        for (long p = 1; p <= 60; ++p) {
            for (long q = -20; q <= 20; ++q) {
                if (std::gcd(p, q) != 1) continue;
                const auto brute = gauss_sum_bruteforce(p, Integer(q), prec);
                const auto closed = gauss_sum_closed(Integer(p), Integer(q)).to_complex(prec);
                if (!(abs(brute - closed).to_double() <= pow2_bound(prec / 2))) ok = false;
            }
        }
        check("gauss_closed_matches_bruteforce", ok);
    }
    {
        std::uniform_int_distribution<long> pd(1, 40), qd(-40, 40);
        bool ok = true;
        int tested = 0;
        while (tested < 20) {
            const long p = pd(rng), q = qd(rng);
            if (q == 0 || std::gcd(p, q) != 1) continue;
            const auto r = reciprocity_ratio(p, q, prec);
            if (!r) continue;
            ++tested;
            if (!(abs(*r - BigComplex(0.5, 0.0, prec)).to_double() <= 1e-12)) ok = false;
        }
        check("reciprocity_constant_one_half", ok);
    }
    {
        bool ok = true;
        for (long p = 1; p <= 10; ++p)
            for (long q = 1; q <= 10; ++q) ok = ok && landsberg_schaar_residual(p, q, prec) <= 1e-12;
        check("landsberg_schaar", ok);
    }
    {
        std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.05, 10.0);
        bool ok = true;
        for (int i = 0; i < 10; ++i) {
            const BigComplex z(re(rng), im(rng), prec);
            ok = ok && theta_transform_residual(z, prec) <= pow2_bound(prec / 2);
        }
        check("theta_transformation", ok);
    }
    {
        bool ok = true;
        for (long s = 1; s <= 50; ++s) {
            for (long r = 0; r <= 50; ++r) {
                if (std::gcd(r, s) != 1) continue;
                const auto v = classify_rational(reduce(r, s));
                const bool odd = (r % 2) && (s % 2);
                ok = ok && (v.kappa.is_zero == odd) && ((v.two_sided == TwoSided::derivative_zero_for_g) == odd);
            }
        }
        check("classification_kappa_consistency", ok);
    }
    {
        bool ok = true;
        for (double c : {0.25, 0.5, 0.75, 1.0}) {
            const auto hs = geometric_grid(1e-5, 1e-2, 11);
            std::vector<double> inc;
            for (double h : hs) inc.push_back(std::pow(h, c));
            ok = ok && std::abs(holder_from_increments(hs, inc).exponent - c) <= 1e-6;
        }
        check("holder_synthetic_power_law", ok);
    }
    {
        const auto tab = liouville_sieve(4);
        check("davenport_chowla_hand_value", std::abs(dc_lhs(0.25, 4, tab) + 1.0 / 3.0) <= 1e-15);
    }
    {
        const auto c = weierstrass_eval(SeriesSpec::weierstrass(true, 0.5, 3.0), BigFloat(0L, prec), prec);
        check("weierstrass_geometric_value", abs(c.value - BigFloat(2L, prec)).to_double() <= c.error_bound);
    }
    out.result["checks"] = checks;
    out.result["all_passed"] = out.ok;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thetalab: Gauss sums, theta functions and Riemann's function at rational points"};
    app.failure_message(CLI::FailureMessage::help);
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string format = "json";
    long precision = 0;
    unsigned threads = 1;
    std::uint64_t seed = 20240601;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
    app.add_option("--precision", precision, "Working precision in bits (>= 64; default 192 or $THETALAB_PRECISION)");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    app.add_option("--seed", seed, "Seed for randomized sweeps");

    std::function<Output(long)> action;
    auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

    // gauss-sum
    std::string g_b, g_a = "1", g_mode = "both";
    auto* gs = sub("gauss-sum", "Quadratic Gauss sum S(b, a)");
    gs->add_option("--b", g_b, "Modulus (nonzero, |b| <= 1e6)")->required();
    gs->add_option("--a", g_a, "Numerator");
    gs->add_option("--mode", g_mode, "brute, closed or both")->check(CLI::IsMember({"brute", "closed", "both"}));
    gs->callback([&] {
        action = [&](long prec) {
            Output out;
            const Integer b = parse_integer(g_b), a = parse_integer(g_a);
            out.input = Json{{"b", b.get_str()}, {"a", a.get_str()}, {"mode", g_mode}};
            const std::int64_t bb = small_int(b, "b");
            if (bb == 0) throw precondition_error("b must be nonzero");
            std::optional<BigComplex> brute;
            if (g_mode != "closed") {
                brute = gauss_sum_bruteforce(bb, a, prec);
                out.result["brute"] = certified_to_json(Certified<BigComplex>{*brute, error_of_sum(bb < 0 ? -bb : bb, prec)});
            }
            if (g_mode != "brute") {
                const Integer p = bb < 0 ? Integer(-b) : b;
                const Integer q = bb < 0 ? Integer(-a) : a;
                if (g_mode == "both" && thetalab::gcd(p, q) != 1) {
                    out.result["closed"] = nullptr;
                    out.result["agreement"] = nullptr;
                } else {
                    const auto closed = gauss_sum_closed(p, q);
                    out.result["closed"] = to_json(closed);
                    if (brute) {
                        const double diff = abs(*brute - closed.to_complex(prec)).to_double();
                        out.result["difference"] = diff;
                        out.result["agreement"] = diff <= pow2_bound(prec / 2);
                    }
                }
            }
            return out;
        };
    });

    // smith-g
    std::string sg_r, sg_s;
    auto* sgc = sub("smith-g", "Half-weight sum G(r/s) = sum_{t<s} e^{i pi t^2 r/s}");
    sgc->add_option("--r", sg_r)->required();
    sgc->add_option("--s", sg_s)->required();
    sgc->callback([&] {
        action = [&](long prec) {
            Output out;
            const Integer r = parse_integer(sg_r), s = parse_integer(sg_s);
            out.input = Json{{"r", r.get_str()}, {"s", s.get_str()}};
            const auto v = smith_G(r, s, prec);
            out.result["value"] = certified_to_json(Certified<BigComplex>{v, error_of_sum(small_int(s, "s"), prec)});
            return out;
        };
    });

    // reciprocity
    std::int64_t rc_p = 1, rc_q = 1;
    auto* rc = sub("reciprocity", "Measured ratio S(p,q) / [e^{i pi sgn(q)/4} sqrt(p/2|q|) S(4|q|, -sgn(q) p)]");
    rc->add_option("--p", rc_p)->required();
    rc->add_option("--q", rc_q)->required();
    rc->callback([&] {
        action = [&](long prec) {
            Output out;
            out.input = Json{{"p", rc_p}, {"q", rc_q}};
            const auto r = reciprocity_ratio(rc_p, rc_q, prec);
            out.result["degenerate"] = !r.has_value();
            out.result["ratio"] = r ? Json(certified_to_json(Certified<BigComplex>{*r, pow2_bound(prec / 2)})) : Json(nullptr);
            return out;
        };
    });

    // landsberg-schaar
    std::int64_t ls_p = 1, ls_q = 1;
    auto* ls = sub("landsberg-schaar", "Residual of the Landsberg-Schaar identity");
    ls->add_option("--p", ls_p)->required();
    ls->add_option("--q", ls_q)->required();
    ls->callback([&] {
        action = [&](long prec) {
            Output out;
            out.input = Json{{"p", ls_p}, {"q", ls_q}};
            const double r = landsberg_schaar_residual(ls_p, ls_q, prec);
            out.result["residual"] = r;
            out.result["tolerance"] = pow2_bound(prec / 2);
            out.result["within_tolerance"] = r <= pow2_bound(prec / 2);
            return out;
        };
    });

    // scaling
    std::int64_t sc_a = 1, sc_b = 1, sc_k = 1;
    auto* sc = sub("scaling", "Measured ratio S(ka, kb) / S(a, b)");
    sc->add_option("--a", sc_a)->required();
    sc->add_option("--b", sc_b)->required();
    sc->add_option("--k", sc_k)->required();
    sc->callback([&] {
        action = [&](long prec) {
            Output out;
            out.input = Json{{"a", sc_a}, {"b", sc_b}, {"k", sc_k}};
            const auto r = scaling_ratio(sc_a, sc_b, sc_k, prec);
            out.result["degenerate"] = !r.has_value();
            out.result["ratio"] = r ? Json(certified_to_json(Certified<BigComplex>{*r, pow2_bound(prec / 2)})) : Json(nullptr);
            return out;
        };
    });

    // theta
    std::string th_re = "0", th_im = "1";
    bool th_right = false;
    auto* th = sub("theta", "Theta(z) on the upper half-plane, or theta(s) = Theta(i s) with --right");
    th->add_option("--re", th_re, "Real part (expression)");
    th->add_option("--im", th_im, "Imaginary part (expression)");
    th->add_flag("--right", th_right, "Interpret the argument as s with Re s > 0");
    th->callback([&] {
        action = [&](long prec) {
            Output out;
            const BigComplex z(parse_real(th_re, prec), parse_real(th_im, prec));
            out.input = Json{{"re", th_re}, {"im", th_im}, {"right", th_right}};
            if (th_right) {
                out.result["value"] = certified_to_json(theta_right(z, prec));
            } else {
                out.result["value"] = certified_to_json(theta_upper(z, prec));
                out.result["transform_residual"] = theta_transform_residual(z, prec);
            }
            return out;
        };
    });

    // f-eval
    std::string fe_re = "0", fe_im = "1";
    std::uint64_t fe_terms = 1u << 20;
    auto* fe = sub("f-eval", "F(z) = sum e^{i pi n^2 z}/(i pi n^2), Im z >= 0");
    fe->add_option("--re", fe_re);
    fe->add_option("--im", fe_im);
    fe->add_option("--max-terms", fe_terms);
    fe->callback([&] {
        action = [&](long prec) {
            Output out;
            const BigComplex z(parse_real(fe_re, prec), parse_real(fe_im, prec));
            out.input = Json{{"re", fe_re}, {"im", fe_im}, {"max_terms", fe_terms}};
            out.result["value"] = certified_to_json(F_eval(z, prec, fe_terms));
            return out;
        };
    });

    // riemann
    std::string ri_x = "0", ri_kind = "sin";
    double ri_alpha = 2.0;
    std::uint64_t ri_terms = 1u << 16;
    auto* ri = sub("riemann", "sum sin(n^2 x)/n^alpha (or cos)");
    ri->add_option("--x", ri_x);
    ri->add_option("--alpha", ri_alpha);
    ri->add_option("--kind", ri_kind)->check(CLI::IsMember({"sin", "cos"}));
    ri->add_option("--max-terms", ri_terms);
    ri->callback([&] {
        action = [&](long prec) {
            Output out;
            const auto spec = SeriesSpec::riemann(ri_kind == "sin", ri_alpha);
            out.input = Json{{"x", ri_x}, {"spec", to_json(spec)}, {"max_terms", ri_terms}};
            out.result["value"] = certified_to_json(riemann_series(spec, parse_real(ri_x, prec), prec, ri_terms));
            return out;
        };
    });

    // weierstrass
    std::string we_x = "0", we_kind = "cos";
    double we_a = 0.5, we_b = 3.0;
    auto* we = sub("weierstrass", "sum a^n cos(b^n pi x) (or sin)");
    we->add_option("--x", we_x);
    we->add_option("--a", we_a);
    we->add_option("--b", we_b);
    we->add_option("--kind", we_kind)->check(CLI::IsMember({"cos", "sin"}));
    we->callback([&] {
        action = [&](long prec) {
            Output out;
            const auto spec = SeriesSpec::weierstrass(we_kind == "cos", we_a, we_b);
            out.input = Json{{"x", we_x}, {"spec", to_json(spec)}};
            out.result["value"] = certified_to_json(weierstrass_eval(spec, parse_real(we_x, prec), prec));
            return out;
        };
    });

    // criteria
    double cr_a = 0.5, cr_b = 13.0;
    auto* cr = sub("criteria", "Classical non-differentiability conditions for (a, b)");
    cr->add_option("--a", cr_a)->required();
    cr->add_option("--b", cr_b)->required();
    cr->callback([&] {
        action = [&](long) {
            Output out;
            out.input = Json{{"a", cr_a}, {"b", cr_b}};
            out.result = to_json(nondiff_criteria(cr_a, cr_b));
            return out;
        };
    });

    // classify
    std::string cl_xi;
    auto* cl = sub("classify", "Differentiability of Riemann's function at x = pi*xi");
    cl->add_option("--xi", cl_xi, "Rational q/p")->required();
    cl->callback([&] {
        action = [&](long) {
            Output out;
            const auto xi = parse_rational(cl_xi);
            out.input = Json{{"xi", cl_xi}, {"reduced", xi.to_string()}};
            out.result = to_json(classify_rational(xi));
            return out;
        };
    });

    // expansion
    std::string ex_xi;
    double ex_hmin = 1e-5, ex_hmax = 1e-2;
    int ex_steps = 0;
    auto* ex = sub("expansion", "Fit of the local coefficient kappa of F at a rational point");
    ex->add_option("--xi", ex_xi)->required();
    ex->add_option("--h-min", ex_hmin);
    ex->add_option("--h-max", ex_hmax);
    ex->add_option("--steps", ex_steps, "Grid points per sign (default: ratio-2 grid)");
    ex->callback([&] {
        action = [&](long prec) {
            Output out;
            const auto xi = parse_rational(ex_xi);
            const int steps = ex_steps > 0 ? ex_steps : dyadic_steps(ex_hmin, ex_hmax);
            out.input = Json{{"xi", ex_xi}, {"reduced", xi.to_string()}, {"h_min", ex_hmin}, {"h_max", ex_hmax}, {"steps", steps}};
            const auto rep = expansion_check(xi, ex_hmin, ex_hmax, steps, prec);
            out.result = to_json(rep);
            out.columns = {"h", "re_delta", "im_delta", "re_model", "im_model", "residual"};
            for (const auto& r : rep.rows) {
                out.rows.push_back({r.h, r.delta.real(), r.delta.imag(), r.model.real(), r.model.imag(), r.residual});
            }
            return out;
        };
    });

    // derivative
    std::string de_xi;
    auto* de = sub("derivative", "Derivative of Riemann's function at x = pi*xi");
    de->add_option("--xi", de_xi)->required();
    de->callback([&] {
        action = [&](long prec) {
            Output out;
            const auto xi = parse_rational(de_xi);
            out.input = Json{{"xi", de_xi}, {"reduced", xi.to_string()}};
            const auto rep = derivative_estimate(xi, prec);
            out.result = to_json(rep);
            out.columns = {"h", "right_quotient", "left_quotient"};
            for (const auto& r : rep.rows) out.rows.push_back({r.h, r.right, r.left});
            return out;
        };
    });

    // holder
    std::string ho_kind = "weierstrass_cos", ho_x = "0";
    double ho_alpha = 2.0, ho_a = 0.6, ho_b = 3.0, ho_hmin = 1e-8, ho_hmax = 1e-1;
    int ho_steps = 57;
    std::uint64_t ho_terms = 1u << 16;
    std::optional<double> ho_synth;
    auto* ho = sub("holder", "Hoelder exponent by log-log regression of increments");
    ho->add_option("--kind", ho_kind)
        ->check(CLI::IsMember({"riemann_sin", "riemann_cos", "weierstrass_cos", "weierstrass_sin"}));
    ho->add_option("--x", ho_x);
    ho->add_option("--alpha", ho_alpha);
    ho->add_option("--a", ho_a);
    ho->add_option("--b", ho_b);
    ho->add_option("--h-min", ho_hmin);
    ho->add_option("--h-max", ho_hmax);
    ho->add_option("--steps", ho_steps);
    ho->add_option("--max-terms", ho_terms);
    ho->add_option("--synthetic", ho_synth, "Fit exact |h|^c data instead of a series");
    ho->callback([&] {
        action = [&](long prec) {
            Output out;
            out.columns = {"h", "increment"};
            if (ho_synth) {
                out.input = Json{{"synthetic", *ho_synth}, {"h_min", ho_hmin}, {"h_max", ho_hmax}, {"steps", ho_steps}};
                const auto hs = geometric_grid(ho_hmin, ho_hmax, ho_steps);
                std::vector<double> inc;
                for (double h : hs) inc.push_back(std::pow(h, *ho_synth));
                const auto fit = holder_from_increments(hs, inc);
                out.result = Json{{"estimated_exponent", fit.exponent},
                                  {"regression_residual", fit.residual},
                                  {"h_range", Json::array({ho_hmin, ho_hmax})},
                                  {"inconclusive", fit.inconclusive}};
                for (std::size_t i = 0; i < hs.size(); ++i) out.rows.push_back({hs[i], inc[i]});
                return out;
            }
            SeriesSpec spec{series_kind_from_string(ho_kind), ho_alpha, ho_a, ho_b};
            out.input = Json{{"spec", to_json(spec)}, {"x", ho_x}, {"h_min", ho_hmin}, {"h_max", ho_hmax}, {"steps", ho_steps}};
            const auto rep = holder_exponent(spec, parse_real(ho_x, prec + kGuardBits), ho_hmin, ho_hmax, ho_steps, prec, ho_terms);
            out.result = to_json(rep);
            for (std::size_t i = 0; i < rep.h_grid.size(); ++i) out.rows.push_back({rep.h_grid[i], rep.increments[i]});
            return out;
        };
    });

    // ht3-probe
    double ht_a = 0.4, ht_b = 3.0;
    std::string ht_kind = "sine";
    int ht_kmax = 20;
    auto* ht = sub("ht3-probe", "Difference quotients at h = b^-k for the infinite-derivative claim");
    ht->add_option("--a", ht_a);
    ht->add_option("--b", ht_b);
    ht->add_option("--kind", ht_kind)->check(CLI::IsMember({"sine", "cosine_shifted"}));
    ht->add_option("--k-max", ht_kmax);
    ht->callback([&] {
        action = [&](long prec) {
            Output out;
            out.input = Json{{"a", ht_a}, {"b", ht_b}, {"kind", ht_kind}, {"k_max", ht_kmax}};
            const auto rep = infinite_derivative_probe(ht_a, ht_b, probe_kind_from_string(ht_kind), ht_kmax, prec);
            out.result = to_json(rep);
            out.columns = {"k", "h", "quotient", "error_bound"};
            for (const auto& r : rep.rows) out.rows.push_back({r.k, r.h, r.quotient, r.error_bound});
            return out;
        };
    });

    // dc
    std::string dc_x = "1/sqrt(2)", dc_sched = "1e3,1e4,1e5,1e6,1e7";
    double dc_bound = 0.1;
    auto* dc = sub("dc", "Davenport-Chowla identity: LHS partial sums against the RHS");
    dc->add_option("--x", dc_x);
    dc->add_option("--schedule", dc_sched, "Comma-separated checkpoints N");
    dc->add_option("--loose-bound", dc_bound);
    dc->callback([&] {
        action = [&](long prec) {
            Output out;
            const auto schedule = parse_schedule(dc_sched);
            out.input = Json{{"x", dc_x}, {"schedule", schedule}, {"loose_bound", dc_bound}};
            const auto x = DoubleDouble::from(parse_real(dc_x, std::max(prec, 128L)));
            const auto table = liouville_sieve(*std::max_element(schedule.begin(), schedule.end()));
            const auto rep = dc_report(x, schedule, table, dc_bound);
            out.result = to_json(rep);
            out.columns = {"N", "lhs_partial", "rhs_value", "residual"};
            for (std::size_t i = 0; i < rep.schedule.size(); ++i) {
                out.rows.push_back({rep.schedule[i], rep.lhs_partials[i], rep.rhs_value, rep.residuals[i]});
            }
            return out;
        };
    });

    // selftest
    auto* st = sub("selftest", "Run the built-in invariant checks");
    st->callback([&] {
        action = [&](long prec) { return run_selftest(prec, seed); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const long prec = precision > 0 ? precision : default_precision();
        require_precision(prec);
        set_thread_count(threads);
        const Output out = action(prec);
        emit(format, app.get_subcommands().front()->get_name(), prec, out);
        return out.ok ? 0 : 1;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
