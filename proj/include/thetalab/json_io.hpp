#pragma once

// JSON encoding of the report types (schema "thetalab/1").
//
// Arbitrary-precision reals are written as decimal strings with enough digits
// to parse back to the same binary value at the same precision. Binary64
// values are written as JSON numbers (shortest round-trip form). Keys keep
// insertion order, so output is byte-stable.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thetalab/bigfloat.hpp"
#include "thetalab/dav_chowla.hpp"
#include "thetalab/exact_arith.hpp"
#include "thetalab/gauss.hpp"
#include "thetalab/local_analysis.hpp"
#include "thetalab/series.hpp"

namespace thetalab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "thetalab/1";

/// Decimal digits after the point that round-trip a `prec`-bit value.
inline int roundtrip_digits(long prec) { return static_cast<int>(std::ceil(double(prec) * 0.30102999566398120)) + 1; }

inline Json big_to_json(const BigFloat& x) { return x.to_string(roundtrip_digits(x.precision())); }
inline BigFloat big_from_json(const Json& j, long prec) { return BigFloat::parse(j.get<std::string>(), prec); }

inline Json complex_to_json(const BigComplex& z) { return Json{{"re", big_to_json(z.re)}, {"im", big_to_json(z.im)}}; }
inline BigComplex complex_from_json(const Json& j, long prec) {
    return {big_from_json(j.at("re"), prec), big_from_json(j.at("im"), prec)};
}

inline Json complex_to_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }
inline std::complex<double> cdouble_from_json(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

/// null for absent values.
template <class T>
Json optional_to_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}
template <class T>
std::optional<T> optional_from_json(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

// ---------------------------------------------------------------------------

inline Json to_json(const ReducedRational& r) { return r.to_string(); }
inline ReducedRational rational_from_json(const Json& j) { return parse_rational(j.get<std::string>()); }

inline Json to_json(const ExactGaussSum& g) {
    if (g.is_zero) return Json{{"is_zero", true}, {"text", "0"}};
    return Json{{"is_zero", false}, {"phase_k", g.phase.k}, {"radicand", g.radicand.get_str()}, {"text", g.to_string()}};
}
inline ExactGaussSum exact_gauss_from_json(const Json& j) {
    if (j.at("is_zero").get<bool>()) return ExactGaussSum::zero();
    return ExactGaussSum::of(EighthRootPhase::of(j.at("phase_k").get<int>()), Integer(j.at("radicand").get<std::string>()));
}

inline Json to_json(const ExactKappa& k) {
    if (k.is_zero) return Json{{"is_zero", true}, {"text", "0"}};
    return Json{{"is_zero", false}, {"phase_k", k.phase.k}, {"inv_radicand", k.inv_radicand.get_str()}, {"text", k.to_string()}};
}
inline ExactKappa exact_kappa_from_json(const Json& j) {
    if (j.at("is_zero").get<bool>()) return {};
    return {false, EighthRootPhase::of(j.at("phase_k").get<int>()), Integer(j.at("inv_radicand").get<std::string>())};
}

/// A certified arbitrary-precision value.
template <class T>
Json certified_to_json(const Certified<T>& c) {
    Json j;
    if constexpr (std::is_same_v<T, BigComplex>) {
        j["value"] = complex_to_json(c.value);
    } else if constexpr (std::is_same_v<T, BigFloat>) {
        j["value"] = big_to_json(c.value);
    } else if constexpr (std::is_same_v<T, std::complex<double>>) {
        j["value"] = complex_to_json(c.value);
    } else {
        j["value"] = c.value;
    }
    j["error_bound"] = c.error_bound;
    return j;
}

inline Json to_json(const SeriesSpec& s) {
    Json j{{"kind", to_string(s.kind)}};
    if (s.is_riemann()) {
        j["alpha"] = s.alpha;
    } else {
        j["a"] = s.a;
        j["b"] = s.b;
        j["xi"] = s.xi();
    }
    return j;
}
inline SeriesSpec series_spec_from_json(const Json& j) {
    SeriesSpec s;
    s.kind = series_kind_from_string(j.at("kind").get<std::string>());
    if (s.is_riemann()) {
        s.alpha = j.at("alpha").get<double>();
    } else {
        s.a = j.at("a").get<double>();
        s.b = j.at("b").get<double>();
    }
    return s;
}

inline Json to_json(const CriteriaReport& r) {
    return Json{{"weierstrass", r.weierstrass},     {"bromwich", r.bromwich},
                {"dini_pair", r.dini_pair},         {"lerch_pair", r.lerch_pair},
                {"dini_general", optional_to_json(r.dini_general)},
                {"dini_general2", optional_to_json(r.dini_general2)},
                {"hardy", r.hardy}};
}
inline CriteriaReport criteria_from_json(const Json& j) {
    CriteriaReport r;
    r.weierstrass = j.at("weierstrass").get<bool>();
    r.bromwich = j.at("bromwich").get<bool>();
    r.dini_pair = j.at("dini_pair").get<bool>();
    r.lerch_pair = j.at("lerch_pair").get<bool>();
    r.dini_general = optional_from_json<bool>(j.at("dini_general"));
    r.dini_general2 = optional_from_json<bool>(j.at("dini_general2"));
    r.hardy = j.at("hardy").get<bool>();
    return r;
}

inline Json to_json(const Verdict& v) {
    return Json{{"point", to_json(v.point)},
                {"two_sided", to_string(v.two_sided)},
                {"right", to_string(v.right)},
                {"left", to_string(v.left)},
                {"symmetric", to_string(v.symmetric)},
                {"kappa", to_json(v.kappa)}};
}
inline DerivativeStatus derivative_status_from_string(const std::string& s) {
    if (s == "zero") return DerivativeStatus::zero;
    if (s == "infinite") return DerivativeStatus::infinite;
    if (s == "none") return DerivativeStatus::none;
    throw precondition_error("unknown derivative status '" + s + "'");
}
inline Verdict verdict_from_json(const Json& j) {
    Verdict v;
    v.point = rational_from_json(j.at("point"));
    v.two_sided = j.at("two_sided").get<std::string>() == "derivative_zero_for_g" ? TwoSided::derivative_zero_for_g : TwoSided::none;
    v.right = derivative_status_from_string(j.at("right").get<std::string>());
    v.left = derivative_status_from_string(j.at("left").get<std::string>());
    v.symmetric = derivative_status_from_string(j.at("symmetric").get<std::string>());
    v.kappa = exact_kappa_from_json(j.at("kappa"));
    return v;
}

inline Json to_json(const ExpansionReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back(Json{{"h", row.h},
                            {"delta", complex_to_json(row.delta)},
                            {"model", complex_to_json(row.model)},
                            {"residual", row.residual}});
    }
    return Json{{"point", to_json(r.point)},
                {"epsilon", r.epsilon},
                {"h_grid", r.h_grid},
                {"kappa_fitted", complex_to_json(r.kappa_fitted)},
                {"kappa_predicted", complex_to_json(r.kappa_predicted)},
                {"kappa_error", r.kappa_error},
                {"max_model_residual", r.max_model_residual},
                {"fitted_exponent", optional_to_json(r.fitted_exponent)},
                {"delta_error_bound", r.delta_error_bound},
                {"exact_match", r.exact_match},
                {"rows", rows}};
}
inline ExpansionReport expansion_from_json(const Json& j) {
    ExpansionReport r;
    r.point = rational_from_json(j.at("point"));
    r.epsilon = j.at("epsilon").get<double>();
    r.h_grid = j.at("h_grid").get<std::vector<double>>();
    r.kappa_fitted = cdouble_from_json(j.at("kappa_fitted"));
    r.kappa_predicted = cdouble_from_json(j.at("kappa_predicted"));
    r.kappa_error = j.at("kappa_error").get<double>();
    r.max_model_residual = j.at("max_model_residual").get<double>();
    r.fitted_exponent = optional_from_json<double>(j.at("fitted_exponent"));
    r.delta_error_bound = j.at("delta_error_bound").get<double>();
    r.exact_match = j.at("exact_match").get<bool>();
    for (const auto& row : j.at("rows")) {
        r.rows.push_back({row.at("h").get<double>(), cdouble_from_json(row.at("delta")), cdouble_from_json(row.at("model")),
                          row.at("residual").get<double>()});
    }
    return r;
}

inline Json to_json(const DerivativeReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) rows.push_back(Json{{"h", row.h}, {"right", row.right}, {"left", row.left}});
    return Json{{"point", to_json(r.point)},
                {"epsilon", r.epsilon},
                {"rows", rows},
                {"right_limit", r.right_limit},
                {"left_limit", r.left_limit},
                {"right_diverges", r.right_diverges},
                {"left_diverges", r.left_diverges},
                {"estimate", optional_to_json(r.estimate)},
                {"quotient_error_bound", r.quotient_error_bound}};
}
inline DerivativeReport derivative_from_json(const Json& j) {
    DerivativeReport r;
    r.point = rational_from_json(j.at("point"));
    r.epsilon = j.at("epsilon").get<double>();
    for (const auto& row : j.at("rows")) r.rows.push_back({row.at("h").get<double>(), row.at("right").get<double>(), row.at("left").get<double>()});
    r.right_limit = j.at("right_limit").get<double>();
    r.left_limit = j.at("left_limit").get<double>();
    r.right_diverges = j.at("right_diverges").get<bool>();
    r.left_diverges = j.at("left_diverges").get<bool>();
    r.estimate = optional_from_json<double>(j.at("estimate"));
    r.quotient_error_bound = j.at("quotient_error_bound").get<double>();
    return r;
}

inline Json to_json(const HolderReport& r) {
    return Json{{"spec", to_json(r.spec)},
                {"point", r.point},
                {"estimated_exponent", r.estimated_exponent},
                {"regression_residual", r.regression_residual},
                {"h_range", Json::array({r.h_min, r.h_max})},
                {"inconclusive", r.inconclusive},
                {"h_grid", r.h_grid},
                {"increments", r.increments},
                {"increment_error_bound", r.increment_error_bound}};
}
inline HolderReport holder_from_json(const Json& j) {
    HolderReport r;
    r.spec = series_spec_from_json(j.at("spec"));
    r.point = j.at("point").get<double>();
    r.estimated_exponent = j.at("estimated_exponent").get<double>();
    r.regression_residual = j.at("regression_residual").get<double>();
    r.h_min = j.at("h_range").at(0).get<double>();
    r.h_max = j.at("h_range").at(1).get<double>();
    r.inconclusive = j.at("inconclusive").get<bool>();
    r.h_grid = j.at("h_grid").get<std::vector<double>>();
    r.increments = j.at("increments").get<std::vector<double>>();
    r.increment_error_bound = j.at("increment_error_bound").get<double>();
    return r;
}

inline Json to_json(const ProbeReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back(Json{{"k", row.k}, {"h", row.h}, {"quotient", row.quotient}, {"error_bound", row.error_bound}});
    }
    return Json{{"a", r.a},
                {"b", r.b},
                {"kind", to_string(r.kind)},
                {"hypothesis", r.hypothesis},
                {"rows", rows},
                {"strictly_increasing", r.strictly_increasing},
                {"exceeds_1e3", r.exceeds_1e3}};
}
inline ProbeReport probe_from_json(const Json& j) {
    ProbeReport r;
    r.a = j.at("a").get<double>();
    r.b = j.at("b").get<double>();
    r.kind = probe_kind_from_string(j.at("kind").get<std::string>());
    r.hypothesis = j.at("hypothesis").get<bool>();
    for (const auto& row : j.at("rows")) {
        r.rows.push_back({row.at("k").get<int>(), row.at("h").get<double>(), row.at("quotient").get<double>(),
                          row.at("error_bound").get<double>()});
    }
    r.strictly_increasing = j.at("strictly_increasing").get<bool>();
    r.exceeds_1e3 = j.at("exceeds_1e3").get<bool>();
    return r;
}

inline Json to_json(const DcReport& r) {
    return Json{{"x", r.x},
                {"schedule", r.schedule},
                {"lhs_partials", r.lhs_partials},
                {"rhs_value", r.rhs_value},
                {"rhs_error_bound", r.rhs_error_bound},
                {"residuals", r.residuals},
                {"loose_bound", r.loose_bound},
                {"final_within_bound", r.final_within_bound},
                {"running_max_nonincreasing", r.running_max_nonincreasing}};
}
inline DcReport dc_from_json(const Json& j) {
    DcReport r;
    r.x = j.at("x").get<double>();
    r.schedule = j.at("schedule").get<std::vector<std::uint64_t>>();
    r.lhs_partials = j.at("lhs_partials").get<std::vector<double>>();
    r.rhs_value = j.at("rhs_value").get<double>();
    r.rhs_error_bound = j.at("rhs_error_bound").get<double>();
    r.residuals = j.at("residuals").get<std::vector<double>>();
    r.loose_bound = j.at("loose_bound").get<double>();
    r.final_within_bound = j.at("final_within_bound").get<bool>();
    r.running_max_nonincreasing = j.at("running_max_nonincreasing").get<bool>();
    return r;
}

}  // namespace thetalab
