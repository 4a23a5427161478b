#pragma once

// Quadratic Gauss sums S(b, a) = sum_{j=0}^{b-1} e^{2 pi i j^2 a / b}.
//
// Brute-force sums reduce every exponent j^2 a mod b exactly in integer
// arithmetic before touching floating point, so the phase error does not grow
// with b. Closed forms are kept symbolic as sqrt(m) * e^{i k pi / 4}.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "thetalab/bigfloat.hpp"
#include "thetalab/exact_arith.hpp"
#include "thetalab/parallel.hpp"

namespace thetalab {

/// Largest modulus summed term by term.
inline constexpr std::int64_t kMaxBruteForceModulus = 1'000'000;

/// Zero, or sqrt(radicand) * e^{i k pi / 4}.
struct ExactGaussSum {
    bool is_zero = true;
    EighthRootPhase phase{};
    Integer radicand = 0;

    static ExactGaussSum zero() { return {}; }
    static ExactGaussSum of(EighthRootPhase phase, Integer radicand) { return {false, phase, std::move(radicand)}; }

    BigComplex to_complex(long prec) const {
        if (is_zero) return BigComplex(prec);
        BigComplex z = eighth_root(phase.k, prec);
        z *= sqrt(BigFloat(radicand, prec));
        return z;
    }

    /// "0" or "sqrt(m)*e^(i*kπ/4)".
    std::string to_string() const {
        if (is_zero) return "0";
        return "sqrt(" + radicand.get_str() + ")*" + phase.to_string();
    }

    friend bool operator==(const ExactGaussSum& a, const ExactGaussSum& b) {
        if (a.is_zero || b.is_zero) return a.is_zero == b.is_zero;
        return a.phase == b.phase && a.radicand == b.radicand;
    }
};

/// Table of e^{2 pi i r / m}, r = 0..m-1, for repeated sums over one modulus.
class UnitRoots {
public:
    UnitRoots(std::int64_t modulus, long working_prec) : modulus_(modulus), prec_(working_prec) {
        if (modulus < 1 || modulus > 4 * kMaxBruteForceModulus) {
            throw precondition_error("UnitRoots: modulus out of range");
        }
        roots_.reserve(static_cast<std::size_t>(modulus));
        const BigFloat two_pi = BigFloat::pi(prec_) * 2L;
        for (std::int64_t r = 0; r < modulus; ++r) {
            roots_.push_back(expi(two_pi * BigFloat(r, prec_) / modulus));
        }
    }

    std::int64_t modulus() const { return modulus_; }
    long precision() const { return prec_; }
    const BigComplex& operator[](std::int64_t r) const { return roots_[static_cast<std::size_t>(r)]; }

private:
    std::int64_t modulus_;
    long prec_;
    std::vector<BigComplex> roots_;
};

namespace detail {

inline long sum_working_precision(long prec, std::int64_t terms) {
    return prec + kGuardBits + static_cast<long>(std::ceil(std::log2(double(terms) + 1.0)));
}

inline std::int64_t reduce_mod(const Integer& a, std::int64_t m) {
    return static_cast<std::int64_t>(mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(m)));
}

/// Multiplicity of each residue j^2 a mod m over j = 0..count-1.
inline std::vector<std::uint32_t> square_residue_histogram(std::int64_t m, std::int64_t a_mod, std::int64_t count) {
    std::vector<std::uint32_t> hist(static_cast<std::size_t>(m), 0);
    for (std::int64_t j = 0; j < count; ++j) {
        auto jm = static_cast<unsigned __int128>(j % m);
        auto r = static_cast<std::int64_t>((jm * jm % static_cast<unsigned __int128>(m)) * static_cast<unsigned __int128>(a_mod) %
                                           static_cast<unsigned __int128>(m));
        ++hist[static_cast<std::size_t>(r)];
    }
    return hist;
}

/// sum_r hist[r] * root(r), combined in ascending chunk order.
template <class RootFn>
BigComplex weighted_root_sum(const std::vector<std::uint32_t>& hist, long wp, RootFn&& root) {
    auto partials = chunked_map(0, hist.size(), 2048, [&](std::uint64_t lo, std::uint64_t hi) {
        BigComplex acc(wp);
        for (std::uint64_t r = lo; r < hi; ++r) {
            if (hist[r] == 0) continue;
            BigComplex t = root(static_cast<std::int64_t>(r));
            t *= static_cast<long>(hist[r]);
            acc += t;
        }
        return acc;
    });
    BigComplex total(wp);
    for (const auto& p : partials) total += p;
    return total;
}

}  // namespace detail

/// sum_{j=0}^{count-1} e^{2 pi i j^2 a / m} for modulus m >= 1.
inline BigComplex quadratic_exponential_sum(std::int64_t m, const Integer& a, std::int64_t count, long prec) {
    require_precision(prec);
    if (m < 1 || m > 4 * kMaxBruteForceModulus) throw precondition_error("exponential sum modulus out of range");
    const long wp = detail::sum_working_precision(prec, count);
    auto hist = detail::square_residue_histogram(m, detail::reduce_mod(a, m), count);
    const BigFloat two_pi = BigFloat::pi(wp) * 2L;
    BigComplex s = detail::weighted_root_sum(hist, wp, [&](std::int64_t r) { return expi(two_pi * BigFloat(r, wp) / m); });
    return s.with_precision(prec);
}

/// Same sum with roots taken from a precomputed table for modulus m.
inline BigComplex quadratic_exponential_sum(const UnitRoots& roots, const Integer& a, std::int64_t count, long prec) {
    const std::int64_t m = roots.modulus();
    auto hist = detail::square_residue_histogram(m, detail::reduce_mod(a, m), count);
    BigComplex s = detail::weighted_root_sum(hist, roots.precision(), [&](std::int64_t r) { return roots[r]; });
    return s.with_precision(prec);
}

/// S(b, a) by direct summation; negative b uses S(b, a) = S(|b|, sgn(b) a).
inline BigComplex gauss_sum_bruteforce(std::int64_t b, const Integer& a, long prec = kDefaultPrecision) {
    if (b == 0) throw precondition_error("gauss_sum_bruteforce: b must be nonzero");
    if (b < -kMaxBruteForceModulus || b > kMaxBruteForceModulus) {
        throw precondition_error("gauss_sum_bruteforce: |b| exceeds the direct summation bound 10^6");
    }
    const Integer signed_a = b < 0 ? Integer(-a) : a;
    const std::int64_t m = b < 0 ? -b : b;
    return quadratic_exponential_sum(m, signed_a, m, prec);
}

/// Working precision to build a UnitRoots table for moduli up to `m`.
inline long gauss_table_precision(long prec, std::int64_t m) { return detail::sum_working_precision(prec, m); }

/// S(m, a) over a shared root table for modulus m.
inline BigComplex gauss_sum_bruteforce(const UnitRoots& roots, const Integer& a, long prec = kDefaultPrecision) {
    return quadratic_exponential_sum(roots, a, roots.modulus(), prec);
}

/// G(r/s) = sum_{t=0}^{s-1} e^{i pi t^2 r / s}, the half-weight sum.
inline BigComplex smith_G(const Integer& r, const Integer& s, long prec = kDefaultPrecision) {
    if (s < 1) throw precondition_error("smith_G: s must be positive");
    if (thetalab::gcd(r, s) != 1) throw precondition_error("smith_G: r/s must be in lowest terms");
    if (s > kMaxBruteForceModulus) throw precondition_error("smith_G: s exceeds the direct summation bound 10^6");
    const std::int64_t s64 = s.get_si();
    return quadratic_exponential_sum(2 * s64, r, s64, prec);
}

/// Symbolic S(p, q) for coprime p >= 1, q.
inline ExactGaussSum gauss_sum_closed(const Integer& p, const Integer& q) {
    if (p < 1) throw precondition_error("gauss_sum_closed: p must be positive");
    if (thetalab::gcd(p, q) != 1) throw precondition_error("gauss_sum_closed: gcd(p, q) must be 1");
    const unsigned p4 = detail::residue(p, 4u);
    if (p4 % 2 == 1) {
        EighthRootPhase ph = epsilon_factor(p);
        if (kronecker(q, p) < 0) ph = ph * EighthRootPhase{4};
        return ExactGaussSum::of(ph, p);
    }
    if (p4 == 2) return ExactGaussSum::zero();
    // p = 0 mod 4, q odd: S(p, q) = (1 + i^q) (p/q) sqrt(p) for q > 0, conjugate for q < 0.
    const Integer qa = abs(q);
    EighthRootPhase ph{detail::residue(qa, 4u) == 1 ? 1 : 7};
    if (kronecker(p, qa) < 0) ph = ph * EighthRootPhase{4};
    if (q < 0) ph = ph.conj();
    return ExactGaussSum::of(ph, 2 * p);
}

/// The unit coefficient R(p, q) of the square-root cusp of F at q/p.
inline ExactGaussSum itatsu_R(const Integer& p, const Integer& q) {
    if (p < 1) throw precondition_error("itatsu_R: p must be positive");
    if (thetalab::gcd(p, q) != 1) throw precondition_error("itatsu_R: gcd(p, q) must be 1");
    const bool p_odd = !detail::is_even(p);
    const bool q_odd = !detail::is_even(q);
    if (p_odd && q_odd) return ExactGaussSum::zero();
    if (p_odd) {
        // (q/p) e^{-pi i (p-1)/4}
        auto ph = EighthRootPhase::of(-static_cast<long long>(detail::residue(Integer(p - 1), 8u)));
        if (kronecker(q, p) < 0) ph = ph * EighthRootPhase{4};
        return ExactGaussSum::of(ph, 1);
    }
    // (p/|q|) e^{pi i q / 4}
    auto ph = EighthRootPhase::of(detail::residue(q, 8u));
    if (kronecker(p, Integer(abs(q))) < 0) ph = ph * EighthRootPhase{4};
    return ExactGaussSum::of(ph, 1);
}

/// S(p, q) / [e^{pi i sgn(q)/4} (p/(2|q|))^{1/2} S(4|q|, -sgn(q) p)], both sides
/// summed directly; nullopt when the right-hand side vanishes.
inline std::optional<BigComplex> reciprocity_ratio(std::int64_t p, std::int64_t q, long prec = kDefaultPrecision) {
    require_precision(prec);
    if (p < 1 || q == 0) throw precondition_error("reciprocity_ratio: need p >= 1 and q != 0");
    if (std::gcd(p, q) != 1) throw precondition_error("reciprocity_ratio: gcd(p, q) must be 1");
    const long wp = prec + kGuardBits;
    const std::int64_t qa = q < 0 ? -q : q;
    const int sq = q < 0 ? -1 : 1;
    BigComplex lhs = gauss_sum_bruteforce(p, Integer(q), wp);
    BigComplex rhs = gauss_sum_bruteforce(4 * qa, Integer(-sq * p), wp);
    rhs *= eighth_root(sq, wp);
    rhs *= sqrt(BigFloat(p, wp) / BigFloat(2 * qa, wp));
    if (abs(rhs) < BigFloat::pow2(-prec / 2, wp)) return std::nullopt;
    return (lhs / rhs).with_precision(prec);
}

/// |p^{-1/2} S(p, q) - e^{i pi/4} (2q)^{-1/2} sum_{j<2q} e^{-pi i j^2 p/(2q)}|.
inline double landsberg_schaar_residual(std::int64_t p, std::int64_t q, long prec = kDefaultPrecision) {
    require_precision(prec);
    if (p < 1 || q < 1) throw precondition_error("landsberg_schaar_residual: need p, q >= 1");
    const long wp = prec + kGuardBits;
    BigComplex lhs = gauss_sum_bruteforce(p, Integer(q), wp) / sqrt(BigFloat(p, wp));
    BigComplex rhs = quadratic_exponential_sum(4 * q, Integer(-p), 2 * q, wp);
    rhs *= eighth_root(1, wp);
    rhs /= sqrt(BigFloat(2 * q, wp));
    return abs(lhs - rhs).to_double();
}

/// S(k a, k b) / S(a, b) by direct summation; nullopt when S(a, b) = 0.
inline std::optional<BigComplex> scaling_ratio(std::int64_t a, std::int64_t b, std::int64_t k, long prec = kDefaultPrecision) {
    require_precision(prec);
    if (a < 1 || k < 1) throw precondition_error("scaling_ratio: need a >= 1 and k >= 1");
    if (std::gcd(a, b) != 1) throw precondition_error("scaling_ratio: gcd(a, b) must be 1");
    const long wp = prec + kGuardBits;
    BigComplex base = gauss_sum_bruteforce(a, Integer(b), wp);
    if (abs(base) < BigFloat::pow2(-prec / 2, wp)) return std::nullopt;
    BigComplex scaled = gauss_sum_bruteforce(k * a, Integer(k * b), wp);
    return (scaled / base).with_precision(prec);
}

}  // namespace thetalab
