#pragma once

// RAII value types over MPFR: BigFloat (real) and BigComplex.
//
// Every value carries its own precision in bits. Binary operators produce a
// result at the larger of the two operand precisions, rounded to nearest.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "thetalab/errors.hpp"

namespace thetalab {

/// Default target precision in bits.
inline constexpr long kDefaultPrecision = 192;
/// Extra bits carried by every internal computation.
inline constexpr long kGuardBits = 32;
/// Smallest precision accepted by any public operation.
inline constexpr long kMinPrecision = 64;

inline void require_precision(long bits) {
    if (bits < kMinPrecision) {
        throw precondition_error("precision must be at least 64 bits, got " + std::to_string(bits));
    }
}

class BigFloat {
public:
    explicit BigFloat(long prec = kDefaultPrecision) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(double x, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    BigFloat(long x, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    BigFloat(const mpz_class& x, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(const BigFloat& o, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat pi(long prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat ln2(long prec) {
        BigFloat r(prec);
        mpfr_const_log2(r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat ratio(const mpz_class& num, const mpz_class& den, long prec) {
        BigFloat r(num, prec);
        mpfr_div_z(r.v_, r.v_, den.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    /// Parses a decimal literal (e.g. "0.6", "-1.5e-3"); throws precondition_error.
    static BigFloat parse(std::string_view text, long prec) {
        BigFloat r(prec);
        std::string s(text);
        char* end = nullptr;
        if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
        if (s.empty() || end != s.c_str() + s.size()) {
            throw precondition_error("not a decimal number: '" + s + "'");
        }
        return r;
    }
    /// 2^e exactly.
    static BigFloat pow2(long e, long prec) {
        BigFloat r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
    BigFloat with_precision(long prec) const { return BigFloat(*this, prec); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    /// Binary exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
    long exponent() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

    /// Scientific notation with `digits` significant digits, locale-independent.
    std::string to_string(int digits = 20) const {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    BigFloat& operator+=(const BigFloat& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
    BigFloat& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }
    BigFloat& operator+=(long k) { mpfr_add_si(v_, v_, k, MPFR_RNDN); return *this; }
    BigFloat& operator-=(long k) { mpfr_sub_si(v_, v_, k, MPFR_RNDN); return *this; }
    BigFloat& mul_2exp(long e) { mpfr_mul_2si(v_, v_, e, MPFR_RNDN); return *this; }

    BigFloat operator-() const {
        BigFloat r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator*(BigFloat a, long k) { return a *= k; }
    friend BigFloat operator/(BigFloat a, long k) { return a /= k; }
    friend BigFloat operator+(BigFloat a, long k) { return a += k; }
    friend BigFloat operator-(BigFloat a, long k) { return a -= k; }

    friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }
    friend bool operator<(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
    friend bool operator>=(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

#define THETALAB_UNARY(name, fn)                    \
    friend BigFloat name(const BigFloat& x) {       \
        BigFloat r(x.precision());                  \
        fn(r.v_, x.v_, MPFR_RNDN);                  \
        return r;                                   \
    }
    THETALAB_UNARY(sqrt, mpfr_sqrt)
    THETALAB_UNARY(sin, mpfr_sin)
    THETALAB_UNARY(cos, mpfr_cos)
    THETALAB_UNARY(exp, mpfr_exp)
    THETALAB_UNARY(log, mpfr_log)
    THETALAB_UNARY(abs, mpfr_abs)
    THETALAB_UNARY(atan, mpfr_atan)
#undef THETALAB_UNARY

    friend BigFloat floor(const BigFloat& x) {
        BigFloat r(x.precision());
        mpfr_floor(r.v_, x.v_);
        return r;
    }
    friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
        BigFloat r(std::max(y.precision(), x.precision()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat pow(const BigFloat& x, const BigFloat& e) {
        BigFloat r(std::max(x.precision(), e.precision()));
        mpfr_pow(r.v_, x.v_, e.v_, MPFR_RNDN);
        return r;
    }
    friend void sin_cos(const BigFloat& x, BigFloat& s, BigFloat& c) {
        mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
    }

private:
    void widen(const BigFloat& o) {
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) {
            mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
        }
    }

    mpfr_t v_;
};

/// x - 2*floor(x/2), i.e. x reduced into [0, 2).
inline BigFloat mod2(const BigFloat& x) {
    BigFloat half = x;
    half.mul_2exp(-1);
    BigFloat r = x - floor(half) * 2L;
    return r;
}

struct BigComplex {
    BigFloat re;
    BigFloat im;

    explicit BigComplex(long prec = kDefaultPrecision) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(double r, double i, long prec) : re(r, prec), im(i, prec) {}

    long precision() const { return std::max(re.precision(), im.precision()); }
    BigComplex with_precision(long prec) const { return {re.with_precision(prec), im.with_precision(prec)}; }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
    BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
    BigComplex& operator*=(const BigComplex& o) {
        BigFloat r = re * o.re - im * o.im;
        BigFloat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    BigComplex& operator*=(const BigFloat& s) { re *= s; im *= s; return *this; }
    BigComplex& operator*=(long k) { re *= k; im *= k; return *this; }
    BigComplex& operator/=(const BigFloat& s) { re /= s; im /= s; return *this; }
    BigComplex& operator/=(long k) { re /= k; im /= k; return *this; }
    BigComplex& operator/=(const BigComplex& o) {
        BigFloat d = o.re * o.re + o.im * o.im;
        BigFloat r = (re * o.re + im * o.im) / d;
        BigFloat i = (im * o.re - re * o.im) / d;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    BigComplex operator-() const { return {-re, -im}; }

    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
    friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
    friend BigComplex operator*(BigComplex a, const BigFloat& s) { return a *= s; }
    friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
    friend BigComplex operator/(BigComplex a, const BigFloat& s) { return a /= s; }
};

inline BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }
inline BigFloat norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }
inline BigFloat abs(const BigComplex& z) { return sqrt(norm(z)); }
inline BigFloat arg(const BigComplex& z) { return atan2(z.im, z.re); }

/// i*z
inline BigComplex times_i(const BigComplex& z) { return {-z.im, z.re}; }

/// e^{i*theta}
inline BigComplex expi(const BigFloat& theta) {
    BigComplex r(theta.precision());
    sin_cos(theta, r.im, r.re);
    return r;
}

/// e^{i*pi*t} with t reduced mod 2 before scaling by pi.
inline BigComplex expi_pi(const BigFloat& t) {
    return expi(mod2(t) * BigFloat::pi(t.precision()));
}

/// e^{i*k*pi/4}, exact up to rounding of sqrt(2)/2.
inline BigComplex eighth_root(int k, long prec) {
    k = ((k % 8) + 8) % 8;
    BigFloat h = sqrt(BigFloat(2L, prec));
    h.mul_2exp(-1);
    BigFloat one(1L, prec), zero(prec);
    switch (k) {
    case 0: return {one, zero};
    case 1: return {h, h};
    case 2: return {zero, one};
    case 3: return {-h, h};
    case 4: return {-one, zero};
    case 5: return {-h, -h};
    case 6: return {zero, -one};
    default: return {h, -h};
    }
}

inline BigComplex exp(const BigComplex& z) {
    BigComplex r = expi(z.im);
    r *= exp(z.re);
    return r;
}

/// Principal square root (branch cut on the negative real axis, arg in (-pi/2, pi/2]).
inline BigComplex sqrt(const BigComplex& z) {
    long prec = z.precision();
    if (z.re.is_zero() && z.im.is_zero()) return BigComplex(prec);
    BigFloat m = abs(z);
    if (z.re.sign() >= 0) {
        BigFloat t = m + z.re;
        t.mul_2exp(-1);
        t = sqrt(t);
        BigFloat i = z.im / t;
        i.mul_2exp(-1);
        return {t, i};
    }
    BigFloat t = m - z.re;
    t.mul_2exp(-1);
    t = sqrt(t);
    BigFloat r = abs(z.im) / t;
    r.mul_2exp(-1);
    if (z.im.sign() < 0) t = -t;
    return {r, t};
}

/// Principal power z^e for real e, via exp(e * Log z).
inline BigComplex pow(const BigComplex& z, const BigFloat& e) {
    BigFloat logm = log(abs(z));
    BigFloat theta = arg(z);
    return exp(BigComplex(logm * e, theta * e));
}

inline std::string to_string(const BigComplex& z, int digits = 20) {
    return z.re.to_string(digits) + (z.im.sign() < 0 ? " - " : " + ") + abs(z.im).to_string(digits) + "i";
}

/// Value plus a certified bound on its absolute error.
template <class T>
struct Certified {
    T value;
    double error_bound = 0.0;
};

/// Upper bound for 2^-bits as a double (saturates at the smallest normal).
inline double pow2_bound(long bits) { return std::ldexp(1.0, static_cast<int>(-std::min(bits, 1000L))); }

}  // namespace thetalab
