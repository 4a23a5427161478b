#pragma once

// Exact integer and rational arithmetic: gcd, reduced fractions, the
// Kronecker symbol, eighth roots of unity, and the Liouville sieve.

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "thetalab/errors.hpp"

namespace thetalab {

using Integer = mpz_class;

template <class T>
concept IntegerLike = std::signed_integral<T> || std::same_as<T, mpz_class>;

namespace detail {

template <std::signed_integral T>
unsigned residue(const T& a, unsigned m) {
    auto r = static_cast<long long>(a % static_cast<T>(m));
    return static_cast<unsigned>(r < 0 ? r + m : r);
}
inline unsigned residue(const mpz_class& a, unsigned m) {
    return static_cast<unsigned>(mpz_fdiv_ui(a.get_mpz_t(), m));
}

template <std::signed_integral T>
bool is_even(const T& a) { return (a & 1) == 0; }
inline bool is_even(const mpz_class& a) { return mpz_even_p(a.get_mpz_t()) != 0; }

template <std::signed_integral T>
int sign(const T& a) { return (a > 0) - (a < 0); }
inline int sign(const mpz_class& a) { return sgn(a); }

/// (2/n) for odd n, from n mod 8.
inline int kronecker_two(unsigned n_mod8) { return (n_mod8 == 1 || n_mod8 == 7) ? 1 : -1; }

}  // namespace detail

/// Greatest common divisor, nonnegative; gcd(0, 0) = 0.
template <IntegerLike T>
T gcd(T a, T b) {
    if constexpr (std::same_as<T, mpz_class>) {
        mpz_class r;
        mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    } else {
        using U = std::make_unsigned_t<T>;
        U x = a < 0 ? U(0) - static_cast<U>(a) : static_cast<U>(a);
        U y = b < 0 ? U(0) - static_cast<U>(b) : static_cast<U>(b);
        while (y != 0) {
            U t = x % y;
            x = y;
            y = t;
        }
        if (x > static_cast<U>(std::numeric_limits<T>::max())) {
            throw precondition_error("gcd does not fit in the integer type");
        }
        return static_cast<T>(x);
    }
}

/// Kronecker symbol (a/n), extending the Jacobi symbol to every integer n.
/// Binary-gcd style: strip factors of two, then flip by reciprocity.
template <IntegerLike T>
int kronecker(T a, T n) {
    using detail::is_even;
    using detail::residue;
    if (n == 0) {
        return (a == 1 || a == -1) ? 1 : 0;
    }
    if (is_even(a) && is_even(n)) return 0;

    int k = 1;
    int twos = 0;
    while (is_even(n)) {
        n /= 2;
        ++twos;
    }
    if (twos & 1) k = detail::kronecker_two(residue(a, 8u));
    if (n < 0) {
        n = -n;  // n is odd here, so never the most negative value
        if (a < 0) k = -k;
    }
    // n odd and positive: the symbol depends only on a mod n.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        twos = 0;
        while (is_even(a)) {
            a /= 2;
            ++twos;
        }
        if (twos & 1) k *= detail::kronecker_two(residue(n, 8u));
        if (residue(a, 4u) == 3 && residue(n, 4u) == 3) k = -k;
        T r = n % a;
        n = a;
        a = r;
    }
    return n == 1 ? k : 0;
}

/// Exact rational num/den in lowest terms, den >= 1, zero stored as 0/1.
class ReducedRational {
public:
    ReducedRational() : num_(0), den_(1) {}

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    std::string to_string() const { return num_.get_str() + "/" + den_.get_str(); }

    friend bool operator==(const ReducedRational&, const ReducedRational&) = default;

    friend ReducedRational reduce(Integer num, Integer den);

private:
    Integer num_;
    Integer den_;
};

/// Brings num/den to lowest terms with a positive denominator.
inline ReducedRational reduce(Integer num, Integer den) {
    if (den == 0) throw precondition_error("reduce: zero denominator");
    Integer g = thetalab::gcd(num, den);
    ReducedRational r;
    r.num_ = num / g;
    r.den_ = den / g;
    if (r.den_ < 0) {
        r.num_ = -r.num_;
        r.den_ = -r.den_;
    }
    return r;
}

inline ReducedRational reduce(long num, long den) { return reduce(Integer(num), Integer(den)); }

/// Parses "q/p" or "q" (integers of any size, optional sign) and reduces it.
inline ReducedRational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        Integer v;
        std::string str(s);
        std::size_t start = (!str.empty() && (str[0] == '-' || str[0] == '+')) ? 1 : 0;
        if (str.size() == start || str.find_first_not_of("0123456789", start) != std::string::npos) {
            throw precondition_error("not a rational of the form q/p: '" + std::string(text) + "'");
        }
        if (str[0] == '+') str.erase(0, 1);
        v.set_str(str, 10);
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return reduce(parse_int(text), Integer(1));
    return reduce(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

/// e^{i k pi / 4}, k in 0..7.
struct EighthRootPhase {
    int k = 0;

    static EighthRootPhase of(long long k) { return EighthRootPhase{static_cast<int>(((k % 8) + 8) % 8)}; }

    friend EighthRootPhase operator*(EighthRootPhase a, EighthRootPhase b) { return of(a.k + b.k); }
    EighthRootPhase conj() const { return of(-k); }
    friend bool operator==(EighthRootPhase, EighthRootPhase) = default;

    std::string to_string() const { return "e^(i*" + std::to_string(k) + "π/4)"; }
};

/// Fourth-root factor of the odd-modulus Gauss sum: 1 for p = 1 mod 4, i for p = 3 mod 4.
template <IntegerLike T>
EighthRootPhase epsilon_factor(const T& p) {
    if (p < 1 || detail::is_even(p)) throw precondition_error("epsilon_factor: p must be odd and positive");
    return detail::residue(p, 4u) == 1 ? EighthRootPhase{0} : EighthRootPhase{2};
}

/// lambda(n) = (-1)^Omega(n) for 1 <= n <= limit, Omega counted with multiplicity.
class LiouvilleTable {
public:
    LiouvilleTable() = default;
    LiouvilleTable(std::uint64_t limit, std::vector<std::int8_t> values)
        : limit_(limit), values_(std::move(values)) {}

    std::uint64_t limit() const { return limit_; }
    int operator[](std::uint64_t n) const { return values_[n]; }
    int at(std::uint64_t n) const {
        if (n < 1 || n > limit_) throw precondition_error("LiouvilleTable: index out of range");
        return values_[n];
    }
    /// values()[n] for n in 1..limit; index 0 is unused.
    const std::vector<std::int8_t>& values() const { return values_; }

private:
    std::uint64_t limit_ = 0;
    std::vector<std::int8_t> values_;
};

/// Linear (Euler) sieve: every composite is produced once, from its smallest
/// prime factor, so lambda(p*m) = -lambda(m).
inline LiouvilleTable liouville_sieve(std::uint64_t n) {
    if (n < 1) throw precondition_error("liouville_sieve: N must be positive");
    if (n >= (std::uint64_t{1} << 32)) throw resource_error("liouville_sieve: N too large");
    try {
        std::vector<std::int8_t> lambda(n + 1, 0);
        std::vector<std::uint32_t> primes;
        primes.reserve(n > 100 ? static_cast<std::size_t>(1.3 * n / std::log(double(n))) : 32);
        lambda[1] = 1;
        for (std::uint64_t i = 2; i <= n; ++i) {
            if (lambda[i] == 0) {
                lambda[i] = -1;
                primes.push_back(static_cast<std::uint32_t>(i));
            }
            for (std::uint32_t p : primes) {
                std::uint64_t m = i * p;
                if (m > n) break;
                lambda[m] = static_cast<std::int8_t>(-lambda[i]);
                if (i % p == 0) break;
            }
        }
        return LiouvilleTable(n, std::move(lambda));
    } catch (const std::bad_alloc&) {
        throw resource_error("liouville_sieve: allocation failed for N = " + std::to_string(n));
    } catch (const std::length_error&) {
        throw resource_error("liouville_sieve: allocation failed for N = " + std::to_string(n));
    }
}

}  // namespace thetalab
