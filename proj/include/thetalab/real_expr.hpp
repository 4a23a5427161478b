#pragma once

// Real-number input expressions for the command line:
//     expr   := term (('+' | '-') term)*
//     term   := factor (('*' | '/') factor)*
//     factor := ('+' | '-') factor | number | "pi" | "sqrt(" expr ")" | "(" expr ")"
// Numbers are decimal literals with optional exponent. Evaluation is at the
// requested precision, so "1/sqrt(2)" is correctly rounded to that precision
// up to a few ulps.

#include <cctype>
#include <string>
#include <string_view>

#include "thetalab/bigfloat.hpp"
#include "thetalab/errors.hpp"

namespace thetalab {

namespace detail {

class RealExprParser {
public:
    RealExprParser(std::string_view text, long prec) : text_(text), prec_(prec) {}

    BigFloat parse() {
        BigFloat v = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    BigFloat expr() {
        BigFloat v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    BigFloat term() {
        BigFloat v = factor();
        for (;;) {
            if (eat('*')) {
                v *= factor();
            } else if (eat('/')) {
                BigFloat d = factor();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    BigFloat factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        if (eat('(')) {
            BigFloat v = expr();
            expect(')');
            return v;
        }
        if (keyword("pi")) return BigFloat::pi(prec_);
        if (keyword("sqrt")) {
            expect('(');
            BigFloat v = expr();
            expect(')');
            if (v.sign() < 0) fail("sqrt of a negative number");
            return sqrt(v);
        }
        return number();
    }

    BigFloat number() {
        skip_space();
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ > start && pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            const std::size_t exp_start = pos_;
            digits();
            if (pos_ == exp_start) pos_ = save;
        }
        if (pos_ == start) fail("expected a number");
        return BigFloat::parse(text_.substr(start, pos_ - start), prec_);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool keyword(std::string_view k) {
        skip_space();
        if (text_.substr(pos_, k.size()) != k) return false;
        pos_ += k.size();
        return true;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw precondition_error("bad real expression '" + std::string(text_) + "': " + why);
    }

    std::string_view text_;
    long prec_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Evaluates a real expression such as "0.6", "1/sqrt(2)" or "pi*1/2".
inline BigFloat parse_real(std::string_view text, long prec = kDefaultPrecision) {
    require_precision(prec);
    return detail::RealExprParser(text, prec + kGuardBits).parse().with_precision(prec);
}

}  // namespace thetalab
