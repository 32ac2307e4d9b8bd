// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "waring/errors.hpp"

namespace waring {

using Integer = mpz_class;

/// Exact rational scalar over arbitrary-precision integers.
///
/// Values are immutable in spirit: every operation returns a fresh value and
/// results are always stored in lowest terms with a positive denominator
/// (zero is canonically 0/1). Division by zero throws DivisionByZeroError
/// instead of trapping inside GMP.
///
/// Textual form is "p/q" with an optional leading sign and "/1" elided, e.g.
/// "5", "-3/4". `parse` accepts exactly this grammar; `str` produces it.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}                 // NOLINT: implicit by design
    Rational(long n) : q_(n) {}                // NOLINT
    Rational(long num, long den) : q_(make_canonical(Integer(num), Integer(den))) {}
    Rational(const Integer& n) : q_(n) {}      // NOLINT
    Rational(const Integer& num, const Integer& den) : q_(make_canonical(num, den)) {}
    explicit Rational(mpq_class q) : q_(std::move(q)) {
        if (q_.get_den() == 0) throw DivisionByZeroError("rational with zero denominator");
        q_.canonicalize();
    }

    /// Parses "p/q" (optional sign, "/q" optional). Throws ParseError.
    static Rational parse(std::string_view text);

    std::string str() const { return q_.get_str(); }

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    /// Multiplicative inverse; throws DivisionByZeroError on zero.
    Rational inv() const {
        if (is_zero()) throw DivisionByZeroError("inverse of zero");
        return Rational(Integer(q_.get_den()), Integer(q_.get_num()));
    }

    friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.q_ + b.q_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.q_ - b.q_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.q_ * b.q_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DivisionByZeroError("division by zero");
        return wrap(a.q_ / b.q_);
    }
    friend Rational operator-(const Rational& a) { return wrap(-a.q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

private:
    static mpq_class make_canonical(const Integer& num, const Integer& den) {
        if (sgn(den) == 0) throw DivisionByZeroError("rational with zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    static Rational wrap(mpq_class q) {
        Rational r;
        r.q_ = std::move(q);  // GMP arithmetic keeps values canonical
        return r;
    }

    mpq_class q_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
inline Rational inv(const Rational& x) { return x.inv(); }

inline Rational Rational::parse(std::string_view text) {
    std::size_t i = 0;
    const auto digits = [&](std::size_t start) {
        std::size_t j = start;
        while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
        if (j == start) throw ParseError("expected digits in rational literal", start);
        return j;
    };
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    std::size_t num_end = digits(i);
    Integer num(std::string(text.substr(i, num_end - i)), 10);
    Integer den(1);
    if (num_end < text.size()) {
        if (text[num_end] != '/') throw ParseError("unexpected character in rational literal", num_end);
        std::size_t den_end = digits(num_end + 1);
        if (den_end != text.size()) throw ParseError("unexpected trailing characters in rational literal", den_end);
        den = Integer(std::string(text.substr(num_end + 1, den_end - num_end - 1)), 10);
        if (sgn(den) == 0) throw ParseError("zero denominator in rational literal", num_end + 1);
    }
    if (negative) num = -num;
    return Rational(num, den);
}

inline Rational parse_rational(std::string_view text) { return Rational::parse(text); }

}  // namespace waring
