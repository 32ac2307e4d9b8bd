// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "waring/matrix.hpp"

namespace waring {

/// A word in the free monoid over X1, X2, ...; indices are 1-based and the
/// empty word is the unit monomial.
using Word = std::vector<int>;

/// Graded lexicographic order: shorter words first, then lexicographic by
/// variable index. Gives canonical, deterministic term order.
struct GradedLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Noncommutative polynomial over the rationals: a finite map from words to
/// nonzero coefficients. Multiplication concatenates words in order.
class NcPolynomial {
public:
    using TermMap = std::map<Word, Rational, GradedLex>;

    NcPolynomial() = default;
    static NcPolynomial constant(const Rational& c);
    static NcPolynomial variable(int index);

    /// Grammar: variables `X1, X2, ...`; binary `+ - *` (explicit `*`, no
    /// juxtaposition); unary minus; integer or rational (`p/q`) coefficients;
    /// parentheses. Throws ParseError with a position for syntax errors and
    /// ZeroPolynomialError when the input collapses to zero.
    static NcPolynomial parse(std::string_view text);

    bool is_zero() const { return terms_.empty(); }
    /// Length of the longest word; throws ZeroPolynomialError on zero.
    int degree() const;
    /// Largest variable index appearing, 0 for constants.
    int max_variable() const;
    const TermMap& terms() const { return terms_; }
    const Rational& coefficient(const Word& w) const;

    NcPolynomial operator+(const NcPolynomial& o) const;
    NcPolynomial operator-(const NcPolynomial& o) const;
    NcPolynomial operator*(const NcPolynomial& o) const;
    NcPolynomial operator-() const;
    NcPolynomial operator*(const Rational& c) const;

    friend bool operator==(const NcPolynomial& a, const NcPolynomial& b) { return a.terms_ == b.terms_; }

    /// Canonical text in graded-lex term order; parse(str()) round-trips.
    std::string str() const;

    /// Substitutes args[i-1] for X_i with noncommutative products; the unit
    /// monomial maps to the identity. All matrices must be square of one
    /// size, and every variable must have a matrix.
    RatMat evaluate(const std::vector<RatMat>& args) const;

private:
    void add_term(const Word& w, const Rational& c);
    TermMap terms_;
};

inline NcPolynomial operator*(const Rational& c, const NcPolynomial& f) { return f * c; }

}  // namespace waring
