// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/generators.hpp"
#include "waring/ncpoly.hpp"

using namespace waring;
using testgen::Rng;

namespace {
NcPolynomial P(const char* text) { return NcPolynomial::parse(text); }
}  // namespace

TEST_CASE("parsing collects like terms in canonical order") {
    const auto commutator = P("X1*X2 - X2*X1");
    CHECK(commutator.terms().size() == 2);
    CHECK(commutator.degree() == 2);
    CHECK(commutator.coefficient({1, 2}) == Rational(1));
    CHECK(commutator.coefficient({2, 1}) == Rational(-1));

    const auto collapsed = P("X1*X2 - X1*X2 + X1");
    CHECK(collapsed.terms().size() == 1);
    CHECK(collapsed.degree() == 1);

    CHECK(P("2*(X1 + X1)").coefficient({1}) == Rational(4));
    CHECK(P("3/4*X1").coefficient({1}) == Rational(3, 4));
    CHECK(P("-X1*X2").coefficient({1, 2}) == Rational(-1));
    CHECK(P("(X1 + 1)*(X1 - 1)") == P("X1*X1 - 1"));
}

TEST_CASE("degree") {
    CHECK(P("X1").degree() == 1);
    CHECK(P("X1*X2*X1 + X3").degree() == 3);
    CHECK(P("5").degree() == 0);
    CHECK(P("5").max_variable() == 0);
    CHECK(P("X1*X7").max_variable() == 7);
    CHECK_THROWS_AS(P("X1 - X1"), ZeroPolynomialError);
}

TEST_CASE("syntax errors carry a position") {
    for (const char* bad : {"X", "X0", "2 X1", "X1 X2", "(X1", "X1 +", "*X1", "1//2", "X1 $ X2", ""}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(P(bad), ParseError);
    }
    try {
        P("X1 + @");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
}

TEST_CASE("canonical rendering round-trips") {
    CHECK(P("X1*X2 - X2*X1").str() == "X1*X2 - X2*X1");
    CHECK(P("-2*X1 + 3").str() == "3 - 2*X1");
    CHECK(P("X2*X1*(0-1) + X1*X2").str() == "X1*X2 - X2*X1");
    CHECK(P("1/2*X1*X1").str() == "1/2*X1*X1");

    Rng rng(67);
    for (int iter = 0; iter < 200; ++iter) {
        NcPolynomial f;
        const int terms = 1 + static_cast<int>(rng() % 4);
        for (int t = 0; t < terms; ++t) {
            Word w;
            const int len = static_cast<int>(rng() % 4);
            for (int i = 0; i < len; ++i) w.push_back(1 + static_cast<int>(rng() % 3));
            f = f + NcPolynomial::constant(testgen::random_nonzero_rational(rng, 5, 3)) *
                        [&] {
                            NcPolynomial m = NcPolynomial::constant(Rational(1));
                            for (int v : w) m = m * NcPolynomial::variable(v);
                            return m;
                        }();
        }
        if (f.is_zero()) continue;
        CHECK(NcPolynomial::parse(f.str()) == f);
    }
}

TEST_CASE("evaluation") {
    const RatMat a = make_matrix({{1, 2}, {3, 4}});
    CHECK(mat_eq(P("X1").evaluate({a}), a));

    const RatMat e12 = make_matrix({{0, 1}, {0, 0}});
    const RatMat e21 = make_matrix({{0, 0}, {1, 0}});
    CHECK(mat_eq(P("X1*X2 - X2*X1").evaluate({e12, e21}), diagonal({Rational(1), Rational(-1)})));

    // unit monomial becomes the identity
    CHECK(mat_eq(P("X1 + 2").evaluate({zeros(2, 2)}), Rational(2) * identity(2)));

    CHECK_THROWS_AS(P("X1*X3").evaluate({a, a}), ContractError);
    CHECK_THROWS_AS(P("X1*X2").evaluate({a, zeros(3, 3)}), ShapeError);
    CHECK_THROWS_AS(P("X1").evaluate({}), ContractError);
}

TEST_CASE("conjugation equivariance and linearity") {
    Rng rng(71);
    const auto f = P("X1*X2 - X2*X1 + 2*X1*X1");
    const auto g = P("X2*X2 - 3*X1");
    for (int iter = 0; iter < 60; ++iter) {
        const index_t n = 2 + static_cast<index_t>(rng() % 3);
        const std::vector<RatMat> args{testgen::random_matrix(rng, n, n, 4),
                                       testgen::random_matrix(rng, n, n, 4)};
        const RatMat s = testgen::random_invertible(rng, n);
        const RatMat s_inv = inverse(s);

        std::vector<RatMat> conj_args;
        for (const auto& m : args) conj_args.push_back(s * m * s_inv);
        CHECK(mat_eq(f.evaluate(conj_args), s * f.evaluate(args) * s_inv));

        CHECK(mat_eq((f + g).evaluate(args), f.evaluate(args) + g.evaluate(args)));
    }
}
