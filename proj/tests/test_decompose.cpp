// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/generators.hpp"
#include "waring/decompose.hpp"

using namespace waring;
using testgen::Rng;

namespace {

void check_all_pass(const Decomposition& d) {
    const auto report = verify(d);
    for (const auto& c : report.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.pass);
    }
}

}  // namespace

TEST_CASE("zero matrix decomposes into three model copies") {
    const ModelSpectrum ms(3, {Rational(1), Rational(2)});
    const auto d = decompose(zeros(3, 3), ms, Coefficients(Rational(1), Rational(1), Rational(-2)));
    for (const auto& a : d.a) CHECK(mat_eq(a, ms.model()));
    check_all_pass(d);
}

TEST_CASE("the 2x2 closed form reproduces the worked example") {
    const ModelSpectrum ms(2, {Rational(1)});
    const RatMat t = make_matrix({{0, 1}, {1, 0}});
    const auto d = decompose(t, ms, Coefficients(Rational(1), Rational(1), Rational(-2)));

    CHECK(mat_eq(d.a[0], make_matrix({{1, 2}, {0, 0}})));
    CHECK(mat_eq(d.a[1], make_matrix({{0, 0}, {2, 1}})));
    CHECK(mat_eq(d.a[2], make_matrix({{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}})));
    CHECK(mat_eq(d.a[0] + d.a[1] - Rational(2) * d.a[2], t));
    for (const auto& a : d.a) {
        CHECK(mat_eq(a * a, a));  // rank-one idempotents
        CHECK(is_similar_to_model(a, ms));
    }
    check_all_pass(d);
}

TEST_CASE("a 5x5 instance verifies end to end") {
    Rng rng(101);
    const ModelSpectrum ms(5, {Rational(1), Rational(2), Rational(3)});
    const RatMat t = testgen::random_trace_zero(rng, 5);
    const auto d = decompose(t, ms, Coefficients(Rational(1), Rational(2), Rational(-3)));
    check_all_pass(d);
    CHECK(mat_eq(Rational(1) * d.a[0] + Rational(2) * d.a[1] - Rational(3) * d.a[2], t));
    for (int i = 0; i < 3; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        CHECK(is_similar_to_model(d.a[idx], ms));  // rank certificate, independent of the witness
        CHECK(mat_eq(d.a[idx] * d.witnesses[idx], d.witnesses[idx] * ms.model()));
    }
}

TEST_CASE("randomized round trips across sizes and spectra") {
    Rng rng(103);
    for (int iter = 0; iter < 40; ++iter) {
        const index_t n = 2 + static_cast<index_t>(rng() % 6);
        const auto ms = testgen::random_spectrum(rng, n);
        const auto coeffs = testgen::random_coefficients(rng);
        RatMat t = testgen::random_trace_zero(rng, n);
        if (iter % 7 == 0) t = zeros(n, n);
        const auto d = decompose(t, ms, coeffs);
        CHECK(d.report.all_pass());
        check_all_pass(d);
    }
}

TEST_CASE("basis covariance: conjugated inputs stay decomposable") {
    Rng rng(107);
    for (int iter = 0; iter < 15; ++iter) {
        const index_t n = 3 + static_cast<index_t>(rng() % 4);
        const auto ms = testgen::random_spectrum(rng, n);
        const auto coeffs = testgen::random_coefficients(rng);
        const RatMat t = testgen::random_trace_zero(rng, n);
        const RatMat g = testgen::random_invertible(rng, n);
        const auto d = decompose(conjugate(t, g), ms, coeffs);
        CHECK(d.report.all_pass());
    }
}

TEST_CASE("contract violations") {
    const ModelSpectrum ms(2, {Rational(1)});
    const Coefficients coeffs(Rational(1), Rational(1), Rational(-2));
    CHECK_THROWS_WITH_AS(decompose(identity(2), ms, coeffs), doctest::Contains("trace"), ContractError);
    CHECK_THROWS_WITH_AS(decompose(make_matrix({{3, 0}, {0, -3}}), ModelSpectrum(3, {Rational(1), Rational(2)}),
                                   coeffs),
                         doctest::Contains("2x2"), ShapeError);
    CHECK_THROWS_AS(Coefficients(Rational(1), Rational(-1), Rational(0)), ContractError);
    CHECK_THROWS_AS(Coefficients(Rational(1), Rational(1), Rational(1)), ContractError);
}

TEST_CASE("verify notices tampering") {
    Rng rng(109);
    const ModelSpectrum ms(4, {Rational(1), Rational(-2)});
    const auto coeffs = Coefficients(Rational(2), Rational(1), Rational(-3));
    const auto d = decompose(testgen::random_trace_zero(rng, 4), ms, coeffs);

    Decomposition bad_a = d;
    bad_a.a[0](0, 1) += Rational(1);
    const auto r1 = verify(bad_a);
    CHECK_FALSE(r1.all_pass());
    bool combination_failed = false;
    for (const auto& c : r1.checks)
        if (c.name == "combination" && !c.pass) combination_failed = true;
    CHECK(combination_failed);

    Decomposition bad_w = d;
    bad_w.witnesses[1](2, 2) += Rational(3);
    const auto r2 = verify(bad_w);
    CHECK_FALSE(r2.all_pass());
    bool witness_failed = false;
    for (const auto& c : r2.checks)
        if (c.name == "witness-A2" && !c.pass) witness_failed = true;
    CHECK(witness_failed);
}

TEST_CASE("two-term obstruction certificate") {
    const ModelSpectrum ms(6, {Rational(1), Rational(2), Rational(3)});
    const RatMat d_hat = ms.model();

    SUBCASE("model matrices themselves") {
        const auto r = two_term_obstruction(ms, Rational(1), Rational(1), d_hat, d_hat);
        CHECK(r.rank_identity_side == 5);
        CHECK(r.rank_shifted_side <= 4);
        CHECK(r.strict_gap);
        CHECK(r.combination_differs);
    }
    SUBCASE("zero second scalar degenerates to rank one") {
        const auto r = two_term_obstruction(ms, Rational(1), Rational(0), d_hat, d_hat);
        CHECK(r.rank_shifted_side == 1);
        CHECK(r.combination_differs);
    }
    SUBCASE("random similar pairs") {
        Rng rng(113);
        for (int iter = 0; iter < 50; ++iter) {
            const RatMat a1 = conjugate(d_hat, testgen::random_invertible(rng, 6));
            const RatMat a2 = conjugate(d_hat, testgen::random_invertible(rng, 6));
            const auto r = two_term_obstruction(ms, testgen::random_nonzero_rational(rng, 5, 2),
                                                testgen::random_nonzero_rational(rng, 5, 2), a1, a2);
            CHECK(r.rank_identity_side >= 5);
            CHECK(r.rank_shifted_side <= 4);
            CHECK(r.combination_differs);
        }
    }
    SUBCASE("contract") {
        CHECK_THROWS_AS(two_term_obstruction(ModelSpectrum(4, {Rational(1), Rational(2)}), Rational(1),
                                             Rational(1), zeros(4, 4), zeros(4, 4)),
                        ContractError);  // n < 6
        CHECK_THROWS_AS(two_term_obstruction(ModelSpectrum(6, {Rational(1), Rational(2), Rational(3), Rational(4)}),
                                             Rational(1), Rational(1), zeros(6, 6), zeros(6, 6)),
                        ContractError);  // q >= n-2
        CHECK_THROWS_AS(two_term_obstruction(ms, Rational(1), Rational(1), identity(6), d_hat),
                        ContractError);  // A1 not similar to the model
    }
}
