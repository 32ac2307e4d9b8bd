// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/generators.hpp"
#include "waring/constructions.hpp"

using namespace waring;
using testgen::Rng;

namespace {

ModelSpectrum spec_of(index_t n, std::vector<Rational> lambdas) { return ModelSpectrum(n, std::move(lambdas)); }

RatMat lower_shape(Rng& rng, const ModelSpectrum& ms) {
    const index_t q = ms.q(), n = ms.n();
    RatMat l = zeros(q, q);
    for (index_t i = 0; i < q; ++i) {
        l(i, i) = ms.lambdas()[static_cast<std::size_t>(i)];
        for (index_t j = 0; j < i; ++j) l(i, j) = testgen::random_rational(rng, 5);
    }
    return assemble_blocks(l, zeros(q, n - q), testgen::random_matrix(rng, n - q, q, 5), zeros(n - q, n - q));
}

}  // namespace

TEST_CASE("model matrix layouts") {
    CHECK(mat_eq(model_matrix(spec_of(2, {Rational(3)})), diagonal({Rational(3), Rational(0)})));
    CHECK(mat_eq(model_matrix(spec_of(3, {Rational(1), Rational(2), Rational(3)})),
                 diagonal({Rational(1), Rational(2), Rational(3)})));
    CHECK(mat_eq(model_matrix(spec_of(4, {Rational(1), Rational(-1)})),
                 diagonal({Rational(1), Rational(-1), Rational(0), Rational(0)})));
}

TEST_CASE("model spectrum invariants are enforced") {
    CHECK_THROWS_AS(spec_of(3, {Rational(1)}), ContractError);             // 2q < n
    CHECK_THROWS_AS(spec_of(2, {Rational(1), Rational(1)}), ContractError);  // repeated
    CHECK_THROWS_AS(spec_of(2, {Rational(0)}), ContractError);             // zero eigenvalue
    CHECK_THROWS_AS(spec_of(1, {Rational(1)}), ContractError);             // n too small
    CHECK_THROWS_AS(spec_of(2, {Rational(1), Rational(2), Rational(3)}), ContractError);  // q > n
}

TEST_CASE("kernel-rank similarity certificate") {
    const auto ms = spec_of(2, {Rational(2)});
    CHECK(is_similar_to_model(model_matrix(ms), ms));
    CHECK(is_similar_to_model(make_matrix({{2, 0}, {3, 0}}), ms));
    CHECK_FALSE(is_similar_to_model(identity(2), spec_of(2, {Rational(1)})));
    CHECK_FALSE(is_similar_to_model(zeros(2, 2), ms));
}

TEST_CASE("witness construction from kernels") {
    const auto ms = spec_of(4, {Rational(1), Rational(2), Rational(-1)});
    const RatMat d = model_matrix(ms);
    const auto w = diagonalize_with_spectrum(d, ms);
    CHECK(mat_eq(w.matrix(), identity(4)));

    const auto ms2 = spec_of(2, {Rational(2)});
    const RatMat a = make_matrix({{2, 0}, {3, 0}});
    const auto w2 = diagonalize_with_spectrum(a, ms2);
    CHECK(mat_eq(w2.matrix(), make_matrix({{2, 0}, {3, 1}})));
    CHECK(mat_eq(w2.matrix() * model_matrix(ms2) * w2.inverse_matrix(), a));

    CHECK_THROWS_WITH_AS(diagonalize_with_spectrum(identity(2), spec_of(2, {Rational(1)})),
                         doctest::Contains("rank"), ContractError);
}

TEST_CASE("triangular block shapes are similar to the model") {
    Rng rng(41);
    for (int iter = 0; iter < 60; ++iter) {
        const index_t n = 2 + static_cast<index_t>(rng() % 5);
        const auto ms = testgen::random_spectrum(rng, n);
        const RatMat lower = lower_shape(rng, ms);
        CHECK(is_similar_to_model(lower, ms));
        const auto w = diagonalize_with_spectrum(lower, ms);
        CHECK(mat_eq(w.matrix() * model_matrix(ms) * w.inverse_matrix(), lower));

        // dual shape [[M, V], [0, 0]]
        const index_t q = ms.q();
        RatMat m = zeros(q, q);
        for (index_t i = 0; i < q; ++i) {
            m(i, i) = ms.lambdas()[static_cast<std::size_t>(i)];
            for (index_t j = i + 1; j < q; ++j) m(i, j) = testgen::random_rational(rng, 5);
        }
        const RatMat upper = assemble_blocks(m, testgen::random_matrix(rng, q, n - q, 5), zeros(n - q, q),
                                             zeros(n - q, n - q));
        CHECK(is_similar_to_model(upper, ms));
    }
}

TEST_CASE("square factorization (nonscalar block)") {
    SUBCASE("already non-diagonal: X = I") {
        const RatMat z = make_matrix({{0, 1}, {0, 0}});
        const auto [w, x] = factor_nonscalar_square(z);
        CHECK(mat_eq(x, identity(2)));
        CHECK(mat_eq(w, z));
        CHECK_FALSE(is_diagonal(x * w));
    }
    SUBCASE("diagonal input: shear the unequal pair") {
        const RatMat z = diagonal({Rational(1), Rational(2)});
        const auto [w, x] = factor_nonscalar_square(z);
        CHECK(mat_eq(x, make_matrix({{1, 1}, {0, 1}})));
        CHECK(mat_eq(w, make_matrix({{1, -1}, {0, 2}})));
        CHECK(mat_eq(x * w, make_matrix({{1, 1}, {0, 2}})));
        CHECK(mat_eq(w * x, z));
    }
    SUBCASE("the unequal pair may sit past equal entries") {
        const RatMat z = diagonal({Rational(5), Rational(5), Rational(7)});
        const auto [w, x] = factor_nonscalar_square(z);
        CHECK(mat_eq(w * x, z));
        CHECK_FALSE(is_diagonal(x * w));
        CHECK(rank(x) == 3);
    }
    SUBCASE("contract") {
        CHECK_THROWS_AS(factor_nonscalar_square(make_matrix({{4}})), ContractError);
        CHECK_THROWS_AS(factor_nonscalar_square(identity(3)), ContractError);
    }
    SUBCASE("randomized postconditions") {
        Rng rng(43);
        for (int iter = 0; iter < 200; ++iter) {
            const index_t k = 2 + static_cast<index_t>(rng() % 7);
            const RatMat z = testgen::random_nonscalar(rng, k, 6);
            const auto [w, x] = factor_nonscalar_square(z);
            CHECK(mat_eq(w * x, z));
            CHECK(rank(x) == k);
            CHECK_FALSE(is_diagonal(x * w));
        }
    }
}

TEST_CASE("rectangular factorization") {
    SUBCASE("worked 1x1 example") {
        const auto [w, x] = factor_rectangular(make_matrix({{5}}), 2);
        CHECK(mat_eq(w, make_matrix({{5, 1}})));
        CHECK(mat_eq(x, make_matrix({{1}, {0}})));
        CHECK(mat_eq(w * x, make_matrix({{5}})));
        CHECK(mat_eq(x * w, make_matrix({{5, 1}, {0, 0}})));
    }
    SUBCASE("zero block still works: Y is nonzero") {
        const auto [w, x] = factor_rectangular(zeros(1, 1), 2);
        CHECK(mat_eq(x * w, make_matrix({{0, 1}, {0, 0}})));
        CHECK_FALSE(is_diagonal(x * w));
    }
    SUBCASE("contract") { CHECK_THROWS_AS(factor_rectangular(zeros(2, 2), 2), ContractError); }
    SUBCASE("randomized postconditions") {
        Rng rng(47);
        for (int iter = 0; iter < 200; ++iter) {
            const index_t k = 1 + static_cast<index_t>(rng() % 4);
            const index_t l = k + 1 + static_cast<index_t>(rng() % 4);
            const RatMat z = testgen::random_matrix(rng, k, k, 6);
            const auto [w, x] = factor_rectangular(z, l);
            CHECK(mat_eq(w * x, z));
            CHECK_FALSE(is_diagonal(x * w));
        }
    }
}

TEST_CASE("block completion realizes the model") {
    SUBCASE("n = 2q with nonscalar block") {
        const auto ms = spec_of(4, {Rational(3), Rational(4)});
        const auto bc = complete_block_to_model(diagonal({Rational(1), Rational(2)}), ms);
        CHECK(is_similar_to_model(bc.a, ms));
        CHECK_FALSE(is_scalar_matrix(bc.u));
        CHECK(mat_eq(bc.witness.matrix() * model_matrix(ms) * bc.witness.inverse_matrix(), bc.a));
    }
    SUBCASE("q > n - q") {
        const auto ms = spec_of(3, {Rational(1), Rational(2)});
        const auto bc = complete_block_to_model(zeros(1, 1), ms);
        CHECK(is_similar_to_model(bc.a, ms));
        CHECK(mat_eq(extract_block(bc.a, 2, 1, 2, 1), zeros(1, 1)));
    }
    SUBCASE("contract") {
        CHECK_THROWS_AS(complete_block_to_model(identity(2), spec_of(4, {Rational(1), Rational(2)})),
                        ContractError);  // n = 2q, scalar block
        CHECK_THROWS_AS(complete_block_to_model(zeros(0, 0), spec_of(3, {Rational(1), Rational(2), Rational(3)})),
                        ContractError);  // q = n
    }
    SUBCASE("the shear conjugation collapses to the triangular shape") {
        // Rebuilt from the public factorizations, then checked as an identity.
        Rng rng(53);
        for (int iter = 0; iter < 100; ++iter) {
            const index_t n = 3 + static_cast<index_t>(rng() % 4);
            const index_t q_min = (n + 1) / 2;
            const index_t q = q_min + static_cast<index_t>(rng() % (n - q_min));  // q < n
            const auto ms = ModelSpectrum(n, testgen::random_lambdas(rng, q));
            const index_t k = n - q;
            RatMat z = (q == k) ? testgen::random_nonscalar(rng, k, 5) : testgen::random_matrix(rng, k, k, 5);
            const auto [w, x] = (q > k) ? factor_rectangular(z, q) : factor_nonscalar_square(z);
            const RatMat u = ms.model_q() - x * w;
            const RatMat v = u * x + x * w * x - x * z;
            const RatMat a = assemble_blocks(u, v, w, z);
            RatMat shear = identity(n), shear_inv = identity(n);
            shear.block(0, q, q, k) = x;
            shear_inv.block(0, q, q, k) = -x;
            CHECK(mat_eq(shear * a * shear_inv, assemble_blocks(ms.model_q(), zeros(q, k), w, zeros(k, k))));

            const auto bc = complete_block_to_model(z, ms);
            CHECK(mat_eq(bc.a, a));
            CHECK(is_similar_to_model(bc.a, ms));
        }
    }
}

TEST_CASE("perturbing conjugator") {
    SUBCASE("diagonal input uses the shear") {
        const RatMat t = diagonal({Rational(1), Rational(2)});
        const RatMat r = perturbing_conjugator(t);
        CHECK(mat_eq(r, make_matrix({{1, 1}, {0, 1}})));
        const RatMat diff = conjugate(t, r) - t;
        CHECK(diff(0, 1) == Rational(1));  // t22 - t11
        CHECK_FALSE(is_diagonal(diff));
    }
    SUBCASE("off-diagonal corner uses the scaling") {
        const RatMat t = make_matrix({{0, 3}, {0, 0}});
        const RatMat r = perturbing_conjugator(t);
        CHECK(mat_eq(r, diagonal({Rational(1), Rational(2)})));
        CHECK_FALSE(is_diagonal(conjugate(t, r) - t));
    }
    SUBCASE("contract") {
        CHECK_THROWS_AS(perturbing_conjugator(identity(3)), ContractError);
        CHECK_THROWS_AS(perturbing_conjugator(make_matrix({{2}})), ContractError);
    }
    SUBCASE("randomized") {
        Rng rng(59);
        for (int iter = 0; iter < 200; ++iter) {
            const index_t q = 2 + static_cast<index_t>(rng() % 4);
            const RatMat t = testgen::random_nonscalar(rng, q, 5);
            const RatMat r = perturbing_conjugator(t);
            CHECK_FALSE(is_diagonal(conjugate(t, r) - t));
        }
    }
}

TEST_CASE("prescribed diagonal") {
    SUBCASE("already in shape") {
        const RatMat b = make_matrix({{0, 1}, {1, 0}});
        const auto pd = prescribe_diagonal(b, {Rational(0), Rational(0)});
        CHECK(mat_eq(pd.s, identity(2)));
        CHECK(mat_eq(pd.c, b));
    }
    SUBCASE("worked 2x2 example") {
        const RatMat b = diagonal({Rational(1), Rational(-1)});
        const auto pd = prescribe_diagonal(b, {Rational(0), Rational(0)});
        CHECK(mat_eq(pd.c, make_matrix({{0, 1}, {1, 0}})));
        CHECK(mat_eq(pd.s * b * inverse(pd.s), pd.c));
    }
    SUBCASE("contract") {
        CHECK_THROWS_WITH_AS(prescribe_diagonal(make_matrix({{3}}), {Rational(3)}),
                             doctest::Contains("1x1"), ContractError);
        CHECK_THROWS_AS(prescribe_diagonal(identity(2), {Rational(1), Rational(1)}), ContractError);
        CHECK_THROWS_WITH_AS(
            prescribe_diagonal(make_matrix({{0, 1}, {1, 0}}), {Rational(1), Rational(2)}),
            doctest::Contains("3"), ContractError);  // reports both the sum and the trace
    }
    SUBCASE("split-diagonal inputs go through the rank-one update") {
        // diag(mu1, lambda, lambda) shapes; the trailing block starts scalar.
        const RatMat b = diagonal({Rational(2), Rational(1), Rational(1)});
        for (const auto& mus : std::vector<std::vector<Rational>>{
                 {Rational(2), Rational(0), Rational(2)},
                 {Rational(2), Rational(1), Rational(1)},
                 {Rational(4), Rational(-1), Rational(1)}}) {
            const auto pd = prescribe_diagonal(b, mus);
            CHECK(mat_eq(pd.s * b * inverse(pd.s), pd.c));
            for (index_t i = 0; i < 3; ++i) CHECK(pd.c(i, i) == mus[static_cast<std::size_t>(i)]);
        }
    }
    SUBCASE("randomized: diagonal matches entrywise, trace and similarity preserved") {
        Rng rng(61);
        for (int iter = 0; iter < 300; ++iter) {
            const index_t k = 2 + static_cast<index_t>(rng() % 9);  // up to 10
            const RatMat b = testgen::random_nonscalar(rng, k, 6);
            const auto mus = testgen::random_targets_with_sum(rng, k, trace(b));
            const auto pd = prescribe_diagonal(b, mus);
            CHECK(mat_eq(pd.s * b * inverse(pd.s), pd.c));
            for (index_t i = 0; i < k; ++i) CHECK(pd.c(i, i) == mus[static_cast<std::size_t>(i)]);
            CHECK(trace(pd.c) == trace(b));
        }
    }
}

TEST_CASE("nonscalar pair scan") {
    CHECK_FALSE(find_nonscalar_pair(identity(3)).has_value());
    const auto p = find_nonscalar_pair(diagonal({Rational(5), Rational(5), Rational(7)}));
    REQUIRE(p.has_value());
    CHECK(p->first == 0);
    CHECK(p->second == 2);
}
