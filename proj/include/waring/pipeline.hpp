// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "waring/decompose.hpp"
#include "waring/ncpoly.hpp"

namespace waring {

struct PrimeChoice {
    index_t n = 0;
    index_t p = 0;  // prime with n + 2 <= 2p and p <= n
};

/// Deterministic trial division; exact for the full 64-bit range used here.
bool is_prime(std::uint64_t m);

/// Largest prime p <= n with 2p >= n + 2. Exists for every n >= 2 by
/// Bertrand's postulate (verified, not assumed: absence is a hard error).
PrimeChoice select_prime(index_t n);

/// True iff deg(f) < 2p; then f is neither an identity nor central for the
/// p x p matrices (a classical fact this library relies on, not re-proves).
/// Rejects zero and constant polynomials.
bool degree_gate(const NcPolynomial& f, index_t p);

/// Monic characteristic polynomial, coefficients ascending: c[0] + c[1] x +
/// ... + c[n] x^n with c[n] = 1. Exact Faddeev-LeVerrier.
std::vector<Rational> char_poly(const RatMat& a);

/// The full list of eigenvalues when the characteristic polynomial splits
/// over Q with distinct roots, each certified by rank(A - r I) = n - 1;
/// nullopt otherwise. Roots are listed in discovery order: diagonal entries
/// of A first, then zero, then divisor-derived candidates.
std::optional<std::vector<Rational>> distinct_rational_spectrum(const RatMat& a);

/// Witness that the image of f on p x p matrices contains a matrix with p
/// distinct rational eigenvalues: evaluate(f, args) = value and value is
/// similar to diag(spectrum) over Q.
struct DiagonalWitness {
    NcPolynomial f;
    index_t p = 0;
    std::vector<RatMat> args;
    RatMat value;
    std::vector<Rational> spectrum;
};

/// Seeded randomized search for a DiagonalWitness. Structured candidates
/// (diagonal tuples, elementary pairs, companion-style targets) come first,
/// then random tuples with slowly growing entries. The budget bounds the
/// number of evaluations; identical (f, p, budget, seed) give identical
/// results for every thread count: the budget is split into indexed chunks
/// and the success with the smallest chunk index wins.
std::optional<DiagonalWitness> search_diagonal_witness(const NcPolynomial& f, index_t p,
                                                       std::uint64_t budget, std::uint64_t seed,
                                                       unsigned threads = 1);

/// Everything produced by the polynomial Waring pipeline: the prime, the
/// image witness, the decomposition of T, and for each A_i an argument
/// tuple with evaluate(f, tuples[i]) = A_i exactly.
struct PolynomialWaring {
    PrimeChoice prime;
    DiagonalWitness witness;
    Decomposition decomposition;
    std::array<std::vector<RatMat>, 3> tuples;
};

/// Runs the full pipeline for a trace-zero n x n matrix T and a nonconstant
/// polynomial f with n >= deg(f) - 1. Throws WitnessNotFoundError when the
/// search exhausts its budget (a limitation of the rational-spectrum search,
/// not a disproof).
PolynomialWaring waring_for_polynomial(const NcPolynomial& f, index_t n, const RatMat& t,
                                       const Coefficients& coeffs, std::uint64_t budget, std::uint64_t seed,
                                       unsigned threads = 1);

}  // namespace waring
