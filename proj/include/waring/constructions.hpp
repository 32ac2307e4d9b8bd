// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "waring/matrix.hpp"

namespace waring {

/// The data (n, q, lambda_1..lambda_q) defining the diagonal model
/// D = diag(lambda_1, ..., lambda_q, 0, ..., 0) in size n.
///
/// Invariants, checked on construction: n >= 2, 1 <= q <= n, 2q >= n, and
/// the lambdas are pairwise distinct and nonzero.
class ModelSpectrum {
public:
    ModelSpectrum(index_t n, std::vector<Rational> lambdas) : n_(n), lambdas_(std::move(lambdas)) {
        const auto q = static_cast<index_t>(lambdas_.size());
        if (n_ < 2) throw ContractError("model size n must be at least 2, got " + std::to_string(n_));
        if (q < 1 || q > n_)
            throw ContractError("spectrum size q=" + std::to_string(q) + " must lie in [1, n] for n=" +
                                std::to_string(n_));
        if (2 * q < n_)
            throw ContractError("spectrum size q=" + std::to_string(q) + " violates 2q >= n for n=" +
                                std::to_string(n_));
        for (std::size_t i = 0; i < lambdas_.size(); ++i) {
            if (lambdas_[i].is_zero())
                throw ContractError("model eigenvalue lambda_" + std::to_string(i + 1) + " is zero");
            for (std::size_t j = i + 1; j < lambdas_.size(); ++j)
                if (lambdas_[i] == lambdas_[j])
                    throw ContractError("model eigenvalues lambda_" + std::to_string(i + 1) + " and lambda_" +
                                        std::to_string(j + 1) + " coincide (" + lambdas_[i].str() + ")");
        }
    }

    index_t n() const { return n_; }
    index_t q() const { return static_cast<index_t>(lambdas_.size()); }
    const std::vector<Rational>& lambdas() const { return lambdas_; }

    /// The embedded n x n model diag(lambda_1, ..., lambda_q, 0, ..., 0).
    RatMat model() const {
        RatMat d = zeros(n_, n_);
        for (index_t i = 0; i < q(); ++i) d(i, i) = lambdas_[static_cast<std::size_t>(i)];
        return d;
    }

    /// The q x q diagonal diag(lambda_1, ..., lambda_q).
    RatMat model_q() const { return diagonal(lambdas_); }

private:
    index_t n_;
    std::vector<Rational> lambdas_;
};

inline RatMat model_matrix(const ModelSpectrum& spec) { return spec.model(); }

/// An invertible S certifying A = S * D * S^-1 against a model spectrum.
/// The identity is checked exactly on construction.
class SimilarityWitness {
public:
    SimilarityWitness(RatMat s, const RatMat& a, const ModelSpectrum& spec);

    const RatMat& matrix() const { return s_; }
    const RatMat& inverse_matrix() const { return s_inv_; }

private:
    RatMat s_;
    RatMat s_inv_;
};

/// Kernel-dimension certificate of similarity to the model:
/// rank(A - lambda_i I) = n-1 for every i and rank(A) = q. The eigenspace
/// dimensions then sum to n, which forces diagonalizability with exactly the
/// model's spectrum.
bool is_similar_to_model(const RatMat& a, const ModelSpectrum& spec);

/// Builds the witness column by column: one kernel vector of (A - lambda_i I)
/// per spectrum entry, in order, followed by a kernel basis of A.
/// Precondition failures report the offending rank.
SimilarityWitness diagonalize_with_spectrum(const RatMat& a, const ModelSpectrum& spec);

/// Factors a nonscalar k x k matrix Z (k >= 2) as Z = W * X with X
/// invertible and X * W not diagonal.
std::pair<RatMat, RatMat> factor_nonscalar_square(const RatMat& z);

/// Factors any k x k matrix Z as Z = W * X with W of shape k x l and X of
/// shape l x k, l > k, such that the l x l product X * W is not diagonal.
/// W = [Z | Y] with Y the k x (l-k) matrix with a single 1 in its top-left
/// corner, X = [I_k; 0].
std::pair<RatMat, RatMat> factor_rectangular(const RatMat& z, index_t l);

/// Result of completing a lower-right block Z to a full matrix similar to
/// the model: A = [[U, V], [W, Z]] with U nonscalar.
struct BlockCompletion {
    RatMat u;
    RatMat v;
    RatMat w;
    RatMat a;
    SimilarityWitness witness;
};

/// Completes an (n-q) x (n-q) block Z to an n x n matrix similar to the
/// model. Requires n >= 3 and q < n; when n = 2q the block Z must be
/// nonscalar.
BlockCompletion complete_block_to_model(const RatMat& z, const ModelSpectrum& spec);

/// For nonscalar T (q >= 2) returns an invertible R such that
/// R * T * R^-1 - T is not diagonal.
RatMat perturbing_conjugator(const RatMat& t);

/// C = S * B * S^-1 with the diagonal of C prescribed exactly.
struct PrescribedDiagonal {
    RatMat s;
    RatMat c;
};

/// Conjugates a nonscalar B so that the diagonal becomes mus entrywise, in
/// order. Requires sum(mus) = trace(B) exactly.
PrescribedDiagonal prescribe_diagonal(const RatMat& b, const std::vector<Rational>& mus);

/// First index pair {i, j} (lexicographic) whose 2x2 principal submatrix is
/// nonscalar; empty for scalar matrices.
std::optional<std::pair<index_t, index_t>> find_nonscalar_pair(const RatMat& a);

}  // namespace waring
