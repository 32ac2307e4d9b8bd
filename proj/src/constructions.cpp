// SPDX-License-Identifier: Apache-2.0
#include "waring/constructions.hpp"

#include <string>

namespace waring {

namespace {

// Permutation sending i -> 0 and j -> 1, all other indices keeping their
// relative order.
PermutationMap move_pair_to_front(index_t n, index_t i, index_t j) {
    std::vector<index_t> images(static_cast<std::size_t>(n));
    images[static_cast<std::size_t>(i)] = 0;
    images[static_cast<std::size_t>(j)] = 1;
    index_t next = 2;
    for (index_t t = 0; t < n; ++t) {
        if (t == i || t == j) continue;
        images[static_cast<std::size_t>(t)] = next++;
    }
    return PermutationMap(std::move(images));
}

RatMat unit_shear_2x2() { return make_matrix({{1, 1}, {0, 1}}); }

}  // namespace

std::optional<std::pair<index_t, index_t>> find_nonscalar_pair(const RatMat& a) {
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t j = i + 1; j < a.cols(); ++j)
            if (!a(i, j).is_zero() || !a(j, i).is_zero() || a(i, i) != a(j, j))
                return std::make_pair(i, j);
    return std::nullopt;
}

SimilarityWitness::SimilarityWitness(RatMat s, const RatMat& a, const ModelSpectrum& spec) : s_(std::move(s)) {
    const index_t n = spec.n();
    if (s_.rows() != n || s_.cols() != n)
        throw ShapeError("witness shape " + shape_of(s_) + " does not match model size " + std::to_string(n));
    if (a.rows() != n || a.cols() != n)
        throw ShapeError("certified matrix shape " + shape_of(a) + " does not match model size " +
                         std::to_string(n));
    s_inv_ = inverse(s_);  // throws SingularMatrixError when not invertible
    if (!mat_eq(a * s_, s_ * spec.model()))
        throw VerificationError("similarity witness does not certify A = S * D * S^-1");
}

bool is_similar_to_model(const RatMat& a, const ModelSpectrum& spec) {
    const index_t n = spec.n();
    if (a.rows() != n || a.cols() != n) return false;
    if (rank(a) != spec.q()) return false;
    const RatMat id = identity(n);
    for (const Rational& lambda : spec.lambdas())
        if (rank(a - lambda * id) != n - 1) return false;
    return true;
}

SimilarityWitness diagonalize_with_spectrum(const RatMat& a, const ModelSpectrum& spec) {
    const index_t n = spec.n();
    if (a.rows() != n || a.cols() != n)
        throw ShapeError("matrix shape " + shape_of(a) + " does not match model size " + std::to_string(n));
    RatMat s(n, n);
    const RatMat id = identity(n);
    index_t col = 0;
    for (std::size_t i = 0; i < spec.lambdas().size(); ++i) {
        const Rational& lambda = spec.lambdas()[i];
        const auto eigenvectors = kernel_basis(a - lambda * id);
        if (eigenvectors.size() != 1)
            throw ContractError("eigenvalue lambda_" + std::to_string(i + 1) + " = " + lambda.str() +
                                " has eigenspace dimension " + std::to_string(eigenvectors.size()) +
                                "; rank(A - lambda I) = " + std::to_string(n - static_cast<index_t>(eigenvectors.size())) +
                                " instead of " + std::to_string(n - 1));
        s.col(col++) = eigenvectors.front();
    }
    const auto null_vectors = kernel_basis(a);
    if (static_cast<index_t>(null_vectors.size()) != n - spec.q())
        throw ContractError("kernel dimension is " + std::to_string(null_vectors.size()) + " instead of " +
                            std::to_string(n - spec.q()) + "; rank(A) = " +
                            std::to_string(n - static_cast<index_t>(null_vectors.size())) + " instead of q = " +
                            std::to_string(spec.q()));
    for (const auto& v : null_vectors) s.col(col++) = v;
    return SimilarityWitness(std::move(s), a, spec);
}

std::pair<RatMat, RatMat> factor_nonscalar_square(const RatMat& z) {
    const index_t k = z.rows();
    if (k != z.cols()) throw ShapeError("square factorization requires a square matrix, got " + shape_of(z));
    if (k < 2) throw ContractError("square factorization needs k >= 2, got k = " + std::to_string(k));
    if (is_scalar_matrix(z)) throw ContractError("square factorization requires a nonscalar matrix");

    RatMat x;
    if (!is_diagonal(z)) {
        x = identity(k);
    } else {
        // Distinct diagonal pair exists; bring it to the front and shear.
        const auto pair = find_nonscalar_pair(z);
        RatMat shear = identity(k);
        shear.block(0, 0, 2, 2) = unit_shear_2x2();
        x = shear * move_pair_to_front(k, pair->first, pair->second).matrix();
    }
    RatMat w = z * inverse(x);
    if (!mat_eq(w * x, z) || is_diagonal(x * w))
        throw VerificationError("square factorization postcondition failed");
    return {std::move(w), std::move(x)};
}

std::pair<RatMat, RatMat> factor_rectangular(const RatMat& z, index_t l) {
    const index_t k = z.rows();
    if (k != z.cols())
        throw ShapeError("rectangular factorization requires a square matrix, got " + shape_of(z));
    if (k < 1 || l <= k)
        throw ContractError("rectangular factorization needs l > k >= 1, got l = " + std::to_string(l) +
                            ", k = " + std::to_string(k));
    RatMat y = zeros(k, l - k);
    y(0, 0) = Rational(1);
    RatMat w(k, l);
    w << z, y;
    RatMat x = zeros(l, k);
    x.block(0, 0, k, k) = identity(k);
    return {std::move(w), std::move(x)};
}

BlockCompletion complete_block_to_model(const RatMat& z, const ModelSpectrum& spec) {
    const index_t n = spec.n();
    const index_t q = spec.q();
    const index_t k = n - q;
    if (n < 3) throw ContractError("block completion needs n >= 3, got n = " + std::to_string(n));
    if (q == n)
        throw ContractError("block completion is undefined for q = n; there is no lower-right block");
    if (z.rows() != k || z.cols() != k)
        throw ShapeError("block shape " + shape_of(z) + " does not match (n-q) x (n-q) = " +
                         std::to_string(k) + "x" + std::to_string(k));
    if (q == k && is_scalar_matrix(z))
        throw ContractError("for n = 2q the block must be nonscalar");

    auto [w, x] = (q > k) ? factor_rectangular(z, q) : factor_nonscalar_square(z);
    const RatMat xw = x * w;  // q x q, not diagonal
    const RatMat u = spec.model_q() - xw;
    const RatMat v = u * x + xw * x - x * z;
    const RatMat a = assemble_blocks(u, v, w, z);

    if (is_scalar_matrix(u)) throw VerificationError("block completion produced a scalar U");

    RatMat shear = identity(n);
    shear.block(0, q, q, k) = x;
    RatMat shear_inv = identity(n);
    shear_inv.block(0, q, q, k) = -x;

    const RatMat reduced = shear * a * shear_inv;
    const RatMat expected = assemble_blocks(spec.model_q(), zeros(q, k), w, zeros(k, k));
    if (!mat_eq(reduced, expected))
        throw VerificationError("block completion shear identity failed");

    SimilarityWitness triangular = diagonalize_with_spectrum(reduced, spec);
    SimilarityWitness witness(shear_inv * triangular.matrix(), a, spec);
    return {u, v, w, a, std::move(witness)};
}

RatMat perturbing_conjugator(const RatMat& t) {
    const index_t q = t.rows();
    if (q != t.cols()) throw ShapeError("perturbing conjugator requires a square matrix, got " + shape_of(t));
    if (q < 2 || is_scalar_matrix(t))
        throw ContractError("perturbing conjugator requires a nonscalar matrix of size >= 2");

    const auto pair = find_nonscalar_pair(t);
    const PermutationMap p = move_pair_to_front(q, pair->first, pair->second);
    const RatMat moved = permutation_conjugate(t, p);
    const RatMat corner = moved.block(0, 0, 2, 2);

    // Diagonal corner: shear, the (1,2) entry of the difference becomes
    // t22 - t11 != 0. Otherwise scale by diag(1,2), which scales the corner's
    // off-diagonal entries by 2 and 1/2.
    RatMat r2 = is_diagonal(corner) ? unit_shear_2x2() : diagonal({Rational(1), Rational(2)});
    RatMat r_front = identity(q);
    r_front.block(0, 0, 2, 2) = r2;

    const RatMat pm = p.matrix();
    const RatMat r = inverse(pm) * r_front * pm;
    if (is_diagonal(conjugate(t, r) - t))
        throw VerificationError("perturbing conjugator postcondition failed");
    return r;
}

namespace {

// Basis Q = [x, y, ...] such that Q^-1 * B * Q has (1,1)-entry mu1, where
// y = Bx - mu1 x and {x, Bx} is linearly independent.
RatMat corner_basis(const RatMat& b, const Rational& mu1) {
    const index_t k = b.rows();
    RatVec x = RatVec::Zero(k);
    bool found = false;
    for (index_t i = 0; i < k && !found; ++i) {
        for (index_t r = 0; r < k; ++r) {
            if (r != i && !b(r, i).is_zero()) {
                x(i) = Rational(1);
                found = true;
                break;
            }
        }
    }
    if (!found) {
        // B is diagonal; a pair of distinct diagonal entries exists.
        for (index_t i = 0; i < k && !found; ++i)
            for (index_t j = i + 1; j < k && !found; ++j)
                if (b(i, i) != b(j, j)) {
                    x(i) = Rational(1);
                    x(j) = Rational(1);
                    found = true;
                }
    }
    if (!found) throw VerificationError("corner step called with a scalar matrix");

    const RatVec y = b * x - mu1 * x;
    RatMat q(k, k);
    q.col(0) = x;
    q.col(1) = y;
    index_t cols = 2;
    for (index_t t = 0; t < k && cols < k; ++t) {
        q.col(cols) = RatVec::Zero(k);
        q(t, cols) = Rational(1);
        if (rank(q.leftCols(cols + 1)) == cols + 1) ++cols;
    }
    if (cols != k || rank(q) != k) throw VerificationError("corner step failed to build a basis");
    return q;
}

std::vector<Rational> tail(const std::vector<Rational>& mus) { return {mus.begin() + 1, mus.end()}; }

// Returns S with diag(S * B * S^-1) = mus, recursing on the trailing block.
RatMat realize_diagonal(const RatMat& b, const std::vector<Rational>& mus) {
    const index_t k = b.rows();
    const RatMat q = corner_basis(b, mus.front());
    RatMat s_acc = inverse(q);
    RatMat c = s_acc * b * q;
    if (k == 2) return s_acc;

    RatMat c1 = c.block(1, 1, k - 1, k - 1);
    if (is_scalar_matrix(c1)) {
        // The corner step writes Bx = mu1*x + 1*y, so the first column below
        // the diagonal is (1, 0, ..., 0) and never vanishes. A rank-one
        // update with a*v = 0, v*a != 0 turns the trailing block into
        // lambda I - v a, which is nonscalar.
        const RatMat v = c.block(1, 0, k - 1, 1);
        if (is_zero_matrix(v))
            throw VerificationError("corner step lost its unit subdiagonal coefficient");
        index_t t = 0;
        while (v(t, 0).is_zero()) ++t;
        const index_t s_idx = t == 0 ? 1 : 0;
        RatMat up = identity(k);
        up(0, 1 + s_idx) = v(t, 0);
        up(0, 1 + t) = -v(s_idx, 0);
        RatMat up_inv = identity(k);
        up_inv(0, 1 + s_idx) = -v(t, 0);
        up_inv(0, 1 + t) = v(s_idx, 0);
        c = up * c * up_inv;
        s_acc = up * s_acc;
        c1 = c.block(1, 1, k - 1, k - 1);
        if (is_scalar_matrix(c1))
            throw VerificationError("trailing block is still scalar after the rank-one update");
    }

    const RatMat s1 = realize_diagonal(c1, tail(mus));
    RatMat lift = identity(k);
    lift.block(1, 1, k - 1, k - 1) = s1;
    return lift * s_acc;
}

}  // namespace

PrescribedDiagonal prescribe_diagonal(const RatMat& b, const std::vector<Rational>& mus) {
    const index_t k = b.rows();
    if (k != b.cols())
        throw ShapeError("prescribed diagonal requires a square matrix, got " + shape_of(b));
    if (static_cast<index_t>(mus.size()) != k)
        throw ShapeError("expected " + std::to_string(k) + " target entries, got " + std::to_string(mus.size()));
    if (k == 1) throw ContractError("there are no nonscalar 1x1 matrices");
    if (is_scalar_matrix(b)) throw ContractError("prescribed diagonal requires a nonscalar matrix");

    Rational target_sum;
    for (const auto& mu : mus) target_sum += mu;
    const Rational tr = trace(b);
    if (target_sum != tr)
        throw ContractError("targets sum to " + target_sum.str() + " but the trace is " + tr.str());

    RatMat s = realize_diagonal(b, mus);
    RatMat c = s * b * inverse(s);
    for (index_t i = 0; i < k; ++i)
        if (c(i, i) != mus[static_cast<std::size_t>(i)])
            throw VerificationError("prescribed diagonal postcondition failed at entry " + std::to_string(i));
    return {std::move(s), std::move(c)};
}

}  // namespace waring
