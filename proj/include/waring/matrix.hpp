// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <initializer_list>
#include <string>
#include <vector>

#include "waring/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<waring::Rational> : GenericNumTraits<waring::Rational> {
    typedef waring::Rational Real;
    typedef waring::Rational NonInteger;
    typedef waring::Rational Nested;
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 32,
        MulCost = 32
    };
};

}  // namespace Eigen

namespace waring {

using index_t = Eigen::Index;
using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline std::string shape_of(const RatMat& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

inline RatMat zeros(index_t rows, index_t cols) { return RatMat::Zero(rows, cols); }
inline RatMat identity(index_t n) { return RatMat::Identity(n, n); }

RatMat diagonal(const std::vector<Rational>& entries);

/// Row-major construction from nested lists, mostly for tests and fixtures.
RatMat make_matrix(std::initializer_list<std::initializer_list<Rational>> rows);

template <typename DerivedA, typename DerivedB>
bool mat_eq(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& a) {
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) return false;
    return true;
}

bool is_diagonal(const RatMat& a);
/// Square, diagonal, and all diagonal entries equal.
bool is_scalar_matrix(const RatMat& a);

Rational trace(const RatMat& a);

// Checked arithmetic. Eigen operators work directly on RatMat; these wrappers
// add the contract errors that name both shapes.
RatMat mul(const RatMat& a, const RatMat& b);
RatMat add(const RatMat& a, const RatMat& b);
RatMat sub(const RatMat& a, const RatMat& b);
inline RatMat scale(const Rational& c, const RatMat& a) { return c * a; }
inline RatMat transpose(const RatMat& a) { return a.transpose(); }

/// Reduced row echelon form with the full row transform.
/// `rref = transform * input` holds exactly and `transform` is invertible.
/// Pivot rule: first nonzero entry scanning top to bottom in each column.
struct RrefResult {
    RatMat rref;
    index_t rank = 0;
    RatMat transform;
};
RrefResult rref(const RatMat& a);

index_t rank(const RatMat& a);

/// Basis of the right kernel. Vectors are scaled to primitive integer form
/// (lowest common denominator cleared, gcd removed, first nonzero positive).
std::vector<RatVec> kernel_basis(const RatMat& a);

RatMat inverse(const RatMat& a);

/// S * A * S^-1. Throws SingularMatrixError when S is not invertible.
RatMat conjugate(const RatMat& a, const RatMat& s);

/// Bijection i -> images[i] on {0, ..., n-1}.
class PermutationMap {
public:
    explicit PermutationMap(std::vector<index_t> images);
    static PermutationMap identity(index_t n);
    static PermutationMap transposition(index_t n, index_t i, index_t j);

    index_t size() const { return static_cast<index_t>(images_.size()); }
    index_t operator()(index_t i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<index_t>& images() const { return images_; }

    PermutationMap inverse() const;
    /// Composition "this after other": result(i) = (*this)(other(i)).
    PermutationMap after(const PermutationMap& other) const;
    /// P with P * e_i = e_{images[i]}.
    RatMat matrix() const;

private:
    std::vector<index_t> images_;
};

/// P * A * P^-1 for the permutation matrix of p: entry (i, j) of the result
/// is entry (p^-1(i), p^-1(j)) of A. Permutes the diagonal as a multiset.
RatMat permutation_conjugate(const RatMat& a, const PermutationMap& p);

/// Assembles a 2x2 grid of blocks. A 0x0 block is a zero-block placeholder;
/// its band sizes are inferred from the other blocks in its row/column band,
/// falling back to whatever makes the result square when a whole band
/// consists of placeholders. Explicit 0-width/0-height blocks (e.g. qx0) are
/// honored as-is.
RatMat assemble_blocks(const RatMat& a11, const RatMat& a12, const RatMat& a21, const RatMat& a22);

RatMat extract_block(const RatMat& a, index_t row0, index_t rows, index_t col0, index_t cols);

std::string to_string(const RatMat& a);

}  // namespace waring
