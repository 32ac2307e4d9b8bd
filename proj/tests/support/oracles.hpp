// SPDX-License-Identifier: Apache-2.0
//
// Independent oracles used to cross-check the library implementations.
// These deliberately take the slow, obviously-correct route and never call
// into the code paths they are checking.
#pragma once

#include "waring/matrix.hpp"

namespace waring::oracle {

/// Schoolbook triple loop, independent of Eigen's product kernels.
inline RatMat naive_mul(const RatMat& a, const RatMat& b) {
    RatMat out = zeros(a.rows(), b.cols());
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t j = 0; j < b.cols(); ++j)
            for (index_t k = 0; k < a.cols(); ++k) out(i, j) += a(i, k) * b(k, j);
    return out;
}

/// Laplace expansion along the first row.
inline Rational naive_det(const RatMat& a) {
    const index_t n = a.rows();
    if (n == 0) return Rational(1);
    if (n == 1) return a(0, 0);
    Rational det;
    for (index_t j = 0; j < n; ++j) {
        if (a(0, j).is_zero()) continue;
        RatMat minor(n - 1, n - 1);
        for (index_t r = 1; r < n; ++r) {
            index_t cc = 0;
            for (index_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = a(r, c);
            }
        }
        const Rational term = a(0, j) * naive_det(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

/// Rank as the largest k with a nonzero k x k minor. Exponential; fine for
/// the small matrices the tests feed it.
inline index_t minor_rank(const RatMat& a) {
    const index_t r = a.rows(), c = a.cols();
    auto has_nonzero_minor = [&](index_t k, auto&& self, std::vector<index_t> rows_sel,
                                 std::vector<index_t> cols_sel, index_t row_from, index_t col_from) -> bool {
        if (static_cast<index_t>(rows_sel.size()) == k && static_cast<index_t>(cols_sel.size()) == k) {
            RatMat m(k, k);
            for (index_t i = 0; i < k; ++i)
                for (index_t j = 0; j < k; ++j)
                    m(i, j) = a(rows_sel[static_cast<std::size_t>(i)], cols_sel[static_cast<std::size_t>(j)]);
            return !naive_det(m).is_zero();
        }
        if (static_cast<index_t>(rows_sel.size()) < k) {
            for (index_t i = row_from; i < r; ++i) {
                auto next = rows_sel;
                next.push_back(i);
                if (self(k, self, std::move(next), cols_sel, i + 1, col_from)) return true;
            }
            return false;
        }
        for (index_t j = col_from; j < c; ++j) {
            auto next = cols_sel;
            next.push_back(j);
            if (self(k, self, rows_sel, std::move(next), row_from, j + 1)) return true;
        }
        return false;
    };
    for (index_t k = std::min(r, c); k >= 1; --k)
        if (has_nonzero_minor(k, has_nonzero_minor, {}, {}, 0, 0)) return k;
    return 0;
}

}  // namespace waring::oracle
