// SPDX-License-Identifier: Apache-2.0
#include "waring/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace waring {

RatMat diagonal(const std::vector<Rational>& entries) {
    const auto n = static_cast<index_t>(entries.size());
    RatMat d = zeros(n, n);
    for (index_t i = 0; i < n; ++i) d(i, i) = entries[static_cast<std::size_t>(i)];
    return d;
}

RatMat make_matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    const auto r = static_cast<index_t>(rows.size());
    const auto c = r == 0 ? 0 : static_cast<index_t>(rows.begin()->size());
    RatMat m(r, c);
    index_t i = 0;
    for (const auto& row : rows) {
        if (static_cast<index_t>(row.size()) != c)
            throw ShapeError("ragged rows in matrix literal: row 0 has " + std::to_string(c) +
                             " entries, row " + std::to_string(i) + " has " + std::to_string(row.size()));
        index_t j = 0;
        for (const auto& x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

bool is_diagonal(const RatMat& a) {
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t j = 0; j < a.cols(); ++j)
            if (i != j && !a(i, j).is_zero()) return false;
    return true;
}

bool is_scalar_matrix(const RatMat& a) {
    if (a.rows() != a.cols()) return false;
    if (!is_diagonal(a)) return false;
    for (index_t i = 1; i < a.rows(); ++i)
        if (a(i, i) != a(0, 0)) return false;
    return true;
}

Rational trace(const RatMat& a) {
    if (a.rows() != a.cols())
        throw ShapeError("trace requires a square matrix, got " + shape_of(a));
    Rational t;
    for (index_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

RatMat mul(const RatMat& a, const RatMat& b) {
    if (a.cols() != b.rows())
        throw ShapeError("cannot multiply " + shape_of(a) + " by " + shape_of(b));
    return a * b;
}

RatMat add(const RatMat& a, const RatMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("cannot add " + shape_of(a) + " and " + shape_of(b));
    return a + b;
}

RatMat sub(const RatMat& a, const RatMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("cannot subtract " + shape_of(b) + " from " + shape_of(a));
    return a - b;
}

RrefResult rref(const RatMat& a) {
    RrefResult res;
    res.rref = a;
    res.transform = identity(a.rows());
    RatMat& r = res.rref;
    RatMat& t = res.transform;
    index_t pivot_row = 0;
    for (index_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
        index_t found = -1;
        for (index_t row = pivot_row; row < a.rows(); ++row) {
            if (!r(row, col).is_zero()) {
                found = row;
                break;
            }
        }
        if (found < 0) continue;
        if (found != pivot_row) {
            r.row(pivot_row).swap(r.row(found));
            t.row(pivot_row).swap(t.row(found));
        }
        const Rational scale = r(pivot_row, col).inv();
        r.row(pivot_row) *= scale;
        t.row(pivot_row) *= scale;
        for (index_t row = 0; row < a.rows(); ++row) {
            if (row == pivot_row || r(row, col).is_zero()) continue;
            const Rational factor = r(row, col);
            r.row(row) -= factor * r.row(pivot_row);
            t.row(row) -= factor * t.row(pivot_row);
        }
        ++pivot_row;
    }
    res.rank = pivot_row;
    return res;
}

index_t rank(const RatMat& a) { return rref(a).rank; }

namespace {

// Clears denominators, divides by the content, and makes the first nonzero
// entry positive.
RatVec primitive_form(const RatVec& v) {
    Integer denom_lcm(1);
    for (index_t i = 0; i < v.rows(); ++i) {
        Integer den = v(i).denominator();
        mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<Integer> scaled(static_cast<std::size_t>(v.rows()));
    Integer content(0);
    for (index_t i = 0; i < v.rows(); ++i) {
        Rational value = v(i) * Rational(denom_lcm);
        scaled[static_cast<std::size_t>(i)] = value.numerator();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled[static_cast<std::size_t>(i)].get_mpz_t());
    }
    if (sgn(content) == 0) return v;
    int lead_sign = 0;
    for (const auto& x : scaled) {
        if (sgn(x) != 0) {
            lead_sign = sgn(x);
            break;
        }
    }
    if (lead_sign < 0) content = -content;
    RatVec out(v.rows());
    for (index_t i = 0; i < v.rows(); ++i)
        out(i) = Rational(Integer(scaled[static_cast<std::size_t>(i)] / content));
    return out;
}

}  // namespace

std::vector<RatVec> kernel_basis(const RatMat& a) {
    const RrefResult rr = rref(a);
    std::vector<index_t> pivot_col;
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (index_t row = 0; row < rr.rank; ++row) {
        for (index_t col = 0; col < a.cols(); ++col) {
            if (!rr.rref(row, col).is_zero()) {
                pivot_col.push_back(col);
                is_pivot[static_cast<std::size_t>(col)] = true;
                break;
            }
        }
    }
    std::vector<RatVec> basis;
    for (index_t free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
        RatVec v = RatVec::Zero(a.cols());
        v(free_col) = Rational(1);
        for (index_t row = 0; row < rr.rank; ++row)
            v(pivot_col[static_cast<std::size_t>(row)]) = -rr.rref(row, free_col);
        basis.push_back(primitive_form(v));
    }
    return basis;
}

RatMat inverse(const RatMat& a) {
    if (a.rows() != a.cols())
        throw ShapeError("inverse requires a square matrix, got " + shape_of(a));
    const RrefResult rr = rref(a);
    if (rr.rank != a.rows())
        throw SingularMatrixError("matrix of rank " + std::to_string(rr.rank) + " (" + shape_of(a) +
                                  ") is not invertible");
    return rr.transform;
}

RatMat conjugate(const RatMat& a, const RatMat& s) {
    if (a.rows() != a.cols())
        throw ShapeError("conjugation requires a square matrix, got " + shape_of(a));
    if (s.rows() != a.rows() || s.cols() != a.cols())
        throw ShapeError("conjugator shape " + shape_of(s) + " does not match matrix shape " + shape_of(a));
    return s * a * inverse(s);
}

PermutationMap::PermutationMap(std::vector<index_t> images) : images_(std::move(images)) {
    const auto n = static_cast<index_t>(images_.size());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (index_t v : images_) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw ContractError("permutation images are not a bijection on {0,...," + std::to_string(n - 1) + "}");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

PermutationMap PermutationMap::identity(index_t n) {
    std::vector<index_t> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), index_t{0});
    return PermutationMap(std::move(im));
}

PermutationMap PermutationMap::transposition(index_t n, index_t i, index_t j) {
    auto p = identity(n);
    std::swap(p.images_[static_cast<std::size_t>(i)], p.images_[static_cast<std::size_t>(j)]);
    return p;
}

PermutationMap PermutationMap::inverse() const {
    std::vector<index_t> im(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        im[static_cast<std::size_t>(images_[i])] = static_cast<index_t>(i);
    return PermutationMap(std::move(im));
}

PermutationMap PermutationMap::after(const PermutationMap& other) const {
    if (size() != other.size())
        throw ShapeError("cannot compose permutations of sizes " + std::to_string(size()) + " and " +
                         std::to_string(other.size()));
    std::vector<index_t> im(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
        im[i] = images_[static_cast<std::size_t>(other.images_[i])];
    return PermutationMap(std::move(im));
}

RatMat PermutationMap::matrix() const {
    RatMat p = zeros(size(), size());
    for (index_t i = 0; i < size(); ++i) p((*this)(i), i) = Rational(1);
    return p;
}

RatMat permutation_conjugate(const RatMat& a, const PermutationMap& p) {
    if (a.rows() != a.cols())
        throw ShapeError("permutation conjugation requires a square matrix, got " + shape_of(a));
    if (p.size() != a.rows())
        throw ShapeError("permutation of size " + std::to_string(p.size()) + " does not match matrix shape " +
                         shape_of(a));
    const PermutationMap inv = p.inverse();
    RatMat out(a.rows(), a.cols());
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t j = 0; j < a.cols(); ++j) out(i, j) = a(inv(i), inv(j));
    return out;
}

namespace {

bool is_placeholder(const RatMat& m) { return m.rows() == 0 && m.cols() == 0; }

index_t resolve_band(index_t from_a, index_t from_b, bool a_real, bool b_real, const char* what) {
    if (a_real && b_real && from_a != from_b)
        throw ShapeError(std::string("inconsistent block ") + what + ": " + std::to_string(from_a) + " vs " +
                         std::to_string(from_b));
    if (a_real) return from_a;
    if (b_real) return from_b;
    return -1;  // undetermined
}

}  // namespace

RatMat assemble_blocks(const RatMat& a11, const RatMat& a12, const RatMat& a21, const RatMat& a22) {
    const bool r11 = !is_placeholder(a11), r12 = !is_placeholder(a12);
    const bool r21 = !is_placeholder(a21), r22 = !is_placeholder(a22);

    index_t top = resolve_band(a11.rows(), a12.rows(), r11, r12, "row heights");
    index_t bottom = resolve_band(a21.rows(), a22.rows(), r21, r22, "row heights");
    index_t left = resolve_band(a11.cols(), a21.cols(), r11, r21, "column widths");
    index_t right = resolve_band(a12.cols(), a22.cols(), r12, r22, "column widths");

    // Square fallback for a band made entirely of placeholders.
    if (top < 0 && bottom >= 0 && left >= 0 && right >= 0) top = left + right - bottom;
    if (bottom < 0 && top >= 0 && left >= 0 && right >= 0) bottom = left + right - top;
    if (left < 0 && right >= 0 && top >= 0 && bottom >= 0) left = top + bottom - right;
    if (right < 0 && left >= 0 && top >= 0 && bottom >= 0) right = top + bottom - left;
    if (top < 0 || bottom < 0 || left < 0 || right < 0)
        throw ShapeError("block grid is underdetermined; zero blocks could not be sized");

    RatMat out = zeros(top + bottom, left + right);
    const auto place = [&](const RatMat& block, bool real, index_t r0, index_t c0, index_t rows, index_t cols) {
        if (!real) return;
        if (block.rows() != rows || block.cols() != cols)
            throw ShapeError("block of shape " + shape_of(block) + " does not fit band of shape " +
                             std::to_string(rows) + "x" + std::to_string(cols));
        out.block(r0, c0, rows, cols) = block;
    };
    place(a11, r11, 0, 0, top, left);
    place(a12, r12, 0, left, top, right);
    place(a21, r21, top, 0, bottom, left);
    place(a22, r22, top, left, bottom, right);
    return out;
}

RatMat extract_block(const RatMat& a, index_t row0, index_t rows, index_t col0, index_t cols) {
    if (row0 < 0 || col0 < 0 || rows < 0 || cols < 0 || row0 + rows > a.rows() || col0 + cols > a.cols())
        throw ShapeError("block [" + std::to_string(row0) + "+" + std::to_string(rows) + ", " +
                         std::to_string(col0) + "+" + std::to_string(cols) + "] out of range for " + shape_of(a));
    return a.block(row0, col0, rows, cols);
}

std::string to_string(const RatMat& a) {
    std::ostringstream os;
    os << "[";
    for (index_t i = 0; i < a.rows(); ++i) {
        os << (i == 0 ? "[" : " [");
        for (index_t j = 0; j < a.cols(); ++j) os << (j == 0 ? "" : ", ") << a(i, j);
        os << "]" << (i + 1 == a.rows() ? "" : "\n");
    }
    os << "]";
    return os.str();
}

}  // namespace waring
