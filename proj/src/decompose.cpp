// SPDX-License-Identifier: Apache-2.0
#include "waring/decompose.hpp"

#include <utility>

namespace waring {

namespace {

// Permutation sending i -> n-2 and j -> n-1, other indices keeping order.
PermutationMap move_pair_to_corner(index_t n, index_t i, index_t j) {
    std::vector<index_t> images(static_cast<std::size_t>(n));
    images[static_cast<std::size_t>(i)] = n - 2;
    images[static_cast<std::size_t>(j)] = n - 1;
    index_t next = 0;
    for (index_t t = 0; t < n; ++t) {
        if (t == i || t == j) continue;
        images[static_cast<std::size_t>(t)] = next++;
    }
    return PermutationMap(std::move(images));
}

Decomposition finish(ModelSpectrum spec, Coefficients coeffs, RatMat t, std::array<RatMat, 3> a,
                     std::array<RatMat, 3> witnesses) {
    Decomposition d{std::move(spec), std::move(coeffs), std::move(t), std::move(a), std::move(witnesses), {}};
    d.report = verify(d);
    if (!d.report.all_pass())
        throw VerificationError("internal re-check failed: " + d.report.first_failure()->name +
                                (d.report.first_failure()->detail.empty()
                                     ? ""
                                     : " (" + d.report.first_failure()->detail + ")"));
    return d;
}

// n = 2 closed form. Reduces D = diag(l1, l2) to diag(1, 0) via
// D = (l1 - l2) P + l2 I, realizes the prescribed-diagonal shape, and reads
// off the three rank-one idempotents.
Decomposition decompose_2x2(const RatMat& t, const ModelSpectrum& spec, const Coefficients& coeffs) {
    const Rational l1 = spec.lambdas()[0];
    const Rational l2 = spec.q() == 2 ? spec.lambdas()[1] : Rational(0);
    const Rational gap = l1 - l2;  // nonzero: l1 != 0 and the lambdas are distinct

    const Rational b1 = coeffs.alpha(0) * gap;
    const Rational b2 = coeffs.alpha(1) * gap;
    const Rational b3 = coeffs.alpha(2) * gap;
    const Rational half_sum = (b1 + b2) / Rational(2);

    const auto pd = prescribe_diagonal(t, {(b1 - b2) / Rational(2), (b2 - b1) / Rational(2)});
    const Rational gamma = pd.c(0, 1);
    const Rational delta = pd.c(1, 0);
    const Rational a_coef = (gamma + half_sum) / b1;
    const Rational b_coef = (delta + half_sum) / b2;

    const Rational half(1, 2);
    const std::array<RatMat, 3> idempotents{
        make_matrix({{1, a_coef}, {0, 0}}),
        make_matrix({{0, 0}, {b_coef, 1}}),
        make_matrix({{half, half}, {half, half}}),
    };
    if (!mat_eq(b1 * idempotents[0] + b2 * idempotents[1] + b3 * idempotents[2], pd.c))
        throw VerificationError("closed-form identity failed in the 2x2 case");

    const RatMat s_inv = inverse(pd.s);
    std::array<RatMat, 3> a;
    std::array<RatMat, 3> witnesses;
    for (int i = 0; i < 3; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        a[idx] = s_inv * (gap * idempotents[idx] + l2 * identity(2)) * pd.s;
        witnesses[idx] = diagonalize_with_spectrum(a[idx], spec).matrix();
    }
    return finish(spec, coeffs, t, std::move(a), std::move(witnesses));
}

Decomposition decompose_general(const RatMat& t, const ModelSpectrum& spec, const Coefficients& coeffs) {
    const index_t n = spec.n();
    const index_t q = spec.q();
    const Rational a1 = coeffs.alpha(0), a2 = coeffs.alpha(1), a3 = coeffs.alpha(2);

    // Move a nonscalar 2x2 principal submatrix to the bottom-right corner.
    // One exists: T is nonzero with trace zero, hence nonscalar.
    const auto pair = find_nonscalar_pair(t);
    if (!pair) throw VerificationError("nonzero trace-zero matrix has no nonscalar 2x2 corner");
    const PermutationMap perm = move_pair_to_corner(n, pair->first, pair->second);
    const RatMat perm_mat = perm.matrix();
    const RatMat t_moved = permutation_conjugate(t, perm);

    const RatMat t1 = t_moved.block(0, 0, q, q);
    const RatMat t2 = t_moved.block(0, q, q, n - q);
    const RatMat t3 = t_moved.block(q, 0, n - q, q);
    const RatMat t4 = t_moved.block(q, q, n - q, n - q);

    // First summand: a matrix similar to the model whose lower-right block
    // is exactly T4 / a1, with a nonscalar upper-left block U.
    RatMat u, v, w, first, first_witness;
    if (q == n) {
        RatMat shear = identity(n);
        shear(0, 1) = Rational(1);  // model entries differ, so this conjugate is nonscalar
        first = conjugate(spec.model(), shear);
        first_witness = shear;
        u = first;
        v = zeros(q, 0);
        w = zeros(0, q);
    } else {
        const auto bc = complete_block_to_model(a1.inv() * t4, spec);
        u = bc.u;
        v = bc.v;
        w = bc.w;
        first = bc.a;
        first_witness = bc.witness.matrix();
    }

    // Keep S1 = T1 - a1 U nonscalar, perturbing U inside its similarity
    // class when needed.
    if (is_scalar_matrix(t1 - a1 * u)) {
        const RatMat r = perturbing_conjugator(u);
        RatMat r_full = identity(n);
        r_full.block(0, 0, q, q) = r;
        const RatMat r_inv = inverse(r);
        u = r * u * r_inv;
        v = r * v;
        w = w * r_inv;
        first = conjugate(first, r_full);
        first_witness = r_full * first_witness;
    }

    RatMat s1 = t1 - a1 * u;
    RatMat s2 = t2 - a1 * v;
    RatMat s3 = t3 - a1 * w;

    Rational lambda_sum;
    for (const auto& l : spec.lambdas()) lambda_sum += l;
    if (trace(s1) != -a1 * lambda_sum)
        throw VerificationError("S1 has the wrong trace");
    if (is_scalar_matrix(s1)) throw VerificationError("S1 is scalar after the perturbation step");

    // Prescribe the diagonal of S1 to be (-a1 l1, ..., -a1 lq).
    std::vector<Rational> targets;
    targets.reserve(static_cast<std::size_t>(q));
    for (const auto& l : spec.lambdas()) targets.push_back(-a1 * l);
    const auto pd = prescribe_diagonal(s1, targets);

    RatMat q_full = identity(n);
    q_full.block(0, 0, q, q) = pd.s;
    const RatMat pd_s_inv = inverse(pd.s);

    first = conjugate(first, q_full);
    first_witness = q_full * first_witness;
    s1 = pd.c;
    s2 = pd.s * s2;
    s3 = s3 * pd_s_inv;

    // Split S1 between the two triangular model shapes.
    RatMat lower = zeros(q, q);
    RatMat upper = zeros(q, q);
    const Rational a2_inv = a2.inv(), a3_inv = a3.inv();
    for (index_t i = 0; i < q; ++i) {
        lower(i, i) = spec.lambdas()[static_cast<std::size_t>(i)];
        upper(i, i) = spec.lambdas()[static_cast<std::size_t>(i)];
        for (index_t j = 0; j < i; ++j) lower(i, j) = a2_inv * s1(i, j);
        for (index_t j = i + 1; j < q; ++j) upper(i, j) = a3_inv * s1(i, j);
    }
    const RatMat second = assemble_blocks(lower, zeros(q, n - q), a2_inv * s3, zeros(n - q, n - q));
    const RatMat third = assemble_blocks(upper, a3_inv * s2, zeros(n - q, q), zeros(n - q, n - q));

    // Blockwise identity T'' - a1 A1 = a2 A2 + a3 A3 in the working basis.
    const RatMat remainder = assemble_blocks(s1, s2, s3, zeros(n - q, n - q));
    if (!mat_eq(a2 * second + a3 * third, remainder))
        throw VerificationError("triangular split does not reproduce the remainder");
    if (!mat_eq(conjugate(t_moved, q_full) - a1 * first, remainder))
        throw VerificationError("remainder does not match T - a1 A1");

    const RatMat second_witness = diagonalize_with_spectrum(second, spec).matrix();
    const RatMat third_witness = diagonalize_with_spectrum(third, spec).matrix();

    // Undo the global conjugation G = Q_full * P.
    const RatMat g = q_full * perm_mat;
    const RatMat g_inv = inverse(g);
    std::array<RatMat, 3> a{g_inv * first * g, g_inv * second * g, g_inv * third * g};
    std::array<RatMat, 3> witnesses{g_inv * first_witness, g_inv * second_witness, g_inv * third_witness};
    return finish(spec, coeffs, t, std::move(a), std::move(witnesses));
}

}  // namespace

Decomposition decompose(const RatMat& t, const ModelSpectrum& spec, const Coefficients& coeffs) {
    const index_t n = spec.n();
    if (t.rows() != n || t.cols() != n)
        throw ShapeError("matrix shape " + shape_of(t) + " does not match model size " + std::to_string(n));
    const Rational tr = trace(t);
    if (!tr.is_zero()) throw ContractError("matrix must have trace zero, got trace " + tr.str());

    if (is_zero_matrix(t)) {
        // alpha_1 + alpha_2 + alpha_3 = 0, so three copies of the model work.
        const RatMat d = spec.model();
        return finish(spec, coeffs, t, {d, d, d}, {identity(n), identity(n), identity(n)});
    }
    if (n == 2) return decompose_2x2(t, spec, coeffs);
    return decompose_general(t, spec, coeffs);
}

CheckReport run_decomposition_checks(index_t n, const std::vector<Rational>& lambdas,
                                     const std::array<Rational, 3>& alphas, const RatMat& t,
                                     const std::array<RatMat, 3>& a, const std::array<RatMat, 3>& witnesses) {
    CheckReport report;

    bool spectrum_ok = n >= 2 && !lambdas.empty() && static_cast<index_t>(lambdas.size()) <= n &&
                       2 * static_cast<index_t>(lambdas.size()) >= n;
    for (std::size_t i = 0; i < lambdas.size() && spectrum_ok; ++i) {
        if (lambdas[i].is_zero()) spectrum_ok = false;
        for (std::size_t j = i + 1; j < lambdas.size() && spectrum_ok; ++j)
            if (lambdas[i] == lambdas[j]) spectrum_ok = false;
    }
    report.add("spectrum-valid", spectrum_ok,
               spectrum_ok ? "" : "lambdas must be distinct, nonzero, with n/2 <= q <= n");

    const Rational alpha_sum = alphas[0] + alphas[1] + alphas[2];
    const bool coeff_ok =
        !alphas[0].is_zero() && !alphas[1].is_zero() && !alphas[2].is_zero() && alpha_sum.is_zero();
    report.add("coefficients-valid", coeff_ok,
               coeff_ok ? "" : "alphas must be nonzero and sum to zero (sum = " + alpha_sum.str() + ")");

    bool shapes_ok = t.rows() == n && t.cols() == n;
    for (const auto& m : a) shapes_ok = shapes_ok && m.rows() == n && m.cols() == n;
    for (const auto& s : witnesses) shapes_ok = shapes_ok && s.rows() == n && s.cols() == n;
    report.add("shapes", shapes_ok, shapes_ok ? "" : "all matrices must be n x n");
    if (!spectrum_ok || !shapes_ok) return report;

    const Rational tr = trace(t);
    report.add("trace-zero", tr.is_zero(), tr.is_zero() ? "" : "trace(T) = " + tr.str());

    const RatMat combo = alphas[0] * a[0] + alphas[1] * a[1] + alphas[2] * a[2];
    report.add("combination", mat_eq(combo, t),
               mat_eq(combo, t) ? "" : "alpha_1 A1 + alpha_2 A2 + alpha_3 A3 != T");

    RatMat model = zeros(n, n);
    for (std::size_t i = 0; i < lambdas.size(); ++i) model(static_cast<index_t>(i), static_cast<index_t>(i)) = lambdas[i];
    for (int i = 0; i < 3; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const std::string name = "witness-A" + std::to_string(i + 1);
        if (rank(witnesses[idx]) != n) {
            report.add(name, false, "S" + std::to_string(i + 1) + " is singular");
            continue;
        }
        const bool ok = mat_eq(a[idx] * witnesses[idx], witnesses[idx] * model);
        report.add(name, ok, ok ? "" : "A" + std::to_string(i + 1) + " != S D S^-1");
    }
    return report;
}

CheckReport verify(const Decomposition& d) {
    return run_decomposition_checks(d.spec.n(), d.spec.lambdas(), d.coeffs.alphas(), d.t, d.a, d.witnesses);
}

ObstructionReport two_term_obstruction(const ModelSpectrum& spec, const Rational& alpha1,
                                       const Rational& alpha2, const RatMat& a1, const RatMat& a2) {
    const index_t n = spec.n();
    const index_t q = spec.q();
    if (n < 6) throw ContractError("the obstruction needs n >= 6, got n = " + std::to_string(n));
    if (q >= n - 2)
        throw ContractError("the obstruction needs q < n-2, got q = " + std::to_string(q) + " for n = " +
                            std::to_string(n));
    if (!is_similar_to_model(a1, spec)) throw ContractError("A1 is not similar to the model");
    if (!is_similar_to_model(a2, spec)) throw ContractError("A2 is not similar to the model");

    RatMat e = zeros(n, n);
    e(0, 0) = Rational(1);
    const RatMat target = identity(n) - Rational(n) * e;  // trace zero

    ObstructionReport r;
    r.n = n;
    r.q = q;
    r.rank_identity_side = rank(identity(n) - alpha1 * a1);
    r.rank_shifted_side = rank(alpha2 * a2 + Rational(n) * e);
    r.strict_gap = q + 1 < n - 1;
    r.combination_differs = !mat_eq(alpha1 * a1 + alpha2 * a2, target);

    // All three facts are theorems for valid inputs.
    if (r.rank_identity_side < n - 1 || r.rank_shifted_side > q + 1 || !r.combination_differs)
        throw VerificationError("two-term obstruction bounds failed");
    return r;
}

}  // namespace waring
