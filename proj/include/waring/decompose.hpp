// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "waring/constructions.hpp"
#include "waring/matrix.hpp"

namespace waring {

/// Nonzero alpha_1, alpha_2, alpha_3 with alpha_1 + alpha_2 + alpha_3 = 0.
class Coefficients {
public:
    Coefficients(Rational a1, Rational a2, Rational a3)
        : alphas_{std::move(a1), std::move(a2), std::move(a3)} {
        for (int i = 0; i < 3; ++i)
            if (alphas_[static_cast<std::size_t>(i)].is_zero())
                throw ContractError("coefficient alpha_" + std::to_string(i + 1) + " is zero");
        const Rational sum = alphas_[0] + alphas_[1] + alphas_[2];
        if (!sum.is_zero())
            throw ContractError("coefficients must sum to zero, got " + sum.str());
    }

    const Rational& alpha(int i) const { return alphas_[static_cast<std::size_t>(i)]; }  // 0-based
    const std::array<Rational, 3>& alphas() const { return alphas_; }

private:
    std::array<Rational, 3> alphas_;
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckReport {
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string detail = "") {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const Check* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }
};

/// Full output record of a decomposition T = a1 A1 + a2 A2 + a3 A3 with
/// every A_i similar to the model via the stored witness S_i.
struct Decomposition {
    ModelSpectrum spec;
    Coefficients coeffs;
    RatMat t;
    std::array<RatMat, 3> a;
    std::array<RatMat, 3> witnesses;
    CheckReport report;
};

/// Decomposes a trace-zero T exactly; the returned record has been
/// re-verified (all invariants checked before returning).
Decomposition decompose(const RatMat& t, const ModelSpectrum& spec, const Coefficients& coeffs);

/// All exact checks over raw record pieces. Never throws for semantic
/// failures; every problem becomes a report row. Shared by the in-memory
/// verify and the JSON-schema verify.
CheckReport run_decomposition_checks(index_t n, const std::vector<Rational>& lambdas,
                                     const std::array<Rational, 3>& alphas, const RatMat& t,
                                     const std::array<RatMat, 3>& a, const std::array<RatMat, 3>& witnesses);

CheckReport verify(const Decomposition& d);

/// Certificate that T = I - nE is not a two-term combination: the rank of
/// I - a1 A1 is at least n-1 while the rank of a2 A2 + nE is at most q+1,
/// and q+1 < n-1.
struct ObstructionReport {
    index_t n = 0;
    index_t q = 0;
    index_t rank_identity_side = 0;  // rank(I - a1 A1), >= n-1
    index_t rank_shifted_side = 0;   // rank(a2 A2 + nE), <= q+1
    bool strict_gap = false;         // q+1 < n-1
    bool combination_differs = false;  // a1 A1 + a2 A2 != I - nE
};

/// Checks the impossibility certificate for matrices A1, A2 similar to the
/// model and arbitrary scalars a1, a2. Requires n >= 6 and n/2 <= q < n-2.
ObstructionReport two_term_obstruction(const ModelSpectrum& spec, const Rational& alpha1,
                                       const Rational& alpha2, const RatMat& a1, const RatMat& a2);

}  // namespace waring
