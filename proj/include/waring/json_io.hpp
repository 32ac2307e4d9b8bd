// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "waring/decompose.hpp"
#include "waring/pipeline.hpp"

namespace waring {

using json = nlohmann::json;

/// Matrices travel as arrays of rows of scalar strings ("p/q").
json matrix_to_json(const RatMat& a);
RatMat matrix_from_json(const json& j);

json report_to_json(const CheckReport& report);

/// Top-level object with "n", "q", "lambdas", "alphas", "T", "A1".."A3",
/// "S1".."S3", and "report".
json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const json& j);

/// Schema-only verification: re-parses every field from the JSON document
/// and re-runs all exact checks, with the schema itself as the first check
/// row. Optional "f"/"tuples" fields (from the polynomial pipeline) are
/// re-evaluated when present. Never throws on semantic failures.
CheckReport verify_decomposition_json(const json& j);

json obstruction_to_json(const ObstructionReport& r, const ModelSpectrum& spec, const Rational& alpha1,
                         const Rational& alpha2);

/// Decomposition fields at the top level plus "f", "p", "witness" and
/// "tuples"; the output stays verifiable by verify_decomposition_json.
json waring_result_to_json(const PolynomialWaring& r, std::uint64_t budget, std::uint64_t seed);

}  // namespace waring
