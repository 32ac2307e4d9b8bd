// SPDX-License-Identifier: Apache-2.0
#include "waring/json_io.hpp"

#include <string>

namespace waring {

json matrix_to_json(const RatMat& a) {
    json rows = json::array();
    for (index_t i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (index_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    const auto rows = static_cast<index_t>(j.size());
    if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix rows must be nonempty arrays");
    const auto cols = static_cast<index_t>(j[0].size());
    RatMat a(rows, cols);
    for (index_t i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<index_t>(row.size()) != cols)
            throw ParseError("row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                             " entries, expected " + std::to_string(cols));
        for (index_t k = 0; k < cols; ++k) {
            const auto& cell = row[static_cast<std::size_t>(k)];
            if (!cell.is_string())
                throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(k) +
                                 ") must be a scalar string like \"3/4\"");
            a(i, k) = Rational::parse(cell.get<std::string>());
        }
    }
    return a;
}

json report_to_json(const CheckReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        json row{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) row["detail"] = c.detail;
        checks.push_back(std::move(row));
    }
    return checks;
}

namespace {

json scalars_to_json(const std::vector<Rational>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(x.str());
    return out;
}

std::vector<Rational> scalars_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of scalar strings");
    std::vector<Rational> out;
    for (const auto& cell : j) {
        if (!cell.is_string()) throw ParseError(std::string(what) + " entries must be scalar strings");
        out.push_back(Rational::parse(cell.get<std::string>()));
    }
    return out;
}

const json& field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

}  // namespace

json decomposition_to_json(const Decomposition& d) {
    return json{{"n", d.spec.n()},
                {"q", d.spec.q()},
                {"lambdas", scalars_to_json(d.spec.lambdas())},
                {"alphas", json::array({d.coeffs.alpha(0).str(), d.coeffs.alpha(1).str(), d.coeffs.alpha(2).str()})},
                {"T", matrix_to_json(d.t)},
                {"A1", matrix_to_json(d.a[0])},
                {"A2", matrix_to_json(d.a[1])},
                {"A3", matrix_to_json(d.a[2])},
                {"S1", matrix_to_json(d.witnesses[0])},
                {"S2", matrix_to_json(d.witnesses[1])},
                {"S3", matrix_to_json(d.witnesses[2])},
                {"report", report_to_json(d.report)}};
}

Decomposition decomposition_from_json(const json& j) {
    const auto n = field(j, "n").get<index_t>();
    auto lambdas = scalars_from_json(field(j, "lambdas"), "lambdas");
    const auto alphas = scalars_from_json(field(j, "alphas"), "alphas");
    if (alphas.size() != 3) throw ParseError("alphas must hold exactly three scalars");
    Decomposition d{ModelSpectrum(n, std::move(lambdas)),
                    Coefficients(alphas[0], alphas[1], alphas[2]),
                    matrix_from_json(field(j, "T")),
                    {matrix_from_json(field(j, "A1")), matrix_from_json(field(j, "A2")),
                     matrix_from_json(field(j, "A3"))},
                    {matrix_from_json(field(j, "S1")), matrix_from_json(field(j, "S2")),
                     matrix_from_json(field(j, "S3"))},
                    {}};
    d.report = verify(d);
    return d;
}

CheckReport verify_decomposition_json(const json& j) {
    CheckReport report;
    index_t n = 0;
    std::vector<Rational> lambdas;
    std::array<Rational, 3> alphas{Rational(0), Rational(0), Rational(0)};
    RatMat t;
    std::array<RatMat, 3> a;
    std::array<RatMat, 3> witnesses;
    index_t declared_q = -1;
    try {
        n = field(j, "n").get<index_t>();
        declared_q = field(j, "q").get<index_t>();
        lambdas = scalars_from_json(field(j, "lambdas"), "lambdas");
        const auto alpha_list = scalars_from_json(field(j, "alphas"), "alphas");
        if (alpha_list.size() != 3) throw ParseError("alphas must hold exactly three scalars");
        for (std::size_t i = 0; i < 3; ++i) alphas[i] = alpha_list[i];
        t = matrix_from_json(field(j, "T"));
        a = {matrix_from_json(field(j, "A1")), matrix_from_json(field(j, "A2")),
             matrix_from_json(field(j, "A3"))};
        witnesses = {matrix_from_json(field(j, "S1")), matrix_from_json(field(j, "S2")),
                     matrix_from_json(field(j, "S3"))};
    } catch (const Error& e) {
        report.add("schema", false, e.what());
        return report;
    }
    report.add("schema", true);
    report.add("q-consistent", declared_q == static_cast<index_t>(lambdas.size()),
               declared_q == static_cast<index_t>(lambdas.size())
                   ? ""
                   : "q = " + std::to_string(declared_q) + " but lambdas holds " +
                         std::to_string(lambdas.size()) + " entries");

    CheckReport core = run_decomposition_checks(n, lambdas, alphas, t, a, witnesses);
    for (auto& c : core.checks) report.checks.push_back(std::move(c));

    // Pipeline outputs: re-evaluate each tuple against its summand.
    if (j.contains("f") && j.contains("tuples")) {
        try {
            const NcPolynomial f = NcPolynomial::parse(field(j, "f").get<std::string>());
            const json& tuples = field(j, "tuples");
            if (!tuples.is_array() || tuples.size() != 3) throw ParseError("tuples must hold three tuples");
            for (std::size_t i = 0; i < 3; ++i) {
                std::vector<RatMat> tuple;
                for (const auto& m : tuples[i]) tuple.push_back(matrix_from_json(m));
                const bool ok = mat_eq(f.evaluate(tuple), a[i]);
                report.add("tuple-A" + std::to_string(i + 1), ok,
                           ok ? "" : "evaluate(f, tuple) != A" + std::to_string(i + 1));
            }
        } catch (const Error& e) {
            report.add("tuples", false, e.what());
        }
    }
    return report;
}

json obstruction_to_json(const ObstructionReport& r, const ModelSpectrum& spec, const Rational& alpha1,
                         const Rational& alpha2) {
    return json{{"n", r.n},
                {"q", r.q},
                {"lambdas", scalars_to_json(spec.lambdas())},
                {"alpha1", alpha1.str()},
                {"alpha2", alpha2.str()},
                {"rank_identity_side", r.rank_identity_side},
                {"rank_shifted_side", r.rank_shifted_side},
                {"q_plus_1", r.q + 1},
                {"n_minus_1", r.n - 1},
                {"strict_gap", r.strict_gap},
                {"combination_differs", r.combination_differs}};
}

json waring_result_to_json(const PolynomialWaring& r, std::uint64_t budget, std::uint64_t seed) {
    json out = decomposition_to_json(r.decomposition);
    out["f"] = r.witness.f.str();
    out["p"] = r.prime.p;
    out["budget"] = budget;
    out["seed"] = seed;
    json args = json::array();
    for (const auto& m : r.witness.args) args.push_back(matrix_to_json(m));
    out["witness"] = json{{"args", std::move(args)},
                          {"value", matrix_to_json(r.witness.value)},
                          {"spectrum", scalars_to_json(r.witness.spectrum)}};
    json tuples = json::array();
    for (const auto& tuple : r.tuples) {
        json list = json::array();
        for (const auto& m : tuple) list.push_back(matrix_to_json(m));
        tuples.push_back(std::move(list));
    }
    out["tuples"] = std::move(tuples);
    return out;
}

}  // namespace waring
