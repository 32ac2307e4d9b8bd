// SPDX-License-Identifier: Apache-2.0
//
// waring: exact Waring-type decompositions of trace-zero rational matrices.
//
// Exit codes: 0 success, 2 witness search exhausted, 1 anything else.
// Errors are single machine-parsable lines on stderr: "error: <kind>: <msg>".
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "waring/json_io.hpp"

namespace {

using namespace waring;

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path);
    if (!in) throw IoError("cannot open \"" + path + "\" for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_all(path));
    } catch (const json::parse_error& e) {
        throw ParseError("invalid JSON in \"" + path + "\": " + e.what());
    }
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    out << text << "\n";
}

void write_json(const json& j, const std::string& path) { write_text(j.dump(2), path); }

std::vector<Rational> parse_scalar_list(const std::string& csv, const char* what) {
    std::vector<Rational> out;
    std::string item;
    std::istringstream stream(csv);
    while (std::getline(stream, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        const auto end = item.find_last_not_of(" \t");
        if (begin == std::string::npos) throw ParseError(std::string("empty entry in ") + what);
        out.push_back(Rational::parse(item.substr(begin, end - begin + 1)));
    }
    if (out.empty()) throw ParseError(std::string(what) + " must not be empty");
    return out;
}

Coefficients parse_alphas(const std::string& csv) {
    const auto list = parse_scalar_list(csv, "--alphas");
    if (list.size() != 3) throw ParseError("--alphas needs exactly three scalars, got " + std::to_string(list.size()));
    return Coefficients(list[0], list[1], list[2]);
}

void print_report(const CheckReport& report) {
    for (const auto& c : report.checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")")
                  << "\n";
}

void echo_config(const std::string& line) { std::cerr << "# config: " << line << "\n"; }

NcPolynomial load_polynomial(const std::string& text, const std::string& file) {
    if (!text.empty() && !file.empty()) throw ContractError("give the polynomial via --f or --f-file, not both");
    if (!text.empty()) return NcPolynomial::parse(text);
    if (!file.empty()) {
        std::string content = read_all(file);
        while (!content.empty() && (content.back() == '\n' || content.back() == '\r')) content.pop_back();
        return NcPolynomial::parse(content);
    }
    throw ContractError("a polynomial is required (--f or --f-file)");
}

// Deterministic invertible matrix for --seed-generated obstruction inputs:
// unit lower x unit upper with small entries.
RatMat seeded_invertible(std::mt19937_64& rng, index_t n) {
    RatMat lower = identity(n), upper = identity(n);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < i; ++j) {
            lower(i, j) = Rational(static_cast<long>(rng() % 7) - 3);
            upper(j, i) = Rational(static_cast<long>(rng() % 7) - 3);
        }
    return lower * upper;
}

int dispatch(CLI::App& app, int argc, char** argv);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Waring-type decompositions of trace-zero rational matrices"};
    app.require_subcommand(1);
    try {
        return dispatch(app, argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const WitnessNotFoundError& e) {
        std::cerr << "error: not-found: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: parse: " << e.what() << "\n";
    } catch (const ZeroPolynomialError& e) {
        std::cerr << "error: zero-polynomial: " << e.what() << "\n";
    } catch (const ShapeError& e) {
        std::cerr << "error: shape: " << e.what() << "\n";
    } catch (const SingularMatrixError& e) {
        std::cerr << "error: singular: " << e.what() << "\n";
    } catch (const DivisionByZeroError& e) {
        std::cerr << "error: division: " << e.what() << "\n";
    } catch (const VerificationError& e) {
        std::cerr << "error: verification: " << e.what() << "\n";
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
    } catch (const ContractError& e) {
        std::cerr << "error: contract: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
    }
    return 1;
}

namespace {

int dispatch(CLI::App& app, int argc, char** argv) {
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "extra progress output");

    // decompose ----------------------------------------------------------
    auto* cmd_decompose = app.add_subcommand("decompose", "write T as a1 A1 + a2 A2 + a3 A3");
    std::string dec_input, dec_lambdas, dec_alphas, dec_out = "-";
    cmd_decompose->add_option("--input", dec_input, "trace-zero matrix JSON (\"-\" for stdin)")->required();
    cmd_decompose->add_option("--lambdas", dec_lambdas, "model eigenvalues, e.g. \"1,2,3\"")->required();
    cmd_decompose->add_option("--alphas", dec_alphas, "three coefficients summing to zero")->required();
    cmd_decompose->add_option("--out", dec_out, "output path (default stdout)");

    // verify ---------------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "re-check a decomposition file");
    std::string ver_input;
    cmd_verify->add_option("--in,--input", ver_input, "decomposition JSON (\"-\" for stdin)")->required();

    // obstruction ----------------------------------------------------------
    auto* cmd_obstruction = app.add_subcommand("obstruction", "two-term impossibility certificate");
    index_t obs_n = 0, obs_q = 0;
    std::string obs_lambdas, obs_alpha1 = "1", obs_alpha2 = "1", obs_a1, obs_a2, obs_out;
    std::uint64_t obs_seed = 0, obs_trials = 1;
    cmd_obstruction->add_option("--n", obs_n, "matrix size (>= 6)")->required();
    cmd_obstruction->add_option("--q", obs_q, "model rank (n/2 <= q < n-2)")->required();
    cmd_obstruction->add_option("--lambdas", obs_lambdas, "model eigenvalues")->required();
    cmd_obstruction->add_option("--alpha1", obs_alpha1, "first scalar");
    cmd_obstruction->add_option("--alpha2", obs_alpha2, "second scalar");
    cmd_obstruction->add_option("--a1", obs_a1, "matrix JSON for A1 (default: generated from --seed)");
    cmd_obstruction->add_option("--a2", obs_a2, "matrix JSON for A2 (default: generated from --seed)");
    cmd_obstruction->add_option("--seed", obs_seed, "seed for generated conjugates");
    cmd_obstruction->add_option("--trials", obs_trials, "number of generated pairs");
    cmd_obstruction->add_option("--out", obs_out, "write the last report as JSON");

    // find-prime -----------------------------------------------------------
    auto* cmd_prime = app.add_subcommand("find-prime", "largest prime p <= n with 2p >= n+2");
    index_t prime_n = 0;
    cmd_prime->add_option("--n", prime_n, "matrix size (>= 2)")->required();

    // poly-eval ------------------------------------------------------------
    auto* cmd_eval = app.add_subcommand("poly-eval", "evaluate a polynomial on matrices");
    std::string eval_f, eval_f_file, eval_args, eval_out = "-";
    cmd_eval->add_option("--f", eval_f, "polynomial text, e.g. \"X1*X2-X2*X1\"");
    cmd_eval->add_option("--f-file", eval_f_file, "file holding the polynomial text");
    cmd_eval->add_option("--args", eval_args, "JSON array of matrices (\"-\" for stdin)")->required();
    cmd_eval->add_option("--out", eval_out, "output path (default stdout)");

    // search-witness ---------------------------------------------------------
    auto* cmd_search = app.add_subcommand("search-witness", "find an image value with distinct rational spectrum");
    std::string sw_f, sw_f_file, sw_out = "-";
    index_t sw_p = 0;
    std::uint64_t sw_budget = 10000, sw_seed = 0;
    unsigned sw_threads = 1;
    cmd_search->add_option("--f", sw_f, "polynomial text");
    cmd_search->add_option("--f-file", sw_f_file, "file holding the polynomial text");
    cmd_search->add_option("--p", sw_p, "prime matrix size")->required();
    cmd_search->add_option("--budget", sw_budget, "max evaluations");
    cmd_search->add_option("--seed", sw_seed, "search seed");
    cmd_search->add_option("--threads", sw_threads, "worker threads (result is thread-count independent)");
    cmd_search->add_option("--out", sw_out, "output path (default stdout)");

    // waring-poly ------------------------------------------------------------
    auto* cmd_waring = app.add_subcommand("waring-poly", "decompose T into image elements of f");
    std::string wp_f, wp_f_file, wp_input, wp_alphas, wp_out = "-";
    index_t wp_n = 0;
    std::uint64_t wp_budget = 10000, wp_seed = 0;
    unsigned wp_threads = 1;
    cmd_waring->add_option("--f", wp_f, "polynomial text");
    cmd_waring->add_option("--f-file", wp_f_file, "file holding the polynomial text");
    cmd_waring->add_option("--n", wp_n, "matrix size")->required();
    cmd_waring->add_option("--input", wp_input, "trace-zero matrix JSON (\"-\" for stdin)")->required();
    cmd_waring->add_option("--alphas", wp_alphas, "three coefficients summing to zero")->required();
    cmd_waring->add_option("--budget", wp_budget, "witness search budget");
    cmd_waring->add_option("--seed", wp_seed, "witness search seed");
    cmd_waring->add_option("--threads", wp_threads, "witness search threads");
    cmd_waring->add_option("--out", wp_out, "output path (default stdout)");

    // prescribe-diagonal (debugging aid) --------------------------------------
    auto* cmd_prescribe = app.add_subcommand("prescribe-diagonal", "conjugate B to prescribed diagonal entries");
    std::string pre_input, pre_mus, pre_out = "-";
    cmd_prescribe->add_option("--input", pre_input, "matrix JSON (\"-\" for stdin)")->required();
    cmd_prescribe->add_option("--mus", pre_mus, "target diagonal, e.g. \"0,0,1\"")->required();
    cmd_prescribe->add_option("--out", pre_out, "output path (default stdout)");

    // complete-block (debugging aid) -------------------------------------------
    auto* cmd_block = app.add_subcommand("complete-block", "complete a lower-right block to a model conjugate");
    std::string blk_input, blk_lambdas, blk_out = "-";
    index_t blk_n = 0;
    cmd_block->add_option("--input", blk_input, "block matrix JSON (\"-\" for stdin)")->required();
    cmd_block->add_option("--n", blk_n, "full matrix size")->required();
    cmd_block->add_option("--lambdas", blk_lambdas, "model eigenvalues")->required();
    cmd_block->add_option("--out", blk_out, "output path (default stdout)");

    app.parse(argc, argv);

    if (cmd_decompose->parsed()) {
        echo_config("decompose input=" + dec_input + " lambdas=" + dec_lambdas + " alphas=" + dec_alphas +
                    " out=" + dec_out);
        const RatMat t = matrix_from_json(read_json(dec_input));
        const ModelSpectrum spec(t.rows(), parse_scalar_list(dec_lambdas, "--lambdas"));
        const auto d = decompose(t, spec, parse_alphas(dec_alphas));
        print_report(d.report);
        write_json(decomposition_to_json(d), dec_out);
        return 0;
    }

    if (cmd_verify->parsed()) {
        echo_config("verify in=" + ver_input);
        const auto report = verify_decomposition_json(read_json(ver_input));
        print_report(report);
        if (!report.all_pass()) {
            std::cerr << "error: verification: check '" << report.first_failure()->name << "' failed\n";
            return 1;
        }
        return 0;
    }

    if (cmd_obstruction->parsed()) {
        echo_config("obstruction n=" + std::to_string(obs_n) + " q=" + std::to_string(obs_q) + " lambdas=" +
                    obs_lambdas + " alpha1=" + obs_alpha1 + " alpha2=" + obs_alpha2 +
                    " seed=" + std::to_string(obs_seed) + " trials=" + std::to_string(obs_trials));
        const auto lambdas = parse_scalar_list(obs_lambdas, "--lambdas");
        if (static_cast<index_t>(lambdas.size()) != obs_q)
            throw ContractError("--q = " + std::to_string(obs_q) + " but --lambdas holds " +
                                std::to_string(lambdas.size()) + " entries");
        const ModelSpectrum spec(obs_n, lambdas);
        const Rational alpha1 = Rational::parse(obs_alpha1);
        const Rational alpha2 = Rational::parse(obs_alpha2);
        const RatMat model = spec.model();

        std::mt19937_64 rng(obs_seed);
        json last;
        const std::uint64_t trials = (!obs_a1.empty() || !obs_a2.empty()) ? 1 : obs_trials;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            const RatMat a1 = obs_a1.empty() ? conjugate(model, seeded_invertible(rng, obs_n))
                                             : matrix_from_json(read_json(obs_a1));
            const RatMat a2 = obs_a2.empty() ? conjugate(model, seeded_invertible(rng, obs_n))
                                             : matrix_from_json(read_json(obs_a2));
            const auto report = two_term_obstruction(spec, alpha1, alpha2, a1, a2);
            std::cout << "trial " << trial << ": rank(I - a1 A1) = " << report.rank_identity_side
                      << " >= " << obs_n - 1 << ", rank(a2 A2 + nE) = " << report.rank_shifted_side
                      << " <= " << obs_q + 1 << ", combination differs\n";
            last = obstruction_to_json(report, spec, alpha1, alpha2);
        }
        if (!obs_out.empty()) write_json(last, obs_out);
        return 0;
    }

    if (cmd_prime->parsed()) {
        echo_config("find-prime n=" + std::to_string(prime_n));
        std::cout << select_prime(prime_n).p << "\n";
        return 0;
    }

    if (cmd_eval->parsed()) {
        echo_config("poly-eval f=" + (eval_f.empty() ? "@" + eval_f_file : eval_f) + " args=" + eval_args +
                    " out=" + eval_out);
        const NcPolynomial f = load_polynomial(eval_f, eval_f_file);
        const json args_doc = read_json(eval_args);
        if (!args_doc.is_array()) throw ParseError("--args must be a JSON array of matrices");
        std::vector<RatMat> args;
        for (const auto& m : args_doc) args.push_back(matrix_from_json(m));
        write_json(json{{"f", f.str()}, {"value", matrix_to_json(f.evaluate(args))}}, eval_out);
        return 0;
    }

    if (cmd_search->parsed()) {
        echo_config("search-witness f=" + (sw_f.empty() ? "@" + sw_f_file : sw_f) + " p=" + std::to_string(sw_p) +
                    " budget=" + std::to_string(sw_budget) + " seed=" + std::to_string(sw_seed) +
                    " threads=" + std::to_string(sw_threads));
        const NcPolynomial f = load_polynomial(sw_f, sw_f_file);
        const auto witness = search_diagonal_witness(f, sw_p, sw_budget, sw_seed, sw_threads);
        if (!witness)
            throw WitnessNotFoundError("budget " + std::to_string(sw_budget) + " exhausted for p = " +
                                       std::to_string(sw_p) + " (seed " + std::to_string(sw_seed) + ")");
        json args = json::array();
        for (const auto& m : witness->args) args.push_back(matrix_to_json(m));
        json spectrum = json::array();
        for (const auto& r : witness->spectrum) spectrum.push_back(r.str());
        write_json(json{{"f", f.str()},
                        {"p", witness->p},
                        {"args", std::move(args)},
                        {"value", matrix_to_json(witness->value)},
                        {"spectrum", std::move(spectrum)}},
                   sw_out);
        return 0;
    }

    if (cmd_waring->parsed()) {
        echo_config("waring-poly f=" + (wp_f.empty() ? "@" + wp_f_file : wp_f) + " n=" + std::to_string(wp_n) +
                    " input=" + wp_input + " alphas=" + wp_alphas + " budget=" + std::to_string(wp_budget) +
                    " seed=" + std::to_string(wp_seed) + " threads=" + std::to_string(wp_threads) +
                    " out=" + wp_out);
        const NcPolynomial f = load_polynomial(wp_f, wp_f_file);
        const RatMat t = matrix_from_json(read_json(wp_input));
        const auto result = waring_for_polynomial(f, wp_n, t, parse_alphas(wp_alphas), wp_budget, wp_seed,
                                                  wp_threads);
        if (verbose)
            std::cerr << "# witness spectrum size " << result.witness.spectrum.size() << ", q = "
                      << result.decomposition.spec.q() << "\n";
        print_report(result.decomposition.report);
        write_json(waring_result_to_json(result, wp_budget, wp_seed), wp_out);
        return 0;
    }

    if (cmd_prescribe->parsed()) {
        echo_config("prescribe-diagonal input=" + pre_input + " mus=" + pre_mus + " out=" + pre_out);
        const RatMat b = matrix_from_json(read_json(pre_input));
        const auto pd = prescribe_diagonal(b, parse_scalar_list(pre_mus, "--mus"));
        write_json(json{{"B", matrix_to_json(b)}, {"S", matrix_to_json(pd.s)}, {"C", matrix_to_json(pd.c)}},
                   pre_out);
        return 0;
    }

    if (cmd_block->parsed()) {
        echo_config("complete-block input=" + blk_input + " n=" + std::to_string(blk_n) + " lambdas=" +
                    blk_lambdas + " out=" + blk_out);
        const RatMat z = matrix_from_json(read_json(blk_input));
        const ModelSpectrum spec(blk_n, parse_scalar_list(blk_lambdas, "--lambdas"));
        const auto bc = complete_block_to_model(z, spec);
        write_json(json{{"U", matrix_to_json(bc.u)},
                        {"V", matrix_to_json(bc.v)},
                        {"W", matrix_to_json(bc.w)},
                        {"A", matrix_to_json(bc.a)},
                        {"S", matrix_to_json(bc.witness.matrix())}},
                   blk_out);
        return 0;
    }

    return 0;
}

}  // namespace
