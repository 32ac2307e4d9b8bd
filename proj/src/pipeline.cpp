// SPDX-License-Identifier: Apache-2.0
#include "waring/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <thread>

namespace waring {

bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t d : {2ULL, 3ULL, 5ULL}) {
        if (m == d) return true;
        if (m % d == 0) return false;
    }
    // 2/3-wheel
    for (std::uint64_t d = 5; d * d <= m; d += 6) {
        if (m % d == 0 || m % (d + 2) == 0) return false;
    }
    return true;
}

PrimeChoice select_prime(index_t n) {
    if (n < 2) throw ContractError("prime selection needs n >= 2, got n = " + std::to_string(n));
    for (index_t p = n; 2 * p >= n + 2; --p)
        if (is_prime(static_cast<std::uint64_t>(p))) return {n, p};
    // Bertrand's postulate guarantees a hit; reaching this line is a bug.
    throw VerificationError("no prime p with n/2 + 1 <= p <= n for n = " + std::to_string(n));
}

bool degree_gate(const NcPolynomial& f, index_t p) {
    if (f.is_zero()) throw ZeroPolynomialError("the degree gate needs a nonzero polynomial");
    const int m = f.degree();
    if (m < 1) throw ContractError("the degree gate needs a nonconstant polynomial");
    return m < static_cast<int>(2 * p);
}

std::vector<Rational> char_poly(const RatMat& a) {
    const index_t n = a.rows();
    if (n != a.cols())
        throw ShapeError("characteristic polynomial requires a square matrix, got " + shape_of(a));
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = Rational(1);
    RatMat m = identity(n);
    for (index_t k = 1; k <= n; ++k) {
        const RatMat am = a * m;
        const Rational ck = -trace(am) / Rational(static_cast<long>(k));
        c[static_cast<std::size_t>(n - k)] = ck;
        m = am + ck * identity(n);
    }
    return c;
}

namespace {

Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Divisors of |m|, factored by trial division up to a fixed bound. When the
// bound leaves an unfactored cofactor it is treated as prime, so the list
// may be incomplete; callers treat missing roots as "not found".
std::vector<Integer> positive_divisors(Integer m, std::size_t cap) {
    std::vector<Integer> divisors;
    m = ::abs(m);
    if (sgn(m) == 0) return divisors;
    std::vector<std::pair<Integer, unsigned>> factors;
    Integer d(2);
    while (d * d <= m && d < 1000000) {
        if (m % d == 0) {
            unsigned e = 0;
            while (m % d == 0) {
                m /= d;
                ++e;
            }
            factors.emplace_back(d, e);
        }
        d += (d == 2) ? 1 : 2;
    }
    if (m > 1) factors.emplace_back(m, 1);
    divisors.emplace_back(1);
    for (const auto& [prime, exp] : factors) {
        const std::size_t base = divisors.size();
        Integer power(1);
        for (unsigned e = 1; e <= exp && divisors.size() < cap; ++e) {
            power *= prime;
            for (std::size_t i = 0; i < base && divisors.size() < cap; ++i)
                divisors.push_back(Integer(divisors[i] * power));
        }
        if (divisors.size() >= cap) break;
    }
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

}  // namespace

std::optional<std::vector<Rational>> distinct_rational_spectrum(const RatMat& a) {
    const index_t p = a.rows();
    if (p != a.cols() || p == 0) return std::nullopt;
    const auto chi = char_poly(a);

    std::vector<Rational> roots;
    auto try_root = [&](const Rational& r) {
        if (static_cast<index_t>(roots.size()) >= p) return;
        if (std::find(roots.begin(), roots.end(), r) != roots.end()) return;
        if (eval_poly(chi, r).is_zero()) roots.push_back(r);
    };

    // Diagonal entries first (free roots for triangular-ish values), then 0.
    for (index_t i = 0; i < p; ++i) try_root(a(i, i));
    try_root(Rational(0));

    if (static_cast<index_t>(roots.size()) < p) {
        // Rational root candidates u/v: u divides the lowest nonzero integer
        // coefficient, v divides the leading one.
        Integer denom_lcm(1);
        for (const auto& c : chi) {
            Integer den = c.denominator();
            mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), den.get_mpz_t());
        }
        std::vector<Integer> scaled;
        scaled.reserve(chi.size());
        for (const auto& c : chi) scaled.push_back((c * Rational(denom_lcm)).numerator());
        std::size_t low = 0;
        while (low < scaled.size() && sgn(scaled[low]) == 0) ++low;  // zero roots already tried

        const auto numerators = positive_divisors(scaled[low], 4096);
        const auto denominators = positive_divisors(denom_lcm, 512);
        for (const auto& den : denominators) {
            for (const auto& num : numerators) {
                if (static_cast<index_t>(roots.size()) >= p) break;
                const Rational r(num, den);
                try_root(r);
                try_root(-r);
            }
        }
    }

    if (static_cast<index_t>(roots.size()) != p) return std::nullopt;
    // Kernel-rank certificate per root, same style as the model test.
    const RatMat id = identity(p);
    for (const auto& r : roots)
        if (rank(a - r * id) != p - 1) return std::nullopt;
    return roots;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t chunk) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (chunk + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Companion matrix of prod (x - mu_i); zero diagonal when the sum vanishes.
RatMat companion_of(const std::vector<Rational>& mus) {
    const auto p = static_cast<index_t>(mus.size());
    std::vector<Rational> coeffs{Rational(1)};  // monic, ascending
    for (const auto& mu : mus) {
        std::vector<Rational> next(coeffs.size() + 1);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= mu * coeffs[i];
        }
        coeffs = std::move(next);
    }
    RatMat c = zeros(p, p);
    for (index_t i = 1; i < p; ++i) c(i, i - 1) = Rational(1);
    for (index_t i = 0; i < p; ++i) c(i, p - 1) = -coeffs[static_cast<std::size_t>(i)];
    return c;
}

// Target spectrum 1, 2, ..., p-1, -p(p-1)/2: distinct, nonzero, sum zero.
std::vector<Rational> bracket_target(index_t p) {
    std::vector<Rational> mus;
    long sum = 0;
    for (long i = 1; i < p; ++i) {
        mus.emplace_back(i);
        sum += i;
    }
    mus.emplace_back(-sum);
    return mus;
}

std::vector<std::vector<RatMat>> structured_candidates(index_t p, int vars) {
    std::vector<std::vector<RatMat>> out;
    const auto var_count = static_cast<std::size_t>(std::max(vars, 1));

    // Diagonal tuples with small distinct entries.
    for (long shift = 0; shift < 4; ++shift) {
        std::vector<RatMat> args;
        for (std::size_t v = 0; v < var_count; ++v) {
            std::vector<Rational> diag_entries;
            for (index_t i = 0; i < p; ++i)
                diag_entries.emplace_back(shift + static_cast<long>(v) * static_cast<long>(p) + i + 1);
            args.push_back(diagonal(diag_entries));
        }
        out.push_back(std::move(args));
    }

    // Elementary-matrix pairs.
    if (p >= 2) {
        RatMat e12 = zeros(p, p), e21 = zeros(p, p);
        e12(0, 1) = Rational(1);
        e21(1, 0) = Rational(1);
        std::vector<RatMat> ab, ba;
        for (std::size_t v = 0; v < var_count; ++v) {
            ab.push_back(v % 2 == 0 ? e12 : e21);
            ba.push_back(v % 2 == 0 ? e21 : e12);
        }
        out.push_back(std::move(ab));
        out.push_back(std::move(ba));
    }

    // Companion-style: a zero-diagonal companion target C with distinct
    // nonzero spectrum, paired with D = diag(1..p) solving [D^k, B] = C.
    if (p >= 2) {
        std::vector<Rational> d_entries;
        for (index_t i = 0; i < p; ++i) d_entries.emplace_back(static_cast<long>(i) + 1);
        const RatMat d = diagonal(d_entries);
        const RatMat c = companion_of(bracket_target(p));
        for (int power = 1; power <= 3; ++power) {
            RatMat b = zeros(p, p);
            bool ok = true;
            for (index_t i = 0; i < p && ok; ++i)
                for (index_t j = 0; j < p; ++j) {
                    if (i == j || c(i, j).is_zero()) continue;
                    Rational di(1), dj(1);
                    for (int e = 0; e < power; ++e) {
                        di *= d_entries[static_cast<std::size_t>(i)];
                        dj *= d_entries[static_cast<std::size_t>(j)];
                    }
                    if (di == dj) {
                        ok = false;
                        break;
                    }
                    b(i, j) = c(i, j) / (di - dj);
                }
            if (!ok) continue;
            std::vector<RatMat> db, bd;
            for (std::size_t v = 0; v < var_count; ++v) {
                db.push_back(v % 2 == 0 ? d : b);
                bd.push_back(v % 2 == 0 ? b : d);
            }
            out.push_back(std::move(db));
            out.push_back(std::move(bd));
        }

        // Shifted companions of the plain spectrum 1..p.
        std::vector<Rational> plain;
        for (index_t i = 0; i < p; ++i) plain.emplace_back(static_cast<long>(i) + 1);
        const RatMat k = companion_of(plain);
        std::vector<RatMat> args;
        for (std::size_t v = 0; v < var_count; ++v)
            args.push_back(k + Rational(static_cast<long>(v)) * identity(p));
        out.push_back(std::move(args));
    }
    return out;
}

std::vector<RatMat> random_candidate(std::mt19937_64& rng, index_t p, int vars, std::uint64_t chunk) {
    const long bound = 2 + static_cast<long>(chunk / 8);
    const long dmax = 1 + static_cast<long>(std::min<std::uint64_t>(chunk / 32, 2));
    std::vector<RatMat> args;
    const auto var_count = static_cast<std::size_t>(std::max(vars, 1));
    for (std::size_t v = 0; v < var_count; ++v) {
        RatMat m(p, p);
        for (index_t i = 0; i < p; ++i)
            for (index_t j = 0; j < p; ++j) {
                const long num = static_cast<long>(rng() % static_cast<unsigned long>(2 * bound + 1)) - bound;
                const long den = 1 + static_cast<long>(rng() % static_cast<unsigned long>(dmax));
                m(i, j) = Rational(num, den);
            }
        args.push_back(std::move(m));
    }
    return args;
}

constexpr std::uint64_t kChunkSize = 16;

}  // namespace

std::optional<DiagonalWitness> search_diagonal_witness(const NcPolynomial& f, index_t p,
                                                       std::uint64_t budget, std::uint64_t seed,
                                                       unsigned threads) {
    if (budget == 0) throw ContractError("search budget must be positive");
    if (p < 2) throw ContractError("the witness search needs p >= 2, got p = " + std::to_string(p));
    if (!degree_gate(f, p))
        throw ContractError("degree " + std::to_string(f.degree()) + " fails the gate deg(f) < 2p for p = " +
                            std::to_string(p));

    const int vars = std::max(f.max_variable(), 1);
    auto structured = structured_candidates(p, vars);
    if (structured.size() > budget) structured.resize(budget);
    const std::uint64_t random_budget = budget - structured.size();
    const std::uint64_t random_chunks = (random_budget + kChunkSize - 1) / kChunkSize;
    const std::uint64_t total_chunks = 1 + random_chunks;

    auto accept = [&](std::vector<RatMat> args) -> std::optional<DiagonalWitness> {
        RatMat value = f.evaluate(args);
        auto spectrum = distinct_rational_spectrum(value);
        if (!spectrum) return std::nullopt;
        return DiagonalWitness{f, p, std::move(args), std::move(value), std::move(*spectrum)};
    };

    // Chunk 0 is the structured list; chunk c >= 1 draws its own kChunkSize
    // random candidates from a seed mixed with c. The accepted witness is
    // the first success inside the lowest successful chunk, which makes the
    // outcome independent of thread count and scheduling.
    auto run_chunk = [&](std::uint64_t chunk) -> std::optional<DiagonalWitness> {
        if (chunk == 0) {
            for (auto& cand : structured) {
                auto hit = accept(cand);
                if (hit) return hit;
            }
            return std::nullopt;
        }
        std::mt19937_64 rng(mix_seed(seed, chunk));
        const std::uint64_t count =
            std::min<std::uint64_t>(kChunkSize, random_budget - (chunk - 1) * kChunkSize);
        for (std::uint64_t i = 0; i < count; ++i) {
            auto hit = accept(random_candidate(rng, p, vars, chunk));
            if (hit) return hit;
        }
        return std::nullopt;
    };

    if (threads <= 1) {
        for (std::uint64_t c = 0; c < total_chunks; ++c) {
            auto hit = run_chunk(c);
            if (hit) return hit;
        }
        return std::nullopt;
    }

    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> best_chunk{total_chunks};
    std::map<std::uint64_t, DiagonalWitness> successes;
    std::mutex success_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= total_chunks || c > best_chunk.load()) return;
            auto hit = run_chunk(c);
            if (hit) {
                std::lock_guard<std::mutex> lock(success_mutex);
                successes.emplace(c, std::move(*hit));
                std::uint64_t cur = best_chunk.load();
                while (c < cur && !best_chunk.compare_exchange_weak(cur, c)) {
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (successes.empty()) return std::nullopt;
    return successes.begin()->second;
}

PolynomialWaring waring_for_polynomial(const NcPolynomial& f, index_t n, const RatMat& t,
                                       const Coefficients& coeffs, std::uint64_t budget, std::uint64_t seed,
                                       unsigned threads) {
    if (f.is_zero()) throw ZeroPolynomialError("the pipeline needs a nonzero polynomial");
    const int m = f.degree();
    if (m < 1) throw ContractError("the pipeline needs a nonconstant polynomial, got degree 0");
    if (n < 2) throw ContractError("the pipeline needs n >= 2, got n = " + std::to_string(n));
    if (n < static_cast<index_t>(m) - 1)
        throw ContractError("n >= degree(f) - 1 required: n = " + std::to_string(n) + ", degree = " +
                            std::to_string(m));
    if (t.rows() != n || t.cols() != n)
        throw ShapeError("matrix shape " + shape_of(t) + " does not match n = " + std::to_string(n));
    const Rational tr = trace(t);
    if (!tr.is_zero()) throw ContractError("matrix must have trace zero, got trace " + tr.str());

    const PrimeChoice prime = select_prime(n);
    if (!degree_gate(f, prime.p))
        throw VerificationError("degree gate failed although n >= m - 1 holds");

    auto witness = search_diagonal_witness(f, prime.p, budget, seed, threads);
    if (!witness)
        throw WitnessNotFoundError("no rational-spectrum witness for p = " + std::to_string(prime.p) +
                                   " within budget " + std::to_string(budget) + " (seed " +
                                   std::to_string(seed) + ")");

    // Embed the argument tuple into M_n as top-left blocks and re-evaluate.
    std::vector<RatMat> embedded;
    embedded.reserve(witness->args.size());
    for (const auto& arg : witness->args) {
        RatMat big = zeros(n, n);
        big.block(0, 0, prime.p, prime.p) = arg;
        embedded.push_back(std::move(big));
    }
    const RatMat value_n = f.evaluate(embedded);

    // Eigenvalues of the embedded value: the witness spectrum plus n - p
    // copies of the constant term. The nonzero ones must stay distinct to
    // form a model spectrum.
    const Rational constant = f.coefficient({});
    std::vector<Rational> lambdas;
    for (const auto& r : witness->spectrum)
        if (!r.is_zero()) lambdas.push_back(r);
    if (n > prime.p && !constant.is_zero()) {
        if (n - prime.p >= 2 ||
            std::find(witness->spectrum.begin(), witness->spectrum.end(), constant) != witness->spectrum.end())
            throw ContractError("constant term " + constant.str() +
                                " gives the embedded value a repeated nonzero eigenvalue; "
                                "no model spectrum exists for n = " + std::to_string(n) + ", p = " +
                                std::to_string(prime.p));
        lambdas.push_back(constant);
    }
    const ModelSpectrum spec(n, std::move(lambdas));

    const SimilarityWitness value_witness = diagonalize_with_spectrum(value_n, spec);
    Decomposition dec = decompose(t, spec, coeffs);

    PolynomialWaring result{prime, std::move(*witness), std::move(dec), {}};
    for (int i = 0; i < 3; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const RatMat conjugator = result.decomposition.witnesses[idx] * value_witness.inverse_matrix();
        const RatMat conjugator_inv = inverse(conjugator);
        std::vector<RatMat> tuple;
        tuple.reserve(embedded.size());
        for (const auto& arg : embedded) tuple.push_back(conjugator * arg * conjugator_inv);
        if (!mat_eq(f.evaluate(tuple), result.decomposition.a[idx]))
            throw VerificationError("re-evaluated tuple does not reproduce A" + std::to_string(i + 1));
        result.tuples[idx] = std::move(tuple);
    }
    return result;
}

}  // namespace waring
