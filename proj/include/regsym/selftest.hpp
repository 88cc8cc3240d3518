#pragma once

// Seeded exact property suites, shared between the CLI `selftest`
// subcommand and the test harness. Every check here is an exact identity;
// a failure means a real bug, not a tolerance issue.

#include "regsym/bivariate.hpp"
#include "regsym/diff_operator.hpp"
#include "regsym/factorization.hpp"
#include "regsym/quantize.hpp"
#include "regsym/rational.hpp"

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace regsym {

struct SuiteResult {
    std::string name;
    int cases_run = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

namespace selftest_detail {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    // modulo bias is irrelevant for test-case generation
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

inline Rational rand_rational(Rng& rng, int max_num = 9, int max_den = 4) {
    return Rational(rng.range(-max_num, max_num), rng.range(1, max_den));
}

inline GaussianRational rand_gaussian(Rng& rng) { return {rand_rational(rng), rand_rational(rng)}; }

inline GaussianRational rand_gaussian_nonzero(Rng& rng) {
    for (;;) {
        GaussianRational g = rand_gaussian(rng);
        if (!g.is_zero()) return g;
    }
}

inline BivariatePoly rand_symbol(Rng& rng, int max_total_degree, int max_terms = 10) {
    BivariatePoly p;
    int terms = static_cast<int>(rng.range(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        int a = static_cast<int>(rng.range(0, max_total_degree));
        int b = static_cast<int>(rng.range(0, static_cast<std::int64_t>(max_total_degree - a)));
        p.add_term({a, b}, rand_gaussian(rng));
    }
    return p;
}

inline GPoly rand_upoly(Rng& rng, int max_degree) {
    GPoly g;
    int d = static_cast<int>(rng.range(0, max_degree));
    for (int k = 0; k <= d; ++k) g.c.push_back(rand_gaussian(rng));
    g.trim();
    return g;
}

}  // namespace selftest_detail

// left_from_weyl . weyl_from_left is the identity, exactly; the Weyl
// correction of x*xi is +i/2.
inline SuiteResult suite_quantization_round_trip(int cases, std::uint64_t seed) {
    using namespace selftest_detail;
    SuiteResult res{"quantization round-trip", 0, {}};
    Rng rng(seed);
    BivariatePoly xxi;
    xxi.add_term({1, 1}, GaussianRational(1));
    BivariatePoly expected = xxi;
    expected.add_term({0, 0}, GaussianRational(Rational(0), Rational(1, 2)));
    res.cases_run++;
    if (!(weyl_from_left(xxi) == expected)) res.failures.push_back("weyl correction of x*xi is not +i/2");
    for (int c = 0; c < cases; ++c) {
        BivariatePoly a = rand_symbol(rng, 8);
        res.cases_run++;
        if (!(left_from_weyl(weyl_from_left(a)) == a))
            res.failures.push_back("round trip failed for " + to_string(a));
        if (static_cast<int>(res.failures.size()) > 5) break;
    }
    return res;
}

// A * B = identity exactly for the explicit inverse of Lemma-style node
// matrices, over random exact Gaussian-rational nodes.
inline SuiteResult suite_interp_inverse(int cases, std::uint64_t seed) {
    using namespace selftest_detail;
    SuiteResult res{"interpolation-matrix inverse (A*B = I)", 0, {}};
    Rng rng(seed);
    for (int c = 0; c < cases; ++c) {
        int r1 = static_cast<int>(rng.range(0, 4));
        int r2 = static_cast<int>(rng.range(r1 == 0 ? 1 : 0, 4));
        int n = r1 + r2;
        std::vector<GaussianRational> xs;
        while (static_cast<int>(xs.size()) < n) {
            GaussianRational cand = rand_gaussian_nonzero(rng);
            bool dup = false;
            for (const auto& x : xs) dup = dup || x == cand;
            if (!dup) xs.push_back(cand);
        }
        res.cases_run++;
        auto interp = build_matrix_A(xs, r1, r2);
        auto b = inverse_B(xs, r1, r2);
        if (!(interp.A * b == Matrix<GaussianRational>::identity(n)))
            res.failures.push_back("A*B != I for r1=" + std::to_string(r1) + " r2=" + std::to_string(r2));
        if (static_cast<int>(res.failures.size()) > 5) break;
    }
    return res;
}

// prod (t - v_j) = sum_h sigma_h t^(m-h), exactly.
inline SuiteResult suite_sigma_reconstruction(int cases, std::uint64_t seed) {
    using namespace selftest_detail;
    SuiteResult res{"elementary-symmetric reconstruction", 0, {}};
    Rng rng(seed);
    for (int c = 0; c < cases; ++c) {
        int m = static_cast<int>(rng.range(1, 8));
        std::vector<GaussianRational> values;
        for (int j = 0; j < m; ++j) values.push_back(rand_gaussian(rng));
        GPoly prod = GPoly::constant(GaussianRational(1));
        for (const auto& v : values) prod = prod * GPoly(std::vector<GaussianRational>{-v, GaussianRational(1)});
        GPoly recon;
        recon.c.assign(m + 1, GaussianRational(0));
        for (int h = 0; h <= m; ++h) recon.c[static_cast<std::size_t>(m - h)] = elementary_symmetric(h, values);
        recon.trim();
        res.cases_run++;
        if (!(prod == recon)) res.failures.push_back("sigma reconstruction failed at m=" + std::to_string(m));
        if (static_cast<int>(res.failures.size()) > 5) break;
    }
    return res;
}

// (A o B) o C = A o (B o C) for random differential operators, exactly.
inline SuiteResult suite_compose_associativity(int cases, std::uint64_t seed) {
    using namespace selftest_detail;
    SuiteResult res{"operator composition associativity", 0, {}};
    Rng rng(seed);
    auto rand_op = [&](int max_order, int max_coeff_deg) {
        std::vector<GPoly> coeffs;
        int order = static_cast<int>(rng.range(0, max_order));
        for (int k = 0; k <= order; ++k) coeffs.push_back(rand_upoly(rng, max_coeff_deg));
        if (coeffs.front().is_zero()) coeffs.front() = GPoly::constant(GaussianRational(1));
        return DiffOperatorQ(std::move(coeffs));
    };
    for (int c = 0; c < cases; ++c) {
        DiffOperatorQ a = rand_op(2, 2), b = rand_op(2, 2), d = rand_op(2, 2);
        res.cases_run++;
        if (!(compose_operators(compose_operators(a, b), d) == compose_operators(a, compose_operators(b, d))))
            res.failures.push_back("associativity failed at case " + std::to_string(c));
        if (static_cast<int>(res.failures.size()) > 5) break;
    }
    return res;
}

inline std::vector<SuiteResult> run_selftest(int cases, std::uint64_t seed) {
    return {
        suite_quantization_round_trip(cases, seed),
        suite_interp_inverse(std::min(cases, 200), seed + 1),
        suite_sigma_reconstruction(cases, seed + 2),
        suite_compose_associativity(std::min(cases, 150), seed + 3),
    };
}

}  // namespace regsym
