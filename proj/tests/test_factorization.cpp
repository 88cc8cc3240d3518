#include "regsym/factorization.hpp"
#include "regsym/selftest.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <complex>

using namespace regsym;
using GR = GaussianRational;
using Catch::Matchers::WithinAbs;

namespace {

const GPoly kOne = GPoly::constant(GR(1));
const GPoly kX = GPoly::monomial(GR(1), 1);

DiffOperatorQ op_d() { return DiffOperatorQ(std::vector<GPoly>{kOne, GPoly{}}); }

}  // namespace

TEST_CASE("elementary symmetric functions use the signed convention", "[factorization]") {
    std::vector<GR> vals{GR(1), GR(2), GR(3)};
    CHECK(elementary_symmetric(0, vals) == GR(1));
    CHECK(elementary_symmetric(1, vals) == GR(-6));
    CHECK(elementary_symmetric(3, vals) == GR(-6));
    std::vector<GR> two{GR(1), GR(2)};
    CHECK(elementary_symmetric(1, two) == GR(-3));
    CHECK(elementary_symmetric(2, two) == GR(2));  // (t-1)(t-2) = t^2 - 3t + 2
    CHECK_THROWS_AS(elementary_symmetric(3, two), IndexOutOfRange);
    CHECK(elementary_symmetric(0, std::vector<GR>{}) == GR(1));
}

TEST_CASE("sigma reconstruction property", "[factorization][property]") {
    auto res = suite_sigma_reconstruction(200, 404);
    CAPTURE(res.failures);
    CHECK(res.ok());
}

TEST_CASE("compose_operators on canonical examples", "[factorization]") {
    // (D - c1)(D - c2) with constants: commuting case
    DiffOperatorQ f1(std::vector<GPoly>{kOne, GPoly::constant(GR(-2))});
    DiffOperatorQ f2(std::vector<GPoly>{kOne, GPoly::constant(GR(-5))});
    auto prod = compose_operators(f1, f2);
    REQUIRE(prod.order() == 2);
    CHECK(prod.coeffs[0] == kOne);
    CHECK(prod.coeffs[1] == GPoly::constant(GR(-7)));
    CHECK(prod.coeffs[2] == GPoly::constant(GR(10)));

    // (D - x)^2 = D^2 - 2x D + (x^2 + i)
    DiffOperatorQ dmx(std::vector<GPoly>{kOne, -kX});
    auto sq = compose_operators(dmx, dmx);
    REQUIRE(sq.order() == 2);
    CHECK(sq.coeffs[1] == GR(-2) * kX);
    CHECK(sq.coeffs[2] == GPoly(std::vector<GR>{GR::i(), GR(0), GR(1)}));

    // D . x = x D - i
    DiffOperatorQ mul_x(std::vector<GPoly>{kX});
    auto dx = compose_operators(op_d(), mul_x);
    REQUIRE(dx.order() == 1);
    CHECK(dx.coeffs[0] == kX);
    CHECK(dx.coeffs[1] == GPoly::constant(-GR::i()));
}

TEST_CASE("compose associativity property", "[factorization][property]") {
    auto res = suite_compose_associativity(100, 505);
    CAPTURE(res.failures);
    CHECK(res.ok());
}

TEST_CASE("expand_factored matches the symmetric-function main term", "[factorization]") {
    // a = (1), xi = (c) constant: coefficients (1, -c), R = 0
    {
        auto e = expand_factored<GR>({kOne}, {GPoly::constant(GR(Rational(7, 2)))});
        REQUIRE(e.op.order() == 1);
        CHECK(e.remainder[0].is_zero());
        CHECK(e.remainder[1].is_zero());
        CHECK(e.op.coeffs[1] == GPoly::constant(GR(Rational(-7, 2))));
    }
    // a = (1), xi = (x, x): D^0 slot is x^2 + i = sigma_2 + R_2 with R_2 = i
    {
        auto e = expand_factored<GR>({kOne}, {kX, kX});
        CHECK(e.remainder[0].is_zero());
        CHECK(e.remainder[1].is_zero());
        CHECK(e.remainder[2] == GPoly::constant(GR::i()));
        CHECK(e.main_term[2] == GPoly(std::vector<GR>{GR(0), GR(0), GR(1)}));
    }
    // a = (1, x), xi = (x): slots k <= 1 match sum a_l sigma_h exactly
    {
        auto e = expand_factored<GR>({kOne, kX}, {kX});
        CHECK(e.remainder[0].is_zero());
        CHECK(e.remainder[1].is_zero());
        CHECK(e.main_term[1] == kX - kX);  // a_0 sigma_1 + a_1 sigma_0 = -x + x = 0
    }
}

TEST_CASE("expand_factored: R vanishes identically for constant roots", "[factorization][property]") {
    selftest_detail::Rng rng(21);
    for (int c = 0; c < 60; ++c) {
        int r1 = static_cast<int>(rng.range(0, 3));
        int r2 = static_cast<int>(rng.range(0, 3));
        std::vector<GPoly> a;
        for (int k = 0; k <= r1; ++k) a.push_back(selftest_detail::rand_upoly(rng, 3));
        if (a[0].is_zero()) a[0] = kOne;
        std::vector<GPoly> xs;
        for (int j = 0; j < r2; ++j) xs.push_back(GPoly::constant(selftest_detail::rand_gaussian(rng)));
        auto e = expand_factored<GR>(a, xs);
        for (const auto& r : e.remainder) {
            CAPTURE(c, r1, r2);
            CHECK(r.is_zero());
        }
    }
}

TEST_CASE("expand_factored: first two slots always match", "[factorization][property]") {
    selftest_detail::Rng rng(22);
    for (int c = 0; c < 60; ++c) {
        int r1 = static_cast<int>(rng.range(0, 3));
        int r2 = static_cast<int>(rng.range(0, 3));
        std::vector<GPoly> a;
        for (int k = 0; k <= r1; ++k) a.push_back(selftest_detail::rand_upoly(rng, 3));
        if (a[0].is_zero()) a[0] = kOne;
        std::vector<GPoly> xs;
        for (int j = 0; j < r2; ++j) xs.push_back(selftest_detail::rand_upoly(rng, 3));
        auto e = expand_factored<GR>(a, xs);  // throws if R_0 or R_1 nonzero
        CHECK(e.remainder[0].is_zero());
        if (r1 + r2 >= 1) CHECK(e.remainder[1].is_zero());
    }
}

TEST_CASE("weyl_product_standard structure", "[factorization]") {
    // constants: no derivative corrections at all
    {
        auto r = weyl_product_standard({kOne}, {kOne});
        CHECK(r.standard == r.weyl);
    }
    // Weyl x*xi = (x) * (xi): standard symbol x*xi - i/2
    {
        auto r = weyl_product_standard({kX}, {kOne, GPoly{}});
        BivariatePoly expected;
        expected.add_term({1, 1}, GR(1));
        expected.add_term({0, 0}, GR(Rational(0), Rational(-1, 2)));
        CHECK(r.standard == expected);
    }
    // xi . xi: R identically zero
    {
        auto r = weyl_product_standard({kOne, GPoly{}}, {kOne, GPoly{}});
        for (const auto& rem : r.remainder) CHECK(rem.is_zero());
    }
}

TEST_CASE("weyl_product_standard equals the explicit derivative series", "[factorization][property]") {
    // Independent route: q_k = sum_nu (1/nu!) (-i/2)^nu (r1+r2-k+nu)! /
    // (r1+r2-k)! * d^nu ( sum_{l+h=k-nu} a_l b_h ).
    selftest_detail::Rng rng(23);
    for (int c = 0; c < 40; ++c) {
        int r1 = static_cast<int>(rng.range(0, 3));
        int r2 = static_cast<int>(rng.range(0, 3));
        std::vector<GPoly> a, b;
        for (int k = 0; k <= r1; ++k) a.push_back(selftest_detail::rand_upoly(rng, 3));
        for (int h = 0; h <= r2; ++h) b.push_back(selftest_detail::rand_upoly(rng, 3));
        auto res = weyl_product_standard(a, b);
        int n = r1 + r2;
        for (int k = 0; k <= n; ++k) {
            GPoly expect;
            for (int nu = 0; nu <= k; ++nu) {
                GPoly inner;
                for (int l = 0; l <= std::min(k - nu, r1); ++l) {
                    int h = k - nu - l;
                    if (h > r2) continue;
                    inner = inner + a[static_cast<std::size_t>(l)] * b[static_cast<std::size_t>(h)];
                }
                for (int t = 0; t < nu; ++t) inner = inner.derivative();
                // (1/nu!) (-i/2)^nu * (n-k+nu)(n-k+nu-1)...(n-k+1)
                GR scale(1);
                for (int t = 1; t <= nu; ++t) scale *= GR(Rational(n - k + t, t));
                scale = scale * gpow(GR(Rational(0), Rational(-1, 2)), static_cast<unsigned>(nu));
                expect = expect + scale * inner;
            }
            CAPTURE(c, r1, r2, k);
            CHECK(xi_coefficient(res.standard, n - k) == expect);
        }
    }
}

TEST_CASE("build_matrix_A follows the column/row conventions", "[factorization]") {
    using M = Matrix<GR>;
    {
        auto im = build_matrix_A<GR>({GR(1), GR(-1)}, 0, 2);
        CHECK(im.A.m == M{{{GR(1), GR(1)}, {GR(1), GR(-1)}}}.m);
    }
    {
        auto im = build_matrix_A<GR>({GR(2), GR(1)}, 1, 1);
        CHECK(im.A.m == M{{{GR(1), GR(1)}, {GR(-1), GR(-2)}}}.m);
    }
    {
        auto im = build_matrix_A<GR>({GR(Rational(5), Rational(1))}, 0, 1);
        CHECK(im.A.m == M{{{GR(1)}}}.m);
    }
}

TEST_CASE("inverse_B matches the explicit formulas and inverts A", "[factorization]") {
    {
        auto b = inverse_B<GR>({GR(1), GR(-1)}, 0, 2);
        CHECK(b.m[0][0] == GR(Rational(1, 2)));
        CHECK(b.m[0][1] == GR(Rational(1, 2)));
        CHECK(b.m[1][0] == GR(Rational(1, 2)));
        CHECK(b.m[1][1] == GR(Rational(-1, 2)));
    }
    {
        auto b = inverse_B<GR>({GR(2), GR(1)}, 1, 1);
        CHECK(b.m[0][0] == GR(2));
        CHECK(b.m[0][1] == GR(1));
        CHECK(b.m[1][0] == GR(-1));
        CHECK(b.m[1][1] == GR(-1));
    }
    {
        auto b = inverse_B<GR>({GR(7)}, 0, 1);
        CHECK(b.m[0][0] == GR(1));
    }
    CHECK_THROWS_AS(inverse_B<GR>({GR(1), GR(1)}, 0, 2), CoincidentNodes);
}

TEST_CASE("interpolation inverse property suite", "[factorization][property]") {
    auto res = suite_interp_inverse(200, 606);
    CAPTURE(res.failures);
    CHECK(res.ok());
}

TEST_CASE("float-mode inverse on well-separated nodes", "[factorization][property]") {
    // The float backend is long double: degree-7 node polynomials reach
    // coefficients near 1e7, so double rounding alone puts ||A*B - I||
    // near 1e7 * 2^-53 ~ 1e-9; the 80-bit floor is three decades lower.
    using C = std::complex<long double>;
    selftest_detail::Rng rng(707);
    for (int c = 0; c < 50; ++c) {
        int r1 = static_cast<int>(rng.range(0, 4));
        int r2 = static_cast<int>(rng.range(r1 == 0 ? 1 : 0, 4));
        int n = r1 + r2;
        std::vector<C> xs;
        while (static_cast<int>(xs.size()) < n) {
            C cand(static_cast<long double>(rng.range(-100, 100)) / 10.0L,
                   static_cast<long double>(rng.range(-100, 100)) / 10.0L);
            if (std::abs(cand) > 10.0L) continue;
            bool ok = true;
            for (const auto& x : xs) ok = ok && std::abs(x - cand) >= 0.1L;
            if (ok) xs.push_back(cand);
        }
        auto interp = build_matrix_A(xs, r1, r2);
        auto b = inverse_B(xs, r1, r2);
        CAPTURE(c, r1, r2);
        CHECK(max_norm_diff(interp.A * b, Matrix<C>::identity(n)) <= 1e-9);
    }
    // plain double stays usable for branch-node work at its own floor
    {
        using D = std::complex<double>;
        std::vector<D> xs{{1.5, 0.5}, {-2.0, 1.0}, {3.0, -4.0}, {0.5, -0.5}};
        auto interp = build_matrix_A(xs, 2, 2);
        auto b = inverse_B(xs, 2, 2);
        CHECK(max_norm_diff(interp.A * b, Matrix<D>::identity(4)) <= 1e-12);
    }
}

TEST_CASE("exact inverse survives near-coincident front nodes", "[factorization]") {
    // The front-node Vandermonde factors cancel: B stays exact and finite
    // as the gap shrinks, so nearly equal exact front nodes are fine.
    for (long long k : {10, 1000, 100000}) {
        std::vector<GR> xs{GR(1), GR(Rational(1) + Rational(1, k)), GR(5), GR(-3)};
        auto interp = build_matrix_A(xs, 2, 2);
        auto b = inverse_B(xs, 2, 2);
        CAPTURE(k);
        CHECK(interp.A * b == Matrix<GR>::identity(4));
    }
}
