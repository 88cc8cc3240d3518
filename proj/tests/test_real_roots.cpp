#include "regsym/selftest.hpp"
#include "regsym/upoly.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace regsym;
using GR = GaussianRational;

namespace {

QPoly qpoly(std::initializer_list<long long> ascending) {
    QPoly p;
    for (long long v : ascending) p.c.emplace_back(v);
    p.trim();
    return p;
}

}  // namespace

TEST_CASE("sturm counting on rational polynomials", "[real-roots]") {
    CHECK(count_real_roots(qpoly({1, 0, 1})) == 0);       // t^2 + 1
    CHECK(count_real_roots(qpoly({-1, 0, 1})) == 2);      // t^2 - 1
    CHECK(count_real_roots(qpoly({0, 0, 1})) == 1);       // t^2 (distinct roots)
    CHECK(count_real_roots(qpoly({0, -1, 0, 1})) == 3);   // t^3 - t
    CHECK(count_real_roots(qpoly({2, 0, 3, 0, 1})) == 0); // (t^2+1)(t^2+2)
    CHECK(count_real_roots(qpoly({5})) == 0);
    CHECK(count_real_roots(qpoly({-6, 11, -6, 1})) == 3); // (t-1)(t-2)(t-3)
}

TEST_CASE("has_real_root on gaussian-rational polynomials", "[real-roots]") {
    // t - i: no real roots
    CHECK_FALSE(has_real_root(GPoly(std::vector<GR>{-GR::i(), GR(1)})));
    // t^2 + i t: common real root of (t^2, t) at t = 0
    CHECK(has_real_root(GPoly(std::vector<GR>{GR(0), GR::i(), GR(1)})));
    // t^2 + i: no real root (re = t^2, im = 1)
    CHECK_FALSE(has_real_root(GPoly(std::vector<GR>{GR::i(), GR(0), GR(1)})));
    // (t - 2)(t - i) = t^2 - (2+i) t + 2i: real root 2
    {
        GPoly p(std::vector<GR>{GR(Rational(0), Rational(2)), GR(Rational(-2), Rational(-1)), GR(1)});
        CHECK(has_real_root(p));
    }
    // real-coefficient polynomial: reduces to plain Sturm
    CHECK(has_real_root(GPoly(std::vector<GR>{GR(-1), GR(0), GR(1)})));
}

TEST_CASE("planted-root cross-check", "[real-roots][property]") {
    // Plant Gaussian-rational roots; real-root existence must match whether
    // any planted root is real. 200 cases mirrors the decision-engine use.
    selftest_detail::Rng rng(17);
    for (int c = 0; c < 200; ++c) {
        int deg = static_cast<int>(rng.range(1, 6));
        bool any_real = false;
        GPoly p = GPoly::constant(GR(1));
        for (int j = 0; j < deg; ++j) {
            GR root = selftest_detail::rand_gaussian(rng);
            any_real = any_real || root.is_real();
            p = p * GPoly(std::vector<GR>{-root, GR(1)});
        }
        CAPTURE(c, deg);
        CHECK(has_real_root(p) == any_real);
    }
}

TEST_CASE("squarefree decomposition splits multiplicities", "[real-roots]") {
    // (t-1)^2 (t+2)
    GPoly t1(std::vector<GR>{GR(-1), GR(1)});
    GPoly t2(std::vector<GR>{GR(2), GR(1)});
    GPoly p = t1 * t1 * t2;
    auto parts = squarefree_decomposition(p);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].second == 1);
    CHECK(monic(parts[0].first) == monic(t2));
    CHECK(parts[1].second == 2);
    CHECK(monic(parts[1].first) == monic(t1));
}
