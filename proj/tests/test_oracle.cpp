#include "regsym/cross_validate.hpp"
#include "regsym/oracle.hpp"
#include "regsym/parse.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace regsym;
using GR = GaussianRational;
using Catch::Matchers::WithinAbs;

namespace {

BivariatePoly P(const std::string& s) { return parse_symbol(s); }

PuiseuxSeries series(std::initializer_list<std::pair<Rational, Complex>> terms) {
    PuiseuxSeries s;
    for (const auto& [e, c] : terms) s.terms[e] = c;
    return s;
}

}  // namespace

TEST_CASE("counterexample_solution closed forms", "[oracle]") {
    auto grid = geometric_grid(1.0, 1e4, 33);
    // eta = x - 1: Q real, |u| = 1
    {
        auto s = counterexample_solution(series({{Rational(1), {1, 0}}, {Rational(0), {-1, 0}}}), grid);
        for (double v : s.log_abs_u) CHECK_THAT(v, WithinAbs(0.0, 1e-12));
    }
    // eta = x - i: log|u| = x - 1
    {
        auto s = counterexample_solution(series({{Rational(1), {1, 0}}, {Rational(0), {0, -1}}}), grid);
        for (std::size_t i = 0; i < s.xs.size(); ++i) CHECK_THAT(s.log_abs_u[i], WithinAbs(s.xs[i] - 1.0, 1e-9));
    }
    // eta = i x: log|u| = -(x^2 - 1)/2, a Gaussian
    {
        auto s = counterexample_solution(series({{Rational(1), {0, 1}}}), grid);
        for (std::size_t i = 0; i < s.xs.size(); ++i)
            CHECK_THAT(s.log_abs_u[i], WithinAbs(-(s.xs[i] * s.xs[i] - 1.0) / 2.0, 1e-6 * s.xs[i] * s.xs[i]));
    }
    // exponent -1 with imaginary coefficient integrates to a log: |u| = x^c
    {
        auto s = counterexample_solution(series({{Rational(1), {1, 0}}, {Rational(-1), {0, -3}}}), grid);
        auto g = growth_exponent(s);
        CHECK(g.label == GrowthLabel::PolynomialBounded);
        CHECK_THAT(g.slope_logx, WithinAbs(3.0, 0.05));
    }
    // terms below -1 are ignored by construction
    {
        auto with_tail = series({{Rational(1), {1, 0}}, {Rational(-2), {0, 5}}});
        auto s = counterexample_solution(with_tail, grid);
        for (double v : s.log_abs_u) CHECK_THAT(v, WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("growth_exponent thresholds", "[oracle]") {
    auto grid = geometric_grid(1.0, 1e4, 25);
    auto sample_of = [&](auto f) {
        GrowthSample s;
        for (double x : grid) {
            s.xs.push_back(x);
            s.log_abs_u.push_back(f(x));
        }
        return s;
    };
    {
        auto g = growth_exponent(sample_of([](double x) { return 2.0 * std::log(x); }));
        CHECK(g.label == GrowthLabel::PolynomialBounded);
        CHECK_THAT(g.slope_logx, WithinAbs(2.0, 0.05));
    }
    CHECK(growth_exponent(sample_of([](double x) { return x; })).label == GrowthLabel::SuperPolynomialGrowth);
    CHECK(growth_exponent(sample_of([](double x) { return -x * x / 2.0; })).label == GrowthLabel::RapidDecay);
    CHECK(growth_exponent(sample_of([](double) { return 0.0; })).label == GrowthLabel::PolynomialBounded);

    GrowthSample tiny;
    for (double x : geometric_grid(1.0, 10.0, 20)) {
        tiny.xs.push_back(x);
        tiny.log_abs_u.push_back(0.0);
    }
    CHECK_THROWS_AS(growth_exponent(tiny), InsufficientRange);
}

TEST_CASE("solve_operator_equation basics", "[oracle]") {
    // P = D: constant solutions
    {
        DiffOperatorQ d(std::vector<GPoly>{GPoly::constant(GR(1)), GPoly{}});
        auto samples = solve_operator_equation(d, 1.0, 150.0);
        REQUIRE(samples.size() == 1);
        auto g = growth_exponent(samples[0]);
        CHECK(g.label == GrowthLabel::PolynomialBounded);
        CHECK_THAT(g.slope_logx, WithinAbs(0.0, 1e-6));
    }
    // P = D - (x - 1): matches the closed form exp(i(x^2/2 - x))
    {
        GPoly xm1(std::vector<GR>{GR(-1), GR(1)});
        DiffOperatorQ p(std::vector<GPoly>{GPoly::constant(GR(1)), -xm1});
        auto samples = solve_operator_equation(p, 1.0, 100.0);
        auto closed = counterexample_solution(series({{Rational(1), {1, 0}}, {Rational(0), {-1, 0}}}), samples[0].xs);
        for (std::size_t i = 0; i < closed.xs.size(); ++i)
            CHECK_THAT(samples[0].log_abs_u[i] - closed.log_abs_u[i], WithinAbs(0.0, 1e-6));
    }
    // P = D^2 + x^2: generic solutions grow like exp(x^2/2)
    {
        auto op = operator_from_left_symbol(left_from_weyl(P("xi^2 + x^2")));
        auto samples = solve_operator_equation(op, 1.0, 120.0);
        REQUIRE(samples.size() == 2);
        for (const auto& s : samples) {
            auto g = growth_exponent(s);
            CHECK(g.label == GrowthLabel::SuperPolynomialGrowth);
        }
        // log|u|(120) should be near 120^2/2 = 7200
        CHECK_THAT(samples[0].log_abs_u.back(), WithinAbs(7200.0, 40.0));
    }
    // leading coefficient with a real zero inside the span
    {
        GPoly xm50(std::vector<GR>{GR(-50), GR(1)});
        DiffOperatorQ p(std::vector<GPoly>{xm50, GPoly::constant(GR(1))});
        CHECK_THROWS_AS(solve_operator_equation(p, 1.0, 100.0), LeadingCoeffVanishes);
    }
}

TEST_CASE("renormalized log-magnitudes are invariant under interval halving", "[oracle][property]") {
    auto op = operator_from_left_symbol(left_from_weyl(P("xi^2 + x^2")));
    IntegratorOptions coarse, fine;
    coarse.renorm_bits = 48;
    fine.renorm_bits = 24;  // renormalizes twice as often
    auto a = solve_operator_equation(op, 1.0, 100.0, {}, coarse);
    auto b = solve_operator_equation(op, 1.0, 100.0, {}, fine);
    for (std::size_t i = 0; i < a[0].xs.size(); ++i)
        CHECK_THAT(a[0].log_abs_u[i] - b[0].log_abs_u[i], WithinAbs(0.0, 1e-8));
}

TEST_CASE("cross_validate on first-order fixtures", "[oracle]") {
    // NotRegular <=> polynomially bounded witness, on every m = 1 fixture
    for (const char* txt : {"xi - x + 1", "xi - x + i", "xi + i*x", "xi - i*x"}) {
        auto res = decide(P(txt));
        auto rep = cross_validate(P(txt), res);
        CAPTURE(txt);
        CHECK(rep.ran);
        CHECK(rep.asserted);
        CHECK(rep.consistent);
        if (res.verdict.decision == Decision::NotRegular) {
            REQUIRE(rep.witness_growth.has_value());
            CHECK(rep.witness_growth->label == GrowthLabel::PolynomialBounded);
        }
    }
    // constant-coefficient NotRegular: witness exp(i xi_0 x) is flat
    {
        auto res = decide(P("xi^2"));
        auto rep = cross_validate(P("xi^2"), res);
        CHECK(rep.asserted);
        CHECK(rep.consistent);
    }
    // order >= 2 Regular: advisory only
    {
        auto res = decide(P("xi^2 + x^2"));
        auto rep = cross_validate(P("xi^2 + x^2"), res);
        CHECK(rep.ran);
        CHECK_FALSE(rep.asserted);
    }
    // inconclusive: nothing to validate
    {
        auto res = decide(P("(xi - x)^2"));
        auto rep = cross_validate(P("(xi - x)^2"), res);
        CHECK(rep.ran);
        CHECK_FALSE(rep.asserted);
    }
}
