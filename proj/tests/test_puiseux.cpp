#include "regsym/parse.hpp"
#include "regsym/puiseux.hpp"
#include "regsym/quantize.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

using namespace regsym;
using GR = GaussianRational;
using Catch::Matchers::WithinAbs;

namespace {

BivariatePoly P(const std::string& s) { return parse_symbol(s); }

Complex term_at(const PuiseuxSeries& s, long long num, long long den_) {
    return s.coefficient(Rational(num, den_));
}

std::vector<Complex> lambdas(const BranchSet& set) {
    std::vector<Complex> out;
    for (const auto& b : set.branches) out.push_back(b.lambda());
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

}  // namespace

TEST_CASE("newton polygon at infinity", "[puiseux]") {
    {
        auto edges = newton_polygon_slopes(P("xi^2 + x^2"));
        REQUIRE(edges.size() == 1);
        CHECK(edges[0].first == 1);
        CHECK(edges[0].second == GPoly(std::vector<GR>{GR(1), GR(0), GR(1)}));  // c^2 + 1
    }
    {
        auto edges = newton_polygon_slopes(P("xi - x + 5"));
        REQUIRE(edges.size() == 1);
        CHECK(edges[0].first == 1);
        CHECK(edges[0].second == GPoly(std::vector<GR>{GR(-1), GR(1)}));  // c - 1
    }
    {
        auto edges = newton_polygon_slopes(P("xi^4 - 2*xi - x"));
        REQUIRE(edges.size() == 1);
        CHECK(edges[0].first == Rational(1, 4));
        CHECK(edges[0].second == GPoly(std::vector<GR>{GR(-1), GR(0), GR(0), GR(0), GR(1)}));  // c^4 - 1
    }
    {
        // two edges: slope 1 (c + i after lowering) and slope 1/2 (i c^2 + 1)
        auto edges = newton_polygon_slopes(P("xi^3 + i*x*xi^2 + x^2"));
        REQUIRE(edges.size() == 2);
        CHECK(edges[0].first == 1);
        CHECK(edges[0].second == GPoly(std::vector<GR>{GR::i(), GR(1)}));
        CHECK(edges[1].first == Rational(1, 2));
        CHECK(edges[1].second == GPoly(std::vector<GR>{GR(1), GR(0), GR::i()}));
    }
    // edge degrees + vertical drop account for the full xi-degree
    {
        auto p = P("xi^3 + x*xi^2");  // xi^2 (xi + x)
        auto edges = newton_polygon_slopes(p);
        int degree_sum = 0;
        for (const auto& [mu, e] : edges) degree_sum += e.degree();
        CHECK(degree_sum == 1);  // plus xi^2 vertical drop = 3 = deg_xi
    }
    CHECK_THROWS_AS(newton_polygon_slopes(P("x^2 + 1")), NotAPolynomialInXi);
}

TEST_CASE("expand_branches: exact closed forms", "[puiseux]") {
    {
        auto set = expand_branches(P("xi^2 + x^2"), Direction::PlusInfinity);
        REQUIRE(set.branches.size() == 2);
        for (const auto& b : set.branches) {
            CHECK(b.exact);
            REQUIRE(b.terms.size() == 1);
            CHECK_THAT(std::abs(b.lambda().imag()), WithinAbs(1.0, 1e-12));
            CHECK_THAT(b.lambda().real(), WithinAbs(0.0, 1e-12));
            // cross-check p(x, +-i x) = 0
            for (double x : {10.0, 100.0}) CHECK_THAT(std::abs(set.symbol.eval(x, evaluate_series(b, x))), WithinAbs(0.0, 1e-9));
        }
    }
    {
        auto set = expand_branches(P("xi - x + 1"), Direction::PlusInfinity);
        REQUIRE(set.branches.size() == 1);
        const auto& b = set.branches[0];
        CHECK(b.exact);
        CHECK_THAT(b.lambda().real(), WithinAbs(1.0, 1e-12));
        CHECK_THAT(term_at(b, 0, 1).real(), WithinAbs(-1.0, 1e-12));
        CHECK(b.terms.size() == 2);
    }
}

TEST_CASE("expand_branches: quartic with real slope branches", "[puiseux]") {
    auto set = expand_branches(P("xi^4 - 2*xi - x"), Direction::PlusInfinity);
    REQUIRE(set.branches.size() == 4);
    // all slopes zero; leading exponent 1/4 with the four fourth roots of 1
    int real_count = 0;
    for (const auto& b : set.branches) {
        CHECK(b.ramification == 4);
        Complex lead = term_at(b, 1, 4);
        CHECK_THAT(std::abs(lead), WithinAbs(1.0, 1e-10));
        if (std::abs(lead.imag()) < 1e-10) {
            ++real_count;
            // correction A/m = 1/2 at exponent (r+1-m)/m = -1/2 on both real branches
            CHECK_THAT(term_at(b, -1, 2).real(), WithinAbs(0.5, 1e-6));
            CHECK_THAT(term_at(b, -1, 2).imag(), WithinAbs(0.0, 1e-10));
        }
    }
    CHECK(real_count == 2);
}

TEST_CASE("expand_branches: multi-quasi-elliptic cubic", "[puiseux]") {
    auto set = expand_branches(P("xi^3 + i*x*xi^2 + x^2"), Direction::PlusInfinity);
    REQUIRE(set.branches.size() == 3);
    auto ls = lambdas(set);
    // lambdas: {0, 0, -i}
    CHECK_THAT(std::abs(ls[0] - Complex(0, -1)), WithinAbs(0.0, 1e-10));
    CHECK_THAT(std::abs(ls[1]), WithinAbs(0.0, 1e-12));
    CHECK_THAT(std::abs(ls[2]), WithinAbs(0.0, 1e-12));
    // half-exponent branches carry +-sqrt(i) = +-e^{i pi/4}
    const double r2 = std::sqrt(0.5);
    int matched = 0;
    for (const auto& b : set.branches) {
        Complex c = term_at(b, 1, 2);
        if (std::abs(c) < 0.5) continue;
        ++matched;
        CHECK_THAT(std::abs(c - Complex(r2, r2)) * std::abs(c + Complex(r2, r2)), WithinAbs(0.0, 1e-8));
    }
    CHECK(matched == 2);
}

TEST_CASE("expand_branches: minus direction runs on reflect(p)", "[puiseux]") {
    // xi^2 + x: toward +inf roots are +-i sqrt(x); toward -inf they are real.
    auto plus = expand_branches(P("xi^2 + x"), Direction::PlusInfinity);
    auto minus = expand_branches(P("xi^2 + x"), Direction::MinusInfinity);
    CHECK(minus.symbol == reflect(P("xi^2 + x")));
    REQUIRE(plus.branches.size() == 2);
    REQUIRE(minus.branches.size() == 2);
    for (const auto& b : plus.branches) CHECK(std::abs(term_at(b, 1, 2).imag()) > 0.9);
    for (const auto& b : minus.branches) {
        CHECK(std::abs(term_at(b, 1, 2).real()) > 0.9);
        CHECK_THAT(term_at(b, 1, 2).imag(), WithinAbs(0.0, 1e-10));
    }
}

TEST_CASE("expand_branches: exact double root reported coincident", "[puiseux]") {
    auto set = expand_branches(P("(xi - x)^2"), Direction::PlusInfinity);
    REQUIRE(set.branches.size() == 2);
    CHECK(set.branches[0].coincident_group == set.branches[1].coincident_group);
    CHECK(set.branches[0].coincident_group >= 0);
    CHECK(set.branches[0].coincidence == CoincidenceKind::ExactMultiple);
    for (const auto& b : set.branches) {
        CHECK(b.exact);
        CHECK_THAT(std::abs(b.lambda() - Complex(1, 0)), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("expand_branches rejects unnormalized symbols and shallow depth", "[puiseux]") {
    CHECK_THROWS_AS(expand_branches(P("x*xi"), Direction::PlusInfinity), std::invalid_argument);
    EngineOptions opt;
    opt.depth = Rational(0);
    CHECK_THROWS_AS(expand_branches(P("xi^2 + x^2"), Direction::PlusInfinity, opt), std::invalid_argument);
}

TEST_CASE("evaluate_series", "[puiseux]") {
    PuiseuxSeries s;
    s.terms[Rational(1)] = Complex(1, 0);
    s.terms[Rational(0)] = Complex(-1, 0);
    CHECK_THAT(std::abs(evaluate_series(s, 10.0) - Complex(9, 0)), WithinAbs(0.0, 1e-12));
    PuiseuxSeries t;
    t.terms[Rational(1)] = Complex(0, 1);
    CHECK_THAT(std::abs(evaluate_series(t, 4.0) - Complex(0, 4)), WithinAbs(0.0, 1e-12));
    PuiseuxSeries u;
    u.terms[Rational(1, 4)] = Complex(1, 0);
    u.terms[Rational(-1, 2)] = Complex(0.5, 0);
    CHECK_THAT(evaluate_series(u, 16.0).real(), WithinAbs(2.125, 1e-12));
}

TEST_CASE("residual slopes: sentinels and golden value", "[puiseux]") {
    std::vector<double> grid;
    for (int i = 0; i < 9; ++i) grid.push_back(std::pow(10.0, 2.0 + 0.25 * i));

    // exact roots: residual identically zero -> -inf sentinel
    {
        auto set = expand_branches(P("xi^2 + x^2"), Direction::PlusInfinity);
        for (double s : set.residual_slopes) CHECK(s == -std::numeric_limits<double>::infinity());
        PuiseuxSeries exact;
        exact.terms[Rational(1)] = Complex(1, 0);
        exact.terms[Rational(0)] = Complex(-1, 0);
        CHECK(residual_slope(P("xi - x + 1"), exact, grid) == -std::numeric_limits<double>::infinity());
    }
    // truncated quartic branch x^(1/4) + (1/2) x^(-1/2): the next term sits
    // at -5/4, so the residual slope is close to 3*(1/4) - 5/4 = -1/2
    // (golden value from the numeric experiment: about -0.50).
    {
        PuiseuxSeries b;
        b.direction = Direction::PlusInfinity;
        b.ramification = 4;
        b.truncation_exponent = Rational(-5, 4);
        b.terms[Rational(1, 4)] = Complex(1, 0);
        b.terms[Rational(-1, 2)] = Complex(0.5, 0);
        double slope = residual_slope(P("xi^4 - 2*xi - x"), b, grid);
        CHECK_THAT(slope, WithinAbs(-0.5, 0.1));
        CHECK(slope <= residual_slope_bound(4, b.truncation_exponent) + 0.2);
    }
}

TEST_CASE("vieta at the top: lambdas match the leading-slope polynomial", "[puiseux][property]") {
    // The multiset {lambda_j} must consist of the roots of the slope
    // polynomial. Compare via its coefficients (Vieta), which is exact in
    // the multiset and robust at multiple roots: monic coefficients of
    // prod (t - lambda_j) against the normalized slope polynomial, 1e-8.
    for (const char* txt : {"xi^2 + x^2", "xi^3 + i*x*xi^2 + x^2", "xi^4 - 2*xi - x", "xi^2 - 2*x*xi + x^2 + x",
                            "xi^3 - x^3 + x*xi + 1"}) {
        auto p = P(txt);
        auto [normalized, lam] = normalize_leading(p);
        auto set = expand_branches(normalized, Direction::PlusInfinity);
        auto got = lambdas(set);
        auto slope_poly = leading_slope_poly(normalized);
        REQUIRE(slope_poly.degree() == static_cast<int>(got.size()));
        std::vector<Complex> prod{Complex(1, 0)};
        for (const auto& r : got) {
            prod.push_back(Complex(0, 0));
            for (std::size_t k = prod.size() - 1; k > 0; --k) prod[k] = prod[k - 1] - r * prod[k];
            prod[0] = -r * prod[0];
        }
        Complex lead = slope_poly.lead().to_complex();
        for (std::size_t k = 0; k < prod.size(); ++k) {
            Complex want = slope_poly.coeff(k).to_complex() / lead;
            CAPTURE(txt, k);
            CHECK_THAT(std::abs(prod[k] - want), WithinAbs(0.0, 1e-8 * (1.0 + std::abs(want))));
        }
    }
}

TEST_CASE("reconstruction: product of truncated branches matches p", "[puiseux][property]") {
    // Coefficients of prod (xi - xi_j(x)) reproduce p's coefficients for
    // monomials whose x-exponent is above the truncation noise floor
    // beta > trunc + (m - alpha - 1).
    for (const char* txt : {"xi^2 + x^2", "xi^3 + i*x*xi^2 + x^2", "xi^4 - 2*xi - x", "xi^2 + x"}) {
        auto p = P(txt);
        auto set = expand_branches(p, Direction::PlusInfinity);
        int m = p.total_degree();
        // evaluate both sides at sample points (xi symbolic, x numeric):
        // compare coefficient functions via finite sampling in xi
        for (double x : {200.0, 1000.0}) {
            std::vector<Complex> roots;
            for (const auto& b : set.branches) roots.push_back(evaluate_series(b, x));
            // product coefficients (monic)
            std::vector<Complex> coeff{Complex(1, 0)};
            for (const auto& r : roots) {
                coeff.push_back(Complex(0, 0));
                for (std::size_t k = coeff.size() - 1; k > 0; --k) coeff[k] = coeff[k - 1] - r * coeff[k];
                coeff[0] = -r * coeff[0];
            }
            // p's xi-coefficients at this x, divided by the leading one
            Complex lead = p.coeff(m, 0).to_complex();
            for (int alpha = 0; alpha <= m; ++alpha) {
                Complex expect(0, 0);
                for (const auto& [mono, v] : p.terms())
                    if (mono.xi == alpha) expect += v.to_complex() * std::pow(x, mono.x);
                expect /= lead;
                Complex got = coeff[static_cast<std::size_t>(alpha)];
                double trunc = to_double(set.depth);
                double floor_exp = trunc + (m - alpha - 1) + 0.3;
                double tol = 1e-6 * std::max(1.0, std::abs(expect)) + std::pow(x, floor_exp);
                CAPTURE(txt, x, alpha);
                CHECK_THAT(std::abs(got - expect), WithinAbs(0.0, tol));
            }
        }
    }
}

TEST_CASE("determinism: identical runs produce identical term lists", "[puiseux][property]") {
    auto a = expand_branches(P("xi^4 - 2*xi - x"), Direction::PlusInfinity);
    auto b = expand_branches(P("xi^4 - 2*xi - x"), Direction::PlusInfinity);
    REQUIRE(a.branches.size() == b.branches.size());
    for (std::size_t i = 0; i < a.branches.size(); ++i) {
        REQUIRE(a.branches[i].terms.size() == b.branches[i].terms.size());
        auto it = a.branches[i].terms.begin();
        auto jt = b.branches[i].terms.begin();
        for (; it != a.branches[i].terms.end(); ++it, ++jt) {
            CHECK(it->first == jt->first);
            CHECK(it->second == jt->second);
        }
    }
}
