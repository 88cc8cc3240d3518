#pragma once

// Exact bivariate polynomials in (x, xi) over the Gaussian rationals.
// Monomial keys are (xi-degree, x-degree); zero coefficients are never
// stored; the zero polynomial has an empty term map.

#include "regsym/rational.hpp"
#include "regsym/upoly.hpp"

#include <complex>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace regsym {

struct Mono {
    int xi = 0;  // exponent of xi
    int x = 0;   // exponent of x

    int total() const { return xi + x; }
    friend auto operator<=>(const Mono&, const Mono&) = default;
};

class BivariatePoly {
  public:
    using TermMap = std::map<Mono, GaussianRational>;

    BivariatePoly() = default;
    static BivariatePoly constant(GaussianRational v) {
        BivariatePoly p;
        p.add_term({0, 0}, std::move(v));
        return p;
    }
    static BivariatePoly variable_x() {
        BivariatePoly p;
        p.add_term({0, 1}, GaussianRational(1));
        return p;
    }
    static BivariatePoly variable_xi() {
        BivariatePoly p;
        p.add_term({1, 0}, GaussianRational(1));
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Mono m, GaussianRational v) {
        if (v.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, std::move(v));
        } else {
            it->second += v;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GaussianRational coeff(int xi_deg, int x_deg) const {
        auto it = terms_.find({xi_deg, x_deg});
        return it == terms_.end() ? GaussianRational(0) : it->second;
    }

    // Max of xi+x over stored terms; 0 for constants and for the zero poly.
    int total_degree() const {
        int d = 0;
        for (const auto& [m, v] : terms_) d = std::max(d, m.total());
        return d;
    }
    int xi_degree() const {
        int d = 0;
        for (const auto& [m, v] : terms_) d = std::max(d, m.xi);
        return d;
    }
    int x_degree() const {
        int d = 0;
        for (const auto& [m, v] : terms_) d = std::max(d, m.x);
        return d;
    }

    friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) { return a.terms_ == b.terms_; }

    BivariatePoly operator-() const {
        BivariatePoly r;
        for (const auto& [m, v] : terms_) r.terms_.emplace(m, -v);
        return r;
    }
    friend BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) {
        BivariatePoly r = a;
        for (const auto& [m, v] : b.terms_) r.add_term(m, v);
        return r;
    }
    friend BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b) { return a + (-b); }
    friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
        BivariatePoly r;
        for (const auto& [ma, va] : a.terms_)
            for (const auto& [mb, vb] : b.terms_) r.add_term({ma.xi + mb.xi, ma.x + mb.x}, va * vb);
        return r;
    }
    friend BivariatePoly operator*(const GaussianRational& s, const BivariatePoly& p) {
        BivariatePoly r;
        for (const auto& [m, v] : p.terms_) r.add_term(m, s * v);
        return r;
    }

    BivariatePoly pow(unsigned e) const {
        BivariatePoly out = constant(GaussianRational(1));
        BivariatePoly base = *this;
        while (e > 0) {
            if (e & 1u) out = out * base;
            base = base * base;
            e >>= 1u;
        }
        return out;
    }

    BivariatePoly derivative_x() const {
        BivariatePoly r;
        for (const auto& [m, v] : terms_)
            if (m.x > 0) r.add_term({m.xi, m.x - 1}, GaussianRational(m.x) * v);
        return r;
    }
    BivariatePoly derivative_xi() const {
        BivariatePoly r;
        for (const auto& [m, v] : terms_)
            if (m.xi > 0) r.add_term({m.xi - 1, m.x}, GaussianRational(m.xi) * v);
        return r;
    }

    // Coefficient-wise complex conjugation (x, xi stay real variables).
    BivariatePoly conjugate_coefficients() const {
        BivariatePoly r;
        for (const auto& [m, v] : terms_) r.terms_.emplace(m, v.conj());
        return r;
    }

    std::complex<double> eval(const std::complex<double>& xval, const std::complex<double>& xival) const {
        // Horner in xi; plain power sums in x (degrees are small).
        std::complex<double> acc(0.0, 0.0);
        int dxi = xi_degree();
        for (int a = dxi; a >= 0; --a) {
            std::complex<double> row(0.0, 0.0);
            std::complex<double> xp(1.0, 0.0);
            int last = 0;
            for (const auto& [m, v] : terms_) {
                if (m.xi != a) continue;
                for (; last < m.x; ++last) xp *= xval;
                row += v.to_complex() * xp;
            }
            acc = acc * xival + row;
        }
        return acc;
    }

  private:
    TermMap terms_;
};

// Coefficient of xi^a as a univariate polynomial in x.
inline GPoly xi_coefficient(const BivariatePoly& p, int a) {
    GPoly out;
    for (const auto& [m, v] : p.terms())
        if (m.xi == a) {
            if (static_cast<std::size_t>(m.x) >= out.c.size()) out.c.resize(m.x + 1, GaussianRational(0));
            out.c[m.x] = v;
        }
    out.trim();
    return out;
}

// p as sum over xi-powers of univariate x-polynomials, ascending xi-degree.
inline std::vector<GPoly> xi_coefficient_list(const BivariatePoly& p) {
    std::vector<GPoly> out(static_cast<std::size_t>(p.xi_degree()) + 1);
    for (int a = 0; a <= p.xi_degree(); ++a) out[a] = xi_coefficient(p, a);
    return out;
}

inline BivariatePoly from_xi_coefficients(const std::vector<GPoly>& coeffs) {
    BivariatePoly p;
    for (std::size_t a = 0; a < coeffs.size(); ++a)
        for (std::size_t b = 0; b < coeffs[a].c.size(); ++b)
            p.add_term({static_cast<int>(a), static_cast<int>(b)}, coeffs[a].c[b]);
    return p;
}

// Sum of terms with xi + x == j (possibly zero).
inline BivariatePoly homogeneous_part(const BivariatePoly& p, int j) {
    BivariatePoly r;
    for (const auto& [m, v] : p.terms())
        if (m.total() == j) r.add_term(m, v);
    return r;
}

// p(-x, xi); roots of the result at +infinity are x -> xi_j(-x).
inline BivariatePoly reflect(const BivariatePoly& p) {
    BivariatePoly r;
    for (const auto& [m, v] : p.terms()) r.add_term(m, (m.x % 2 == 0) ? v : -v);
    return r;
}

// x -> x + lambda*xi, expanded exactly. Total degree is preserved.
inline BivariatePoly shear(const BivariatePoly& p, const Rational& lambda) {
    if (lambda == 0) return p;
    // Pascal row cache for (x + lambda*xi)^b.
    std::vector<std::vector<BigInt>> binom;
    auto binom_at = [&](int n, int k) -> BigInt {
        while (static_cast<int>(binom.size()) <= n) {
            int r = static_cast<int>(binom.size());
            std::vector<BigInt> row(r + 1, BigInt(1));
            for (int j = 1; j < r; ++j) row[j] = binom[r - 1][j - 1] + binom[r - 1][j];
            binom.push_back(std::move(row));
        }
        return binom[n][k];
    };
    BivariatePoly out;
    for (const auto& [m, v] : p.terms()) {
        for (int j = 0; j <= m.x; ++j) {
            // x^(m.x-j) * (lambda*xi)^j
            GaussianRational c = v * GaussianRational(Rational(binom_at(m.x, j)) * rational_pow(lambda, j));
            out.add_term({m.xi + j, m.x - j}, c);
        }
    }
    return out;
}

// The polynomial whose roots are the leading slopes lambda_j:
// sum over the top homogeneous part of c_{a, m-a} * t^a, m = total degree.
inline GPoly leading_slope_poly(const BivariatePoly& p) {
    int m = p.total_degree();
    GPoly out;
    out.c.assign(m + 1, GaussianRational(0));
    for (const auto& [mono, v] : p.terms())
        if (mono.total() == m) out.c[mono.xi] = v;
    out.trim();
    return out;
}

struct ZeroPolynomial : std::domain_error {
    ZeroPolynomial() : std::domain_error("zero polynomial") {}
};

// Smallest shear (0, 1, -1, 2, -2, ...) making the xi^m coefficient nonzero,
// m = total degree. Returns (sheared polynomial, lambda).
inline std::pair<BivariatePoly, Rational> normalize_leading(const BivariatePoly& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    int m = p.total_degree();
    if (!p.coeff(m, 0).is_zero()) return {p, Rational(0)};
    // xi^m coefficient after shear by lambda is sum_{a+b=m} c_{a,b} lambda^b,
    // a nonzero polynomial in lambda, so the search terminates.
    GPoly top;
    top.c.assign(m + 1, GaussianRational(0));
    for (const auto& [mono, v] : p.terms())
        if (mono.total() == m) top.c[mono.x] = v;
    top.trim();
    for (long long k = 1;; ++k) {
        for (long long s : {k, -k}) {
            Rational lambda(s);
            if (!top.eval(GaussianRational(lambda)).is_zero()) return {shear(p, lambda), lambda};
        }
    }
}

inline std::string to_string(const BivariatePoly& p) {
    if (p.is_zero()) return "0";
    // Order: descending total degree, then descending xi-degree.
    std::vector<std::pair<Mono, GaussianRational>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.total() != b.first.total()) return a.first.total() > b.first.total();
        return a.first.xi > b.first.xi;
    });
    std::string s;
    for (const auto& [m, v] : terms) {
        std::string coeff = to_string(v);
        bool negated = false;
        if (!s.empty()) {
            if (v.im == 0 && v.re < 0) {
                s += " - ";
                coeff = to_string(-v);
                negated = true;
            } else if (v.re == 0 && v.im < 0) {
                s += " - ";
                coeff = to_string(-v);
                negated = true;
            } else {
                s += " + ";
            }
        }
        (void)negated;
        std::string vars;
        if (m.x > 0) vars += m.x == 1 ? "x" : "x^" + std::to_string(m.x);
        if (m.xi > 0) {
            if (!vars.empty()) vars += "*";
            vars += m.xi == 1 ? "xi" : "xi^" + std::to_string(m.xi);
        }
        if (vars.empty()) {
            s += coeff;
        } else if (coeff == "1") {
            s += vars;
        } else if (coeff == "-1") {
            s += "-" + vars;
        } else {
            if (coeff.find('+') != std::string::npos || coeff.find('-') != std::string::npos) coeff = "(" + coeff + ")";
            s += coeff + "*" + vars;
        }
    }
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const BivariatePoly& p) { return os << to_string(p); }

}  // namespace regsym
