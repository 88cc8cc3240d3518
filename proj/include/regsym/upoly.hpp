#pragma once

// Dense univariate polynomials over an exact field, plus the exact
// real-root machinery (Sturm chains) used by the fast-path classifiers.
//
// UPoly<T> stores coefficients ascending in degree with no trailing zeros.
// T is Rational or GaussianRational (any exact field with ==, +, -, *, /).

#include "regsym/rational.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace regsym {

template <class T>
struct UPoly {
    std::vector<T> c;  // c[k] multiplies t^k

    UPoly() = default;
    explicit UPoly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
    static UPoly constant(T v) {
        UPoly p;
        p.c.push_back(std::move(v));
        p.trim();
        return p;
    }
    static UPoly monomial(T v, std::size_t k) {
        UPoly p;
        p.c.assign(k + 1, T(0));
        p.c[k] = std::move(v);
        p.trim();
        return p;
    }

    void trim() {
        while (!c.empty() && c.back() == T(0)) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const T& lead() const { return c.back(); }
    T coeff(std::size_t k) const { return k < c.size() ? c[k] : T(0); }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }

    UPoly operator-() const {
        UPoly r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        UPoly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), T(0));
        for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.coeff(k) + b.coeff(k);
        r.trim();
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        UPoly r;
        r.c.assign(a.c.size() + b.c.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend UPoly operator*(const T& s, UPoly p) {
        for (auto& v : p.c) v = s * v;
        p.trim();
        return p;
    }

    UPoly derivative() const {
        UPoly r;
        for (std::size_t k = 1; k < c.size(); ++k) r.c.push_back(T(static_cast<long long>(k)) * c[k]);
        r.trim();
        return r;
    }

    template <class S>
    S eval(const S& t) const {
        S acc(0);
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + S(c[k]);
        return acc;
    }

    std::complex<double> eval_c(const std::complex<double>& z) const {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + to_complex_value(c[k]);
        return acc;
    }

    static std::complex<double> to_complex_value(const Rational& r) { return {to_double(r), 0.0}; }
    static std::complex<double> to_complex_value(const GaussianRational& g) { return g.to_complex(); }
};

using QPoly = UPoly<Rational>;         // rational coefficients
using GPoly = UPoly<GaussianRational>; // Gaussian-rational coefficients

template <class T>
UPoly<T> monic(const UPoly<T>& p) {
    if (p.is_zero()) return p;
    UPoly<T> r = p;
    T inv = T(1) / p.lead();
    for (auto& v : r.c) v = v * inv;
    return r;
}

// Euclidean division: a = q*b + r, deg r < deg b. b must be nonzero.
template <class T>
std::pair<UPoly<T>, UPoly<T>> divrem(const UPoly<T>& a, const UPoly<T>& b) {
    if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
    UPoly<T> q, r = a;
    if (r.degree() >= b.degree()) q.c.assign(r.c.size() - b.c.size() + 1, T(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        T f = r.lead() / b.lead();
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        q.c[shift] = f;
        for (std::size_t k = 0; k < b.c.size(); ++k) r.c[shift + k] -= f * b.c[k];
        r.trim();
    }
    q.trim();
    return {q, r};
}

// Monic gcd via Euclid (field coefficients, so this is exact and total).
template <class T>
UPoly<T> poly_gcd(UPoly<T> a, UPoly<T> b) {
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        (void)q;
        a = std::move(b);
        b = monic(r);
    }
    return monic(a);
}

// Yun's squarefree decomposition: returns {(f_k, k)} with p ~ prod f_k^k,
// each f_k squarefree, pairwise coprime, k >= 1, deg f_k >= 1.
template <class T>
std::vector<std::pair<UPoly<T>, int>> squarefree_decomposition(const UPoly<T>& p) {
    std::vector<std::pair<UPoly<T>, int>> out;
    if (p.degree() < 1) return out;
    UPoly<T> f = monic(p);
    UPoly<T> fp = f.derivative();
    UPoly<T> a = poly_gcd(f, fp);
    UPoly<T> b = divrem(f, a).first;
    UPoly<T> cpart = divrem(fp, a).first;
    UPoly<T> d = cpart - b.derivative();
    int k = 1;
    while (b.degree() >= 1) {
        UPoly<T> g = poly_gcd(b, d);
        if (g.degree() >= 1) out.emplace_back(g, k);
        b = divrem(b, g).first;
        cpart = divrem(d, g).first;
        d = cpart - b.derivative();
        ++k;
    }
    return out;
}

namespace detail {

inline int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Sign of p at +inf / -inf from the leading coefficient.
inline int sign_at_infinity(const QPoly& p, bool plus) {
    if (p.is_zero()) return 0;
    int s = sgn(p.lead());
    if (!plus && (p.degree() % 2 == 1)) s = -s;
    return s;
}

inline int sign_variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

}  // namespace detail

// Number of distinct real roots of a rational polynomial (Sturm's theorem,
// applied to the squarefree part).
inline int count_real_roots(const QPoly& p) {
    if (p.degree() < 1) return 0;
    QPoly f = divrem(p, poly_gcd(p, p.derivative())).first;  // squarefree part
    if (f.degree() < 1) return 0;
    std::vector<QPoly> chain{f, f.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() >= 1) {
        auto r = divrem(chain[chain.size() - 2], chain.back()).second;
        chain.push_back(-r);
    }
    std::vector<int> at_minus, at_plus;
    for (const auto& q : chain) {
        at_minus.push_back(detail::sign_at_infinity(q, false));
        at_plus.push_back(detail::sign_at_infinity(q, true));
    }
    return detail::sign_variations(at_minus) - detail::sign_variations(at_plus);
}

inline QPoly real_part(const GPoly& p) {
    QPoly r;
    for (const auto& v : p.c) r.c.push_back(v.re);
    r.trim();
    return r;
}

inline QPoly imag_part(const GPoly& p) {
    QPoly r;
    for (const auto& v : p.c) r.c.push_back(v.im);
    r.trim();
    return r;
}

// Exact test: does p(t) = 0 have a real solution t? A real root of p is a
// common real root of Re p and Im p, i.e. a real root of their gcd.
// p must be nonzero.
inline bool has_real_root(const GPoly& p) {
    if (p.is_zero()) throw std::domain_error("has_real_root: zero polynomial");
    QPoly u = real_part(p), v = imag_part(p);
    QPoly g;
    if (v.is_zero())
        g = u;
    else if (u.is_zero())
        g = v;
    else
        g = poly_gcd(u, v);
    return count_real_roots(g) > 0;
}

inline std::string to_string(const QPoly& p, const std::string& var = "t") {
    if (p.is_zero()) return "0";
    std::string s;
    for (std::size_t k = p.c.size(); k-- > 0;) {
        if (p.c[k] == 0) continue;
        Rational mag = p.c[k];
        if (!s.empty()) {
            s += p.c[k] > 0 ? " + " : " - ";
            if (p.c[k] < 0) mag = -mag;
        }
        std::string coeff = to_fraction_string(mag);
        if (k == 0) {
            s += coeff;
            continue;
        }
        if (mag == 1)
            s += var;
        else if (mag == -1)
            s += "-" + var;
        else
            s += coeff + "*" + var;
        if (k > 1) s += "^" + std::to_string(k);
    }
    return s;
}

inline std::string to_string(const GPoly& p, const std::string& var = "t") {
    if (p.is_zero()) return "0";
    std::string s;
    for (std::size_t k = p.c.size(); k-- > 0;) {
        if (p.c[k].is_zero()) continue;
        GaussianRational v = p.c[k];
        if (!s.empty()) {
            bool neg = (v.im == 0 && v.re < 0) || (v.re == 0 && v.im < 0);
            s += neg ? " - " : " + ";
            if (neg) v = -v;
        }
        std::string coeff = to_string(v);
        if (coeff.find('+') != std::string::npos || coeff.find('-') != std::string::npos) coeff = "(" + coeff + ")";
        if (k == 0) {
            s += coeff;
        } else {
            if (coeff == "1")
                s += var;
            else if (coeff == "-1")
                s += "-" + var;
            else
                s += coeff + "*" + var;
            if (k > 1) s += "^" + std::to_string(k);
        }
    }
    return s;
}

}  // namespace regsym
