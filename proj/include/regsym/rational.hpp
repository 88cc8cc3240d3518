#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals and Gaussian
// rationals (a + b*i with rational a, b). All ops are exact; equality is
// decidable. Denominators are kept positive and in lowest terms by the
// boost backend.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace regsym {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt num(const Rational& r) { return numerator(r); }
inline BigInt den(const Rational& r) { return denominator(r); }

// "num/den" (or plain "num" when den == 1), the wire format for rationals.
inline std::string to_fraction_string(const Rational& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

// Accepts "n", "-n", "n/d"; throws std::invalid_argument on anything else.
inline Rational rational_from_string(const std::string& text) {
    try {
        return Rational(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

inline Rational rational_pow(Rational base, unsigned e) {
    Rational out(1);
    while (e > 0) {
        if (e & 1u) out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}          // NOLINT(google-explicit-constructor)
    GaussianRational(long long r) : re(r) {}                    // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        Rational n2 = o.re * o.re + o.im * o.im;
        Rational r = (re * o.re + im * o.im) / n2;
        Rational i = (im * o.re - re * o.im) / n2;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
};

inline GaussianRational gpow(GaussianRational base, unsigned e) {
    GaussianRational out(1);
    while (e > 0) {
        if (e & 1u) out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

// i^k, k >= 0.
inline GaussianRational i_power(unsigned k) {
    switch (k % 4u) {
        case 0: return GaussianRational(1);
        case 1: return GaussianRational::i();
        case 2: return GaussianRational(-1);
        default: return -GaussianRational::i();
    }
}

// Rendering used by reports and diagnostics; stays inside the symbol
// grammar so printed symbols re-parse: "3/2", "i", "-2*i", "1 + (1/2)*i".
inline std::string to_string(const GaussianRational& g) {
    if (g.is_zero()) return "0";
    std::string s;
    if (g.re != 0) s += to_fraction_string(g.re);
    if (g.im != 0) {
        if (g.im > 0 && !s.empty()) s += "+";
        if (g.im == -1) {
            s += "-";
        } else if (g.im != 1) {
            std::string f = to_fraction_string(g.im);
            s += ((den(g.im) != 1) ? "(" + f + ")" : f) + "*";
        }
        s += "i";
    }
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << to_string(g); }

}  // namespace regsym
