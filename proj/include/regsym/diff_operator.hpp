#pragma once

// Ordinary differential operators sum_k c_k(x) D^(m-k), D = -i d/dx, with
// polynomial coefficients over an exact field or over complex<double>.
// Composition is the exact noncommutative product (D.f = f.D + (Df)).

#include "regsym/bivariate.hpp"
#include "regsym/rational.hpp"
#include "regsym/upoly.hpp"

#include <complex>
#include <vector>

namespace regsym {

template <class T>
T imaginary_unit();
template <>
inline GaussianRational imaginary_unit<GaussianRational>() {
    return GaussianRational::i();
}
template <>
inline std::complex<double> imaginary_unit<std::complex<double>>() {
    return {0.0, 1.0};
}

template <class T>
struct DiffOperator {
    // coeffs[k] multiplies D^(m-k); m = coeffs.size() - 1. Empty = zero
    // operator. The leading slot is nonzero after normalize().
    std::vector<UPoly<T>> coeffs;

    DiffOperator() = default;
    explicit DiffOperator(std::vector<UPoly<T>> cs) : coeffs(std::move(cs)) { normalize(); }

    void normalize() {
        std::size_t drop = 0;
        while (drop < coeffs.size() && coeffs[drop].is_zero()) ++drop;
        if (drop > 0) coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(drop));
    }

    bool is_zero() const { return coeffs.empty(); }
    int order() const { return static_cast<int>(coeffs.size()) - 1; }

    friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.coeffs == b.coeffs; }
};

using DiffOperatorQ = DiffOperator<GaussianRational>;

// Operator with left symbol a(x, xi): c_k(x) = coefficient of xi^(m-k).
inline DiffOperatorQ operator_from_left_symbol(const BivariatePoly& a) {
    int m = a.xi_degree();
    std::vector<GPoly> coeffs;
    for (int k = 0; k <= m; ++k) coeffs.push_back(xi_coefficient(a, m - k));
    return DiffOperatorQ(std::move(coeffs));
}

inline BivariatePoly left_symbol_of(const DiffOperatorQ& op) {
    BivariatePoly out;
    int m = op.order();
    for (int k = 0; k <= m; ++k)
        for (std::size_t b = 0; b < op.coeffs[k].c.size(); ++b)
            out.add_term({m - k, static_cast<int>(b)}, op.coeffs[k].c[b]);
    return out;
}

// D^j u = (-i)^j u^(j).
template <class T>
UPoly<T> d_power_applied(UPoly<T> u, int j) {
    const T minus_i = -imaginary_unit<T>();
    for (int t = 0; t < j; ++t) u = minus_i * u.derivative();
    return u;
}

template <class T>
UPoly<T> apply(const DiffOperator<T>& op, const UPoly<T>& u) {
    UPoly<T> out;
    int m = op.order();
    UPoly<T> du = u;  // D^j u, built up from j = 0
    std::vector<UPoly<T>> dpow{u};
    for (int j = 1; j <= m; ++j) {
        du = d_power_applied(du, 1);
        dpow.push_back(du);
    }
    for (int k = 0; k <= m; ++k) out = out + op.coeffs[k] * dpow[static_cast<std::size_t>(m - k)];
    return out;
}

// Exact noncommutative product. Degrees add; the product is associative.
template <class T>
DiffOperator<T> compose_operators(const DiffOperator<T>& lhs, const DiffOperator<T>& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    int m1 = lhs.order(), m2 = rhs.order();
    std::vector<UPoly<T>> by_power(static_cast<std::size_t>(m1 + m2) + 1);  // index = D-power
    for (int k = 0; k <= m1; ++k) {
        const UPoly<T>& a = lhs.coeffs[k];
        if (a.is_zero()) continue;
        int n = m1 - k;
        for (int h = 0; h <= m2; ++h) {
            const UPoly<T>& b = rhs.coeffs[h];
            if (b.is_zero()) continue;
            int j = m2 - h;
            // D^n (b v) = sum_t C(n,t) (D^t b) (D^(n-t) v)
            UPoly<T> dtb = b;
            long long binom = 1;
            for (int t = 0; t <= n; ++t) {
                if (t > 0) {
                    dtb = d_power_applied(dtb, 1);
                    binom = binom * (n - t + 1) / t;
                }
                if (dtb.is_zero()) break;
                UPoly<T> term = T(binom) * (a * dtb);
                std::size_t power = static_cast<std::size_t>(n - t + j);
                by_power[power] = by_power[power] + term;
            }
        }
    }
    std::vector<UPoly<T>> coeffs;
    for (std::size_t p = by_power.size(); p-- > 0;) coeffs.push_back(by_power[p]);
    return DiffOperator<T>(std::move(coeffs));
}

}  // namespace regsym
