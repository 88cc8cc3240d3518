#pragma once

// Factorization machinery: signed elementary symmetric functions, the
// expansion of a_0 D^{r1} + ... composed with prod (D - xi_j(x)), the
// Weyl-to-standard product symbol, and the explicit inverse of the
// interpolation matrix A built from the node polynomials.
//
// Everything is templated over the scalar: GaussianRational for exact
// identity checks, std::complex<double> when nodes come from branch data.

#include "regsym/bivariate.hpp"
#include "regsym/diff_operator.hpp"
#include "regsym/quantize.hpp"
#include "regsym/rational.hpp"
#include "regsym/upoly.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace regsym {

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct CoincidentNodes : std::domain_error {
    CoincidentNodes() : std::domain_error("coincident interpolation nodes") {}
};

// Signed convention: sigma_0 = 1, sigma_1 = -sum, sigma_h = (-1)^h e_h, so
// that prod (t - v_j) = sum_h sigma_h t^(m-h).
template <class T>
T elementary_symmetric(int h, const std::vector<T>& values) {
    if (h < 0 || h > static_cast<int>(values.size()))
        throw IndexOutOfRange("elementary_symmetric: order " + std::to_string(h) + " out of range");
    // coefficients of prod (t - v_j), ascending; degree m
    std::vector<T> c{T(1)};
    for (const T& v : values) {
        c.push_back(T(0));
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - v * c[k];
        c[0] = T(0) - v * c[0];
    }
    // sigma_h = coefficient of t^(m-h)
    return c[values.size() - static_cast<std::size_t>(h)];
}

// Works for polynomial values too (sigma of xi_j(x) as polynomials in x).
template <class T>
UPoly<T> elementary_symmetric_poly(int h, const std::vector<UPoly<T>>& values) {
    if (h < 0 || h > static_cast<int>(values.size()))
        throw IndexOutOfRange("elementary_symmetric: order " + std::to_string(h) + " out of range");
    std::vector<UPoly<T>> c{UPoly<T>::constant(T(1))};
    for (const auto& v : values) {
        c.push_back(UPoly<T>{});
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - v * c[k];
        c[0] = -(v * c[0]);
    }
    return c[values.size() - static_cast<std::size_t>(h)];
}

// --------------------------------------------------------------------------
// Factored-operator expansion.

template <class T>
struct FactoredExpansion {
    DiffOperator<T> op;                   // sum_k a_k D^(r1-k) . prod (D - xi_j)
    std::vector<UPoly<T>> main_term;      // slot k: sum_{l+h=k} a_l sigma_h(xi's)
    std::vector<UPoly<T>> remainder;      // R_k = coefficient_k - main_term_k
};

// Composes the left factor sum_k a_k(x) D^(r1-k) with prod_j (D - xi_j(x))
// and splits each coefficient slot into the symmetric-function main term
// plus the derivative remainder. R_0 = R_1 = 0 always; every R_k vanishes
// when all xi_j are constants.
template <class T>
FactoredExpansion<T> expand_factored(const std::vector<UPoly<T>>& a_polys, const std::vector<UPoly<T>>& xi_polys) {
    if (a_polys.empty() || a_polys.front().is_zero())
        throw std::invalid_argument("expand_factored: a_0 must be nonzero");
    const int r1 = static_cast<int>(a_polys.size()) - 1;
    const int r2 = static_cast<int>(xi_polys.size());

    DiffOperator<T> left{std::vector<UPoly<T>>(a_polys)};
    DiffOperator<T> right(std::vector<UPoly<T>>{UPoly<T>::constant(T(1))});
    for (const auto& xi : xi_polys) {
        DiffOperator<T> factor(std::vector<UPoly<T>>{UPoly<T>::constant(T(1)), -xi});
        right = compose_operators(right, factor);
    }

    FactoredExpansion<T> out;
    out.op = compose_operators(left, right);

    for (int k = 0; k <= r1 + r2; ++k) {
        UPoly<T> main;
        for (int l = 0; l <= std::min(k, r1); ++l) {
            int h = k - l;
            if (h > r2) continue;
            main = main + a_polys[static_cast<std::size_t>(l)] * elementary_symmetric_poly(h, xi_polys);
        }
        UPoly<T> coeff =
            k <= out.op.order() ? out.op.coeffs[static_cast<std::size_t>(k)] : UPoly<T>{};  // op order = r1+r2
        out.main_term.push_back(main);
        out.remainder.push_back(coeff - main);
    }

    if constexpr (std::is_same_v<T, GaussianRational>) {
        if (!out.remainder[0].is_zero() || (r1 + r2 >= 1 && !out.remainder[1].is_zero()))
            throw std::logic_error("expand_factored: R_0 or R_1 nonzero");
    }
    return out;
}

// --------------------------------------------------------------------------
// Weyl-to-standard product symbol.

struct WeylProductResult {
    BivariatePoly weyl;       // (sum a_j xi^(r1-j)) * (sum b_h xi^(r2-h))
    BivariatePoly standard;   // the same operator's left symbol
    std::vector<GPoly> main_term;  // slot k: sum_{l+h=k} a_l b_h
    std::vector<GPoly> remainder;  // R_k, a combination of (a_l b_h)^(nu), nu >= 1
};

inline WeylProductResult weyl_product_standard(const std::vector<GPoly>& a_polys, const std::vector<GPoly>& b_polys) {
    const int r1 = static_cast<int>(a_polys.size()) - 1;
    const int r2 = static_cast<int>(b_polys.size()) - 1;
    if (r1 < 0 || r2 < 0) throw std::invalid_argument("weyl_product_standard: empty factor");

    auto as_bivariate = [](const std::vector<GPoly>& coeffs) {
        BivariatePoly p;
        int top = static_cast<int>(coeffs.size()) - 1;
        for (int j = 0; j <= top; ++j)
            for (std::size_t b = 0; b < coeffs[static_cast<std::size_t>(j)].c.size(); ++b)
                p.add_term({top - j, static_cast<int>(b)}, coeffs[static_cast<std::size_t>(j)].c[b]);
        return p;
    };

    WeylProductResult out;
    out.weyl = as_bivariate(a_polys) * as_bivariate(b_polys);
    out.standard = left_from_weyl(out.weyl);
    for (int k = 0; k <= r1 + r2; ++k) {
        GPoly main;
        for (int l = 0; l <= std::min(k, r1); ++l) {
            int h = k - l;
            if (h > r2) continue;
            main = main + a_polys[static_cast<std::size_t>(l)] * b_polys[static_cast<std::size_t>(h)];
        }
        GPoly actual = xi_coefficient(out.standard, r1 + r2 - k);
        out.main_term.push_back(main);
        out.remainder.push_back(actual - main);
    }
    if (!out.remainder[0].is_zero()) throw std::logic_error("weyl_product_standard: R_0 nonzero");
    return out;
}

// --------------------------------------------------------------------------
// Interpolation matrix of the node polynomials and its explicit inverse.

template <class T>
struct Matrix {
    std::vector<std::vector<T>> m;

    static Matrix zero(int n) {
        Matrix a;
        a.m.assign(n, std::vector<T>(n, T(0)));
        return a;
    }
    static Matrix identity(int n) {
        Matrix a = zero(n);
        for (int i = 0; i < n; ++i) a.m[i][i] = T(1);
        return a;
    }
    int size() const { return static_cast<int>(m.size()); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        int n = a.size();
        Matrix r = zero(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) r.m[i][j] += a.m[i][k] * b.m[k][j];
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) { return a.m == b.m; }
};

template <class F>
double max_norm_diff(const Matrix<std::complex<F>>& a, const Matrix<std::complex<F>>& b) {
    F worst(0);
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a.m[i][j] - b.m[i][j]));
    return static_cast<double>(worst);
}

template <class T>
struct InterpMatrix {
    int r1 = 0, r2 = 0;
    std::vector<T> xs;
    Matrix<T> A;
};

// Column j <= r1 holds the coefficients of xi^(r1-j) Q(xi) with
// Q = prod_{k > r1} (xi - xs_k); column j > r1 holds those of
// Q_j = prod_{k != j} (xi - xs_k). Row j holds the coefficients of
// xi^(r1+r2-j) (descending powers down the rows).
template <class T>
InterpMatrix<T> build_matrix_A(const std::vector<T>& xs, int r1, int r2) {
    const int n = r1 + r2;
    if (static_cast<int>(xs.size()) != n) throw std::invalid_argument("build_matrix_A: need r1+r2 nodes");
    InterpMatrix<T> out{r1, r2, xs, Matrix<T>::zero(n)};

    auto poly_from_roots = [](const std::vector<T>& roots) {
        UPoly<T> p = UPoly<T>::constant(T(1));
        for (const T& r : roots) p = p * UPoly<T>(std::vector<T>{T(0) - r, T(1)});
        return p;
    };

    std::vector<T> back(xs.begin() + r1, xs.end());
    UPoly<T> q = poly_from_roots(back);

    for (int j = 1; j <= n; ++j) {
        UPoly<T> col;
        if (j <= r1) {
            col = UPoly<T>::monomial(T(1), static_cast<std::size_t>(r1 - j)) * q;
        } else {
            std::vector<T> omit;
            for (int k = 1; k <= n; ++k)
                if (k != j) omit.push_back(xs[static_cast<std::size_t>(k - 1)]);
            col = poly_from_roots(omit);
        }
        for (int row = 1; row <= n; ++row) out.A.m[row - 1][j - 1] = col.coeff(static_cast<std::size_t>(n - row));
    }
    return out;
}

namespace factorization_detail {

inline bool nodes_coincide(const GaussianRational& a, const GaussianRational& b) { return a == b; }
template <class F>
bool nodes_coincide(const std::complex<F>& a, const std::complex<F>& b) {
    return std::abs(a - b) <= F(1e-12) * (F(1) + std::max(std::abs(a), std::abs(b)));
}

template <class T>
T power(T base, int e) {
    T out(1);
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

}  // namespace factorization_detail

// Explicit inverse B of A: front rows (j <= r1) from the Lagrange-weighted
// symmetric functions of the remaining front nodes, back rows from the
// plain Lagrange weights. Requires pairwise distinct nodes (the entries are
// evaluated from the formulas, which carry the front Vandermonde factors
// even though A itself stays invertible when only front nodes collide).
template <class T>
Matrix<T> inverse_B(const std::vector<T>& xs, int r1, int r2) {
    const int n = r1 + r2;
    if (static_cast<int>(xs.size()) != n) throw std::invalid_argument("inverse_B: need r1+r2 nodes");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (factorization_detail::nodes_coincide(xs[a], xs[b])) throw CoincidentNodes();

    auto lagrange_denominator = [&](int h) {  // prod_{l != h} (x_h - x_l), 1-based h
        T prod(1);
        for (int l = 1; l <= n; ++l)
            if (l != h) prod *= xs[static_cast<std::size_t>(h - 1)] - xs[static_cast<std::size_t>(l - 1)];
        return prod;
    };

    Matrix<T> B = Matrix<T>::zero(n);
    for (int j = 1; j <= n; ++j) {
        for (int k = 1; k <= n; ++k) {
            if (j <= r1) {
                T sum(0);
                for (int h = 1; h <= r1; ++h) {
                    std::vector<T> front_omit;
                    for (int l = 1; l <= r1; ++l)
                        if (l != h) front_omit.push_back(xs[static_cast<std::size_t>(l - 1)]);
                    T weight = factorization_detail::power(xs[static_cast<std::size_t>(h - 1)], n - k) /
                               lagrange_denominator(h);
                    sum += weight * elementary_symmetric(j - 1, front_omit);
                }
                B.m[j - 1][k - 1] = sum;
            } else {
                B.m[j - 1][k - 1] =
                    factorization_detail::power(xs[static_cast<std::size_t>(j - 1)], n - k) / lagrange_denominator(j);
            }
        }
    }
    return B;
}

}  // namespace regsym
