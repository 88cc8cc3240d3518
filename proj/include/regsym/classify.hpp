#pragma once

// Exact fast-path classifiers for a Weyl symbol p(x, xi). Each class is a
// decidable nonvanishing condition on Gaussian-rational polynomials,
// settled by exact real-root counting (Sturm chains), so no verdict here
// carries floating-point risk.
//
//   ConstantCoefficient  no x-dependence; regular iff p(xi) != 0 on R
//   GloballyElliptic     top part p_m never vanishes off the origin
//   QuasiElliptic        p_{m,q} never vanishes off the origin
//   SGElliptic           both boundary symbols root-free on R
//   General              none of the above; the Theorem path decides

#include "regsym/bivariate.hpp"
#include "regsym/rational.hpp"
#include "regsym/upoly.hpp"

#include <optional>
#include <string>

namespace regsym {

enum class SymbolClass { ConstantCoefficient, GloballyElliptic, QuasiElliptic, SGElliptic, General };

inline const char* to_string(SymbolClass c) {
    switch (c) {
        case SymbolClass::ConstantCoefficient: return "ConstantCoefficient";
        case SymbolClass::GloballyElliptic: return "GloballyElliptic";
        case SymbolClass::QuasiElliptic: return "QuasiElliptic";
        case SymbolClass::SGElliptic: return "SGElliptic";
        default: return "General";
    }
}

struct Classification {
    SymbolClass kind = SymbolClass::General;
    std::optional<Rational> quasi_exponent;      // q for QuasiElliptic
    std::optional<int> sg_m, sg_n;               // rectangle degrees for SGElliptic
    std::optional<bool> constant_regular;        // ConstantCoefficient: p(xi) != 0 on R
    std::string detail;
};

namespace classify_detail {

inline GPoly as_univariate_in_xi(const BivariatePoly& p) {
    GPoly g;
    for (const auto& [m, v] : p.terms()) {
        if (static_cast<std::size_t>(m.xi) >= g.c.size()) g.c.resize(m.xi + 1, GaussianRational(0));
        g.c[m.xi] = v;
    }
    g.trim();
    return g;
}

// p_{m,q}(s, r) for s = +1 or -1, as a polynomial in r.
inline GPoly quasi_principal_at(const BivariatePoly& p, const Rational& q, int m, int sign) {
    GPoly g;
    for (const auto& [mono, v] : p.terms()) {
        if (Rational(mono.xi) + q * mono.x != m) continue;
        GaussianRational c = (sign < 0 && mono.x % 2 == 1) ? -v : v;
        if (static_cast<std::size_t>(mono.xi) >= g.c.size()) g.c.resize(mono.xi + 1, GaussianRational(0));
        g.c[mono.xi] += c;
    }
    g.trim();
    return g;
}

}  // namespace classify_detail

inline Classification classify(const BivariatePoly& p) {
    Classification out;
    if (p.is_zero()) throw ZeroPolynomial();
    const int m = p.total_degree();

    if (p.x_degree() == 0) {
        out.kind = SymbolClass::ConstantCoefficient;
        GPoly g = classify_detail::as_univariate_in_xi(p);
        out.constant_regular = !has_real_root(g);
        out.detail = *out.constant_regular ? "p(xi) has no real zero" : "p(xi) has a real zero";
        return out;
    }

    // Globally elliptic: p_m(1, t) free of real roots and of full xi-degree
    // (the latter covers x = 0; x < 0 follows by homogeneity).
    {
        GPoly slope_poly = leading_slope_poly(p);
        if (slope_poly.degree() == m && !has_real_root(slope_poly)) {
            out.kind = SymbolClass::GloballyElliptic;
            out.detail = "all leading slopes non-real";
            return out;
        }
    }

    // Quasi-elliptic: top homogeneous part is c*xi^m alone; q is the largest
    // rational with a + q*b <= m over the support; p_{m,q}(+-1, r) root-free.
    {
        BivariatePoly top = homogeneous_part(p, m);
        bool top_is_xi_power =
            !p.coeff(m, 0).is_zero() && top.terms().size() == 1 && top.terms().begin()->first == Mono{m, 0};
        bool has_x_term = false;
        std::optional<Rational> q;
        for (const auto& [mono, v] : p.terms())
            if (mono.x > 0) {
                has_x_term = true;
                Rational cand(m - mono.xi, mono.x);
                if (!q || cand < *q) q = cand;
            }
        if (top_is_xi_power && has_x_term && q && *q > 1) {
            GPoly plus = classify_detail::quasi_principal_at(p, *q, m, +1);
            GPoly minus = classify_detail::quasi_principal_at(p, *q, m, -1);
            if (!has_real_root(plus) && !has_real_root(minus)) {
                out.kind = SymbolClass::QuasiElliptic;
                out.quasi_exponent = *q;
                out.detail = "p_{m,q}(+-1, r) has no real roots, q = " + to_fraction_string(*q);
                return out;
            }
        }
    }

    // SG-elliptic: corner coefficient present and both boundary symbols
    // root-free on the real line.
    {
        int mxi = p.xi_degree(), nx = p.x_degree();
        if (!p.coeff(mxi, nx).is_zero()) {
            GPoly row;  // sum_a c_{a, nx} xi^a
            row.c.assign(mxi + 1, GaussianRational(0));
            GPoly col;  // sum_b c_{mxi, b} x^b
            col.c.assign(nx + 1, GaussianRational(0));
            for (const auto& [mono, v] : p.terms()) {
                if (mono.x == nx) row.c[mono.xi] = v;
                if (mono.xi == mxi) col.c[mono.x] = v;
            }
            row.trim();
            col.trim();
            if (!has_real_root(row) && !has_real_root(col)) {
                out.kind = SymbolClass::SGElliptic;
                out.sg_m = mxi;
                out.sg_n = nx;
                out.detail = "boundary symbols root-free, m = " + std::to_string(mxi) + ", n = " + std::to_string(nx);
                return out;
            }
        }
    }

    out.kind = SymbolClass::General;
    return out;
}

}  // namespace regsym
