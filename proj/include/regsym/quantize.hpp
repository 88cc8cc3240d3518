#pragma once

// Conversion between the standard (left) symbol and the Weyl symbol of a
// differential operator with polynomial coefficients. With D = -i d/dx,
//
//   weyl_from_left:  p = sum_g (1/g!) (-1/2)^g  d_xi^g D_x^g a
//                      = sum_g (1/g!) ( i/2)^g  d_xi^g d_x^g a
//   left_from_weyl:  q = sum_g (1/g!) (-i/2)^g  d_x^g d_xi^g p
//
// Both sums are finite; both maps are linear, exact, and mutually inverse.
// The top homogeneous part is preserved (each g-term drops total degree
// by 2g).

#include "regsym/bivariate.hpp"
#include "regsym/rational.hpp"

namespace regsym {

namespace detail {

inline BivariatePoly quantization_series(const BivariatePoly& a, bool weyl_direction) {
    BivariatePoly out;
    BivariatePoly d = a;  // d_xi^g d_x^g a
    Rational factorial(1);
    Rational half_pow(1);
    for (unsigned g = 0; !d.is_zero(); ++g) {
        if (g > 0) {
            d = d.derivative_x().derivative_xi();
            factorial *= g;
            half_pow /= 2;
            if (d.is_zero()) break;
        }
        // (i/2)^g for weyl_from_left, (-i/2)^g for left_from_weyl
        GaussianRational scale = i_power(g);
        if (!weyl_direction && (g % 4 == 1 || g % 4 == 3)) scale = -scale;
        scale *= GaussianRational(half_pow / factorial);
        out = out + scale * d;
    }
    return out;
}

}  // namespace detail

inline BivariatePoly weyl_from_left(const BivariatePoly& a) { return detail::quantization_series(a, true); }

inline BivariatePoly left_from_weyl(const BivariatePoly& p) { return detail::quantization_series(p, false); }

}  // namespace regsym
