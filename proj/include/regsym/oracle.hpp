#pragma once

// Numerical cross-validation of verdicts.
//
// Two routes to solution growth: the closed-form witness u = exp(i * int
// eta) built from a branch truncation, and direct integration of Pu = 0 as
// a first-order companion system. All magnitudes are tracked in the log
// domain; the integrator renormalizes its state by exact powers of two, so
// scales like exp(x^2/2) stay representable and the recorded log-magnitude
// is invariant under changes of the renormalization interval.

#include "regsym/diff_operator.hpp"
#include "regsym/puiseux.hpp"
#include "regsym/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regsym {

struct InsufficientRange : std::invalid_argument {
    InsufficientRange() : std::invalid_argument("growth grid needs >= 16 points spanning >= 2 decades") {}
};

struct StiffnessFailure : std::runtime_error {
    StiffnessFailure() : std::runtime_error("integrator step size collapsed") {}
};

struct LeadingCoeffVanishes : std::runtime_error {
    LeadingCoeffVanishes() : std::runtime_error("leading coefficient vanishes on the integration span") {}
};

struct GrowthSample {
    std::vector<double> xs;         // strictly increasing, >= 16 points
    std::vector<double> log_abs_u;  // log |u(x)|, extended-range representation
};

enum class GrowthLabel { RapidDecay, PolynomialBounded, SuperPolynomialGrowth };

inline const char* to_string(GrowthLabel g) {
    switch (g) {
        case GrowthLabel::RapidDecay: return "RapidDecay";
        case GrowthLabel::PolynomialBounded: return "PolynomialBounded";
        default: return "SuperPolynomialGrowth";
    }
}

struct GrowthClass {
    GrowthLabel label = GrowthLabel::PolynomialBounded;
    double slope_logx = 0.0;
    double slope_x = 0.0;
    double rms_logx_fit = 0.0;
};

inline std::vector<double> geometric_grid(double x0, double x1, int n) {
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(x0 * std::pow(x1 / x0, static_cast<double>(i) / (n - 1)));
    return xs;
}

// Witness u = exp(i Q), Q the termwise antiderivative of eta from 1. Terms
// with exponent < -1 are dropped (they integrate to bounded tails); an
// exact -1 term integrates to c log x. log|u| = -Im Q, evaluated directly
// in the log domain.
inline GrowthSample counterexample_solution(const PuiseuxSeries& eta, const std::vector<double>& xs) {
    struct ITerm {
        double coeff_im_over;  // Im of the integrated coefficient
        double expo;           // exponent of x in the integral
        bool log_term;
    };
    std::vector<ITerm> terms;
    double const_im = 0.0;
    for (const auto& [e, c] : eta.terms) {
        if (e < Rational(-1)) continue;
        if (e == Rational(-1)) {
            terms.push_back({c.imag(), 0.0, true});
            continue;
        }
        double ep1 = to_double(e) + 1.0;
        terms.push_back({c.imag() / ep1, ep1, false});
        const_im -= c.imag() / ep1;  // antiderivative anchored at x = 1
    }
    GrowthSample out;
    for (double x : xs) {
        double im_q = const_im;
        for (const auto& t : terms) im_q += t.log_term ? t.coeff_im_over * std::log(x) : t.coeff_im_over * std::pow(x, t.expo);
        out.xs.push_back(x);
        out.log_abs_u.push_back(-im_q);
    }
    return out;
}

namespace oracle_detail {

using State = std::vector<Complex>;

struct Derivative {
    std::vector<std::vector<Complex>> coeffs;  // c_0 ... c_m, double-precision copies
    int m = 0;

    explicit Derivative(const std::vector<GPoly>& exact) {
        m = static_cast<int>(exact.size()) - 1;
        for (const auto& g : exact) {
            std::vector<Complex> c;
            for (const auto& v : g.c) c.push_back(v.to_complex());
            coeffs.push_back(std::move(c));
        }
    }

    Complex eval_coeff(std::size_t k, double x) const {
        Complex acc(0, 0);
        const auto& c = coeffs[k];
        for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
        return acc;
    }

    void operator()(double x, const State& y, State& dy) const {
        // y = (u, u', ..., u^(m-1));  u^(m) = -sum_k (c_k/c_0) i^k u^(m-k)
        Complex c0 = eval_coeff(0, x);
        for (int i = 0; i + 1 < m; ++i) dy[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i) + 1];
        Complex acc(0, 0);
        Complex ipow(1, 0);
        for (int k = 1; k <= m; ++k) {
            ipow *= Complex(0, 1);
            acc += eval_coeff(static_cast<std::size_t>(k), x) / c0 * ipow * y[static_cast<std::size_t>(m - k)];
        }
        dy[static_cast<std::size_t>(m - 1)] = -acc;
    }
};

struct RkWorkspace {
    std::vector<State> k;
    State tmp;
    explicit RkWorkspace(std::size_t n) : k(6, State(n)), tmp(n) {}
};

// Cash-Karp 4(5) embedded pair.
inline void rk_step(const Derivative& f, double x, State& y, double h, State& err_out, RkWorkspace& ws) {
    static const double b[6][5] = {{0, 0, 0, 0, 0},
                                   {1.0 / 5, 0, 0, 0, 0},
                                   {3.0 / 40, 9.0 / 40, 0, 0, 0},
                                   {3.0 / 10, -9.0 / 10, 6.0 / 5, 0, 0},
                                   {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27, 0},
                                   {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
    static const double a[6] = {0, 1.0 / 5, 3.0 / 10, 3.0 / 5, 1.0, 7.0 / 8};
    static const double c5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
    static const double c4[6] = {2825.0 / 27648, 0, 18575.0 / 48384, 13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

    const std::size_t n = y.size();
    State& tmp = ws.tmp;
    f(x, y, ws.k[0]);
    for (int s = 1; s < 6; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex acc(0, 0);
            for (int t = 0; t < s; ++t) acc += b[s][t] * ws.k[t][i];
            tmp[i] = y[i] + h * acc;
        }
        f(x + a[s] * h, tmp, ws.k[s]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        Complex y5(0, 0), y4(0, 0);
        for (int s = 0; s < 6; ++s) {
            y5 += c5[s] * ws.k[s][i];
            y4 += c4[s] * ws.k[s][i];
        }
        err_out[i] = h * (y5 - y4);
        tmp[i] = y[i] + h * y5;
    }
    y.swap(tmp);
}

}  // namespace oracle_detail

struct IntegratorOptions {
    double rtol = 1e-12;
    int grid_points = 33;
    int renorm_bits = 48;  // renormalize when the state leaves [2^-b, 2^b]
};

// Integrates P u = 0 over [x0, x1] for each seed of initial conditions at
// x0 (default: the standard basis), recording log|u| on a geometric grid.
// Per-step renormalization by exact powers of two keeps the state bounded.
inline std::vector<GrowthSample> solve_operator_equation(const DiffOperatorQ& P, double x0, double x1,
                                                         std::vector<std::vector<Complex>> seeds = {},
                                                         const IntegratorOptions& opt = {}) {
    const int m = P.order();
    if (m < 1) throw std::invalid_argument("solve_operator_equation: operator order must be >= 1");

    oracle_detail::Derivative f(P.coeffs);

    // Shrink the span past real zeros of the leading coefficient. A zero
    // between grid points shows up as a sharp relative dip.
    double start = x0;
    {
        const int samples = 4096;
        double scale = 0.0;
        std::vector<double> mags(samples + 1);
        for (int i = 0; i <= samples; ++i) {
            double x = x0 + (x1 - x0) * i / samples;
            mags[static_cast<std::size_t>(i)] = std::abs(f.eval_coeff(0, x));
            scale = std::max(scale, mags[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i <= samples; ++i)
            if (mags[static_cast<std::size_t>(i)] <= 1e-3 * scale) start = x0 + (x1 - x0) * (i + 1) / samples;
        if (start > x0 && x1 / start < 10.0) throw LeadingCoeffVanishes();
    }

    if (seeds.empty())
        for (int s = 0; s < m; ++s) {
            std::vector<Complex> e(static_cast<std::size_t>(m), Complex(0, 0));
            e[static_cast<std::size_t>(s)] = Complex(1, 0);
            seeds.push_back(std::move(e));
        }

    std::vector<GrowthSample> out;
    auto grid = geometric_grid(start, x1, opt.grid_points);

    for (const auto& seed : seeds) {
        if (static_cast<int>(seed.size()) != m)
            throw std::invalid_argument("solve_operator_equation: seed size must equal the operator order");
        oracle_detail::State y = seed;
        long long scale_bits = 0;
        double x = grid.front();
        double h = (x1 - start) * 1e-4;
        GrowthSample sample;

        auto record = [&](double at) {
            double mag = std::abs(y[0]);
            sample.xs.push_back(at);
            sample.log_abs_u.push_back(std::log(std::max(mag, 5e-324)) + static_cast<double>(scale_bits) * M_LN2);
        };
        record(x);

        oracle_detail::State err(static_cast<std::size_t>(m));
        oracle_detail::RkWorkspace ws(static_cast<std::size_t>(m));
        for (std::size_t g = 1; g < grid.size(); ++g) {
            double target = grid[g];
            while (x < target) {
                bool landing = target - x <= h;
                double step = landing ? target - x : h;
                oracle_detail::State trial = y;
                oracle_detail::rk_step(f, x, trial, step, err, ws);
                double norm = 0.0;
                for (const auto& v : trial) norm = std::max(norm, std::abs(v));
                for (const auto& v : y) norm = std::max(norm, std::abs(v));
                double ratio = 0.0;
                for (std::size_t i = 0; i < err.size(); ++i) {
                    double tol = opt.rtol * (std::abs(y[i]) + 1e-3 * norm);
                    ratio = std::max(ratio, std::abs(err[i]) / tol);
                }
                if (ratio <= 1.0) {
                    x += step;
                    y = trial;
                    // renormalize by an exact power of two
                    double mx = 0.0;
                    for (const auto& v : y) mx = std::max(mx, std::abs(v));
                    int ex = 0;
                    std::frexp(mx, &ex);
                    if (std::abs(ex) >= opt.renorm_bits) {
                        double fac = std::ldexp(1.0, -ex);
                        for (auto& v : y) v *= fac;
                        scale_bits += ex;
                    }
                    if (!landing) {
                        double grow = (ratio > 0.0) ? 0.9 * std::pow(ratio, -0.2) : 5.0;
                        h = step * std::clamp(grow, 1.0, 5.0);
                    }
                } else {
                    double shrink = std::clamp(0.9 * std::pow(ratio, -0.2), 0.1, 0.9);
                    h = step * shrink;
                }
                if (h < (x1 - start) * 1e-13) throw StiffnessFailure();
            }
            record(target);
        }
        out.push_back(std::move(sample));
    }
    return out;
}

// Classification thresholds: a log-log fit with |slope| <= 50 and small
// residual is polynomially bounded; otherwise the sign of the linear-in-x
// trend separates super-polynomial growth from rapid decay.
inline GrowthClass growth_exponent(const GrowthSample& sample) {
    if (sample.xs.size() < 16 || sample.xs.back() / sample.xs.front() < 100.0) throw InsufficientRange();
    auto fit = [&](bool log_abscissa) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double n = static_cast<double>(sample.xs.size());
        for (std::size_t i = 0; i < sample.xs.size(); ++i) {
            double xv = log_abscissa ? std::log(sample.xs[i]) : sample.xs[i];
            sx += xv;
            sy += sample.log_abs_u[i];
            sxx += xv * xv;
            sxy += xv * sample.log_abs_u[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        double icept = (sy - slope * sx) / n;
        double rss = 0;
        for (std::size_t i = 0; i < sample.xs.size(); ++i) {
            double xv = log_abscissa ? std::log(sample.xs[i]) : sample.xs[i];
            double r = sample.log_abs_u[i] - slope * xv - icept;
            rss += r * r;
        }
        return std::pair<double, double>(slope, std::sqrt(rss / n));
    };
    auto [slope_logx, rms_logx] = fit(true);
    auto [slope_x, rms_x] = fit(false);
    GrowthClass out;
    out.slope_logx = slope_logx;
    out.slope_x = slope_x;
    out.rms_logx_fit = rms_logx;
    if (std::abs(slope_logx) <= 50.0 && rms_logx <= 0.5 + 0.01 * std::abs(slope_logx)) {
        out.label = GrowthLabel::PolynomialBounded;
    } else {
        out.label = slope_x > 0.0 ? GrowthLabel::SuperPolynomialGrowth : GrowthLabel::RapidDecay;
    }
    return out;
}

}  // namespace regsym
