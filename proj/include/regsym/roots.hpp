#pragma once

// Simultaneous-iteration (Aberth-Ehrlich) complex root finder with a
// residual certificate, plus cluster detection for multiple roots.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace regsym {

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error("precision exhausted: " + what) {}
};

using Complex = std::complex<double>;

namespace detail {

inline void horner_both(const std::vector<Complex>& c, const Complex& z, Complex& p, Complex& dp) {
    p = Complex(0, 0);
    dp = Complex(0, 0);
    for (std::size_t k = c.size(); k-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[k];
    }
}

}  // namespace detail

// Roots (with multiplicity) of sum_k coeffs[k] z^k, leading coefficient
// nonzero. Residuals are certified: |p(z)| <= tol * ||p||_1 * max(1,|z|)^n,
// otherwise PrecisionExhausted is thrown. Deterministic.
inline std::vector<Complex> find_roots(std::vector<Complex> coeffs, double precision) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};
    std::vector<Complex> roots;
    std::size_t zero_count = 0;
    while (zero_count < coeffs.size() - 1 && std::abs(coeffs[zero_count]) == 0.0) ++zero_count;
    for (std::size_t k = 0; k < zero_count; ++k) roots.emplace_back(0.0, 0.0);
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(zero_count));

    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n == 0) return roots;
    const Complex lead = coeffs.back();
    for (auto& c : coeffs) c /= lead;
    if (n == 1) {
        roots.push_back(-coeffs[0]);
        return roots;
    }

    double norm1 = 0.0;
    for (const auto& c : coeffs) norm1 += std::abs(c);

    // Initial points on a circle of the geometric-mean radius.
    double r0 = std::pow(std::max(std::abs(coeffs[0]), 1e-100), 1.0 / n);
    r0 = std::clamp(r0, 1e-6, 1e6);
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k) {
        double ang = 2.0 * M_PI * k / n + 0.41;
        double rad = r0 * (1.0 + 0.03 * k / n);
        z[k] = Complex(rad * std::cos(ang), rad * std::sin(ang));
    }

    const double step_tol = std::max(precision, 8.0 * std::numeric_limits<double>::epsilon());
    const int max_iters = 200 + 40 * n;
    for (int it = 0; it < max_iters; ++it) {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            Complex p, dp;
            detail::horner_both(coeffs, z[k], p, dp);
            if (std::abs(p) == 0.0) continue;
            Complex w = (std::abs(dp) > 0.0) ? p / dp : Complex(1e-3, 1e-3);
            Complex s(0, 0);
            for (int j = 0; j < n; ++j)
                if (j != k) s += 1.0 / (z[k] - z[j]);
            Complex denom = 1.0 - w * s;
            Complex delta = (std::abs(denom) > 1e-14) ? w / denom : w;
            z[k] -= delta;
            worst = std::max(worst, std::abs(delta) / (1.0 + std::abs(z[k])));
        }
        if (worst <= step_tol) break;
    }

    const double cert = std::max(precision, 256.0 * n * std::numeric_limits<double>::epsilon());
    for (int k = 0; k < n; ++k) {
        Complex p, dp;
        detail::horner_both(coeffs, z[k], p, dp);
        double bound = cert * std::max(norm1, 1.0) * std::pow(std::max(1.0, std::abs(z[k])), n);
        if (!(std::abs(p) <= bound))
            throw PrecisionExhausted("root residual " + std::to_string(std::abs(p)) + " exceeds certificate " +
                                     std::to_string(bound));
        roots.push_back(z[k]);
    }
    std::sort(roots.begin(), roots.end(),
              [](const Complex& a, const Complex& b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    return roots;
}

struct RootCluster {
    Complex value;
    int multiplicity = 1;
};

// Groups roots closer than cluster_tol*(1+|c|) into multiple roots
// (single linkage). Gaps that are neither clearly inside nor clearly
// outside the threshold are resolved by a derivative test on the original
// polynomial when provided; if still ambiguous, PrecisionExhausted.
inline std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double cluster_tol,
                                              const std::vector<Complex>* poly = nullptr) {
    const int n = static_cast<int>(roots.size());
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto thresh = [&](int i, int j) { return cluster_tol * (1.0 + std::max(std::abs(roots[i]), std::abs(roots[j]))); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= thresh(i, j)) parent[find(i)] = find(j);

    // Ambiguity band: separate clusters with a gap below 8x the threshold.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (find(i) == find(j)) continue;
            double gap = std::abs(roots[i] - roots[j]);
            if (gap >= 8.0 * thresh(i, j)) continue;
            bool merged = false;
            if (poly != nullptr) {
                Complex mid = 0.5 * (roots[i] + roots[j]);
                Complex p, dp;
                detail::horner_both(*poly, mid, p, dp);
                double norm1 = 0.0;
                for (const auto& c : *poly) norm1 += std::abs(c);
                int deg = static_cast<int>(poly->size()) - 1;
                double scale = std::max(norm1, 1.0) * std::pow(std::max(1.0, std::abs(mid)), std::max(deg - 1, 0));
                if (std::abs(dp) <= 1e-6 * scale) {
                    parent[find(i)] = find(j);
                    merged = true;
                }
            }
            if (!merged)
                throw PrecisionExhausted("cannot certify roots distinct vs equal (gap " + std::to_string(gap) + ")");
        }

    std::vector<RootCluster> out;
    std::vector<int> seen;
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        auto it = std::find(seen.begin(), seen.end(), r);
        if (it == seen.end()) {
            seen.push_back(r);
            out.push_back({Complex(0, 0), 0});
        }
    }
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        std::size_t idx = static_cast<std::size_t>(std::find(seen.begin(), seen.end(), r) - seen.begin());
        out[idx].value += roots[i];
        out[idx].multiplicity += 1;
    }
    for (auto& c : out) c.value /= static_cast<double>(c.multiplicity);
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        return a.value.real() != b.value.real() ? a.value.real() < b.value.real() : a.value.imag() < b.value.imag();
    });
    return out;
}

}  // namespace regsym
