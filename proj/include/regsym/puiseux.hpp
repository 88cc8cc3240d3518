#pragma once

// Truncated Puiseux expansions at infinity of the roots xi_j(x) of a
// bivariate symbol p(x, xi), xi-degree m after normalization.
//
// The engine walks the Newton polygon read for expansions at infinity:
// each upper-hull edge of the exponent set contributes candidate leading
// exponents (the edge slope mu) and leading coefficients (nonzero roots of
// the edge polynomial); substitution xi -> c x^mu + xi' and recursion over
// edges of strictly smaller slope refines each branch until the truncation
// depth. Exponents are exact rationals throughout; coefficients are
// complex doubles. Multiplicities at the exact top level are certified by
// squarefree decomposition; deeper (numeric) levels use cluster detection.
//
// The x -> -infinity direction is always computed as x -> +infinity on
// reflect(p); series of that direction represent t -> xi_j(-t), t -> +inf.

#include "regsym/bivariate.hpp"
#include "regsym/rational.hpp"
#include "regsym/roots.hpp"
#include "regsym/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace regsym {

enum class Direction { PlusInfinity, MinusInfinity };

inline const char* to_string(Direction d) { return d == Direction::PlusInfinity ? "plus" : "minus"; }

struct NotAPolynomialInXi : std::domain_error {
    NotAPolynomialInXi() : std::domain_error("symbol has xi-degree 0") {}
};

struct NumericOverflow : std::runtime_error {
    NumericOverflow() : std::runtime_error("evaluation exceeded floating-point range") {}
};

struct EngineOptions {
    Rational depth = Rational(-9, 4);  // expand until every term above this exponent is known
    double precision = 1e-12;          // root-finder certificate
    double zero_tol = 1e-10;           // coefficient dropping, relative to local scale
    double cluster_tol = 1e-8;         // multiple-root clustering, relative to 1+|c|
};

enum class CoincidenceKind { None, ExactMultiple, AtDepth };

struct PuiseuxSeries {
    Direction direction = Direction::PlusInfinity;
    int ramification = 1;  // lcm of exponent denominators
    std::map<Rational, Complex, std::greater<Rational>> terms;
    Rational truncation_exponent{0};  // every term with exponent > this is present
    bool exact = false;               // branch terminates: the series is the whole root
    int coincident_group = -1;        // >= 0 when this branch coincides with others to depth
    CoincidenceKind coincidence = CoincidenceKind::None;

    Complex lambda() const {
        auto it = terms.find(Rational(1));
        return it == terms.end() ? Complex(0, 0) : it->second;
    }
    // Leading exponent of the deviation xi_j - lambda*x; nullopt if the
    // deviation is identically zero (to truncation).
    std::optional<Rational> leading_deviation_exponent() const {
        for (const auto& [e, c] : terms)
            if (e < 1) return e;
        return std::nullopt;
    }
    Complex coefficient(const Rational& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? Complex(0, 0) : it->second;
    }
};

struct BranchSet {
    BivariatePoly symbol;  // the polynomial whose roots at +infinity these series are
    Direction direction = Direction::PlusInfinity;
    std::vector<PuiseuxSeries> branches;
    std::vector<double> residual_slopes;  // -inf sentinel for exactly vanishing residuals
    Rational depth{0};                    // effective truncation depth
};

// ---------------------------------------------------------------------------
// Newton polygon (upper hull in the direction of expansions at infinity)

namespace puiseux_detail {

struct SupportPoint {
    int a;       // xi-exponent
    Rational e;  // x-exponent
};

struct HullEdge {
    Rational mu;               // candidate branch exponent
    int a_hi = 0, a_lo = 0;    // xi-exponent range, a_hi > a_lo
    std::vector<int> on_edge;  // xi-exponents of support points on the edge
};

// Upper hull of (a, emax(a)): vertices of max_{mu} (mu*a + e). Edges are
// returned with mu strictly descending (read from the largest xi-degree).
inline std::vector<HullEdge> upper_hull_edges(const std::vector<SupportPoint>& pts_in) {
    std::map<int, Rational> emax;
    for (const auto& p : pts_in) {
        auto it = emax.find(p.a);
        if (it == emax.end() || it->second < p.e) emax[p.a] = p.e;
    }
    std::vector<SupportPoint> pts;
    for (const auto& [a, e] : emax) pts.push_back({a, e});  // a ascending
    if (pts.size() < 2) return {};

    auto cross = [](const SupportPoint& o, const SupportPoint& p, const SupportPoint& q) {
        // > 0: o->p->q turns left (counterclockwise)
        return Rational(p.a - o.a) * (q.e - o.e) - Rational(q.a - o.a) * (p.e - o.e);
    };
    std::vector<SupportPoint> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0) hull.pop_back();
        hull.push_back(p);
    }

    std::vector<HullEdge> edges;
    for (std::size_t i = hull.size(); i-- > 1;) {
        const auto& lo = hull[i - 1];
        const auto& hi = hull[i];
        HullEdge edge;
        edge.mu = (lo.e - hi.e) / Rational(hi.a - lo.a);
        edge.a_hi = hi.a;
        edge.a_lo = lo.a;
        Rational level = edge.mu * hi.a + hi.e;
        for (const auto& [a, e] : emax)
            if (a >= lo.a && a <= hi.a && edge.mu * a + e == level) edge.on_edge.push_back(a);
        edges.push_back(std::move(edge));
    }
    return edges;  // mu descending
}

// Generalized polynomial: sum of coeff * xi^a * x^e with rational e.
struct LKey {
    int a;
    Rational e;
    friend bool operator<(const LKey& lhs, const LKey& rhs) {
        if (lhs.a != rhs.a) return lhs.a < rhs.a;
        return lhs.e < rhs.e;
    }
};

struct LPoly {
    std::map<LKey, Complex> t;

    int min_xi_degree() const {
        int m = std::numeric_limits<int>::max();
        for (const auto& [k, v] : t) m = std::min(m, k.a);
        return m;
    }
    std::vector<SupportPoint> support() const {
        std::vector<SupportPoint> s;
        for (const auto& [k, v] : t) s.push_back({k.a, k.e});
        return s;
    }
};

inline LPoly from_bivariate(const BivariatePoly& p) {
    LPoly q;
    for (const auto& [m, v] : p.terms()) q.t[{m.xi, Rational(m.x)}] = v.to_complex();
    return q;
}

// xi -> c x^mu + xi', expanded; cancellation dust below zero_tol * (local
// accumulation scale) is dropped.
inline LPoly substitute(const LPoly& q, const Complex& c, const Rational& mu, double zero_tol) {
    struct Accum {
        Complex sum{0, 0};
        double amax = 0.0;
    };
    std::map<LKey, Accum> acc;
    std::vector<std::vector<double>> binom{{1.0}};
    auto binom_row = [&](int n) -> const std::vector<double>& {
        while (static_cast<int>(binom.size()) <= n) {
            int r = static_cast<int>(binom.size());
            std::vector<double> row(r + 1, 1.0);
            for (int j = 1; j < r; ++j) row[j] = binom[r - 1][j - 1] + binom[r - 1][j];
            binom.push_back(std::move(row));
        }
        return binom[n];
    };
    for (const auto& [key, v] : q.t) {
        const auto& row = binom_row(key.a);
        Complex cpow(1.0, 0.0);
        // xi^a = sum_t C(a,t) (c x^mu)^(a-t) xi'^t, accumulate from t = a down
        std::vector<Complex> cpows(key.a + 1);
        for (int j = 0; j <= key.a; ++j) {
            cpows[j] = cpow;
            cpow *= c;
        }
        for (int t = 0; t <= key.a; ++t) {
            int drop = key.a - t;  // power of (c x^mu)
            Complex term = v * row[t] * cpows[drop];
            LKey nk{t, key.e + mu * drop};
            auto& slot = acc[nk];
            slot.sum += term;
            slot.amax = std::max(slot.amax, std::abs(term));
        }
    }
    LPoly out;
    for (const auto& [k, s] : acc)
        if (std::abs(s.sum) > zero_tol * s.amax) out.t[k] = s.sum;
    return out;
}

inline LPoly divide_by_xi_power(const LPoly& q, int a0) {
    LPoly out;
    for (const auto& [k, v] : q.t) out.t[{k.a - a0, k.e}] = v;
    return out;
}

// Edge polynomial E(c) = sum of on-edge coefficients * c^(a - a_lo). The
// on-edge point at each a is its maximal-e support point.
inline std::vector<Complex> edge_polynomial(const LPoly& q, const HullEdge& edge) {
    std::vector<Complex> coeffs(static_cast<std::size_t>(edge.a_hi - edge.a_lo) + 1, Complex(0, 0));
    for (int a : edge.on_edge) {
        Complex val(0, 0);
        Rational best_e;
        bool found = false;
        for (const auto& [k, v] : q.t) {
            if (k.a != a) continue;
            if (!found || k.e > best_e) {
                best_e = k.e;
                val = v;
                found = true;
            }
        }
        if (found) coeffs[static_cast<std::size_t>(a - edge.a_lo)] = val;
    }
    return coeffs;
}

struct BranchBuilder {
    std::map<Rational, Complex, std::greater<Rational>> terms;
};

// Exact edges with degrees, on support shifted down by the peeled xi power.
inline std::vector<std::tuple<Rational, GPoly, int>> exact_polygon_edges(const BivariatePoly& p, int a_min_peeled) {
    std::vector<SupportPoint> pts;
    for (const auto& [mono, v] : p.terms()) pts.push_back({mono.xi - a_min_peeled, Rational(mono.x)});
    auto edges = upper_hull_edges(pts);
    std::vector<std::tuple<Rational, GPoly, int>> out;
    for (const auto& edge : edges) {
        GPoly e;
        e.c.assign(static_cast<std::size_t>(edge.a_hi - edge.a_lo) + 1, GaussianRational(0));
        Rational hi_e(0);
        bool found = false;
        for (const auto& [mono, v] : p.terms())
            if (mono.xi - a_min_peeled == edge.a_hi && (!found || Rational(mono.x) > hi_e)) {
                hi_e = Rational(mono.x);
                found = true;
            }
        Rational level = edge.mu * edge.a_hi + hi_e;
        for (const auto& [mono, v] : p.terms()) {
            int a = mono.xi - a_min_peeled;
            if (a >= edge.a_lo && a <= edge.a_hi && edge.mu * a + Rational(mono.x) == level)
                e.c[static_cast<std::size_t>(a - edge.a_lo)] = v;
        }
        e.trim();
        out.emplace_back(edge.mu, std::move(e), edge.a_hi - edge.a_lo);
    }
    return out;
}

}  // namespace puiseux_detail

// ---------------------------------------------------------------------------
// Public operations

// Upper Newton polygon of an exact symbol, read for expansions at infinity:
// (slope, edge polynomial in the candidate leading coefficient c), slopes
// strictly descending. The sum of edge degrees plus the xi-power dividing p
// (vertical side) equals the xi-degree of p.
inline std::vector<std::pair<Rational, GPoly>> newton_polygon_slopes(const BivariatePoly& p) {
    if (p.xi_degree() < 1) throw NotAPolynomialInXi();
    std::vector<std::pair<Rational, GPoly>> out;
    for (auto& [mu, epoly, degree] : puiseux_detail::exact_polygon_edges(p, 0)) out.emplace_back(mu, std::move(epoly));
    return out;
}

// sum of c_e * x^e over the stored terms, positive real fractional powers.
inline Complex evaluate_series(const PuiseuxSeries& s, double x) {
    Complex acc(0, 0);
    for (const auto& [e, c] : s.terms) acc += c * std::pow(x, to_double(e));
    return acc;
}

// Log-log regression slope of x -> |p(x, evaluate_series(s, x))|. Samples
// whose residual is below the floating-point cancellation floor of the
// evaluation carry no information and are excluded; if every sample is at
// the floor (or exactly zero), the -infinity sentinel is returned: the
// truncation annihilates p to working precision.
inline double residual_slope(const BivariatePoly& p, const PuiseuxSeries& s, const std::vector<double>& xs) {
    const int m = std::max(p.total_degree(), 1);
    std::vector<double> lx, lr;
    for (double x : xs) {
        Complex xi = evaluate_series(s, x);
        double r = std::abs(p.eval(Complex(x, 0), xi));
        if (!std::isfinite(r)) throw NumericOverflow();
        // cancellation scale: the same evaluation with all magnitudes
        double scale = 0.0;
        for (const auto& [mono, v] : p.terms())
            scale += std::abs(v.to_complex()) * std::pow(x, mono.x) * std::pow(std::abs(xi), mono.xi);
        double floor = 32.0 * m * std::numeric_limits<double>::epsilon() * scale;
        if (r <= floor) continue;
        lx.push_back(std::log(x));
        lr.push_back(std::log(r));
    }
    if (lx.size() < 2) return -std::numeric_limits<double>::infinity();
    double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += lr[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * lr[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Conservative analytic bound on the residual slope of a branch truncated
// at exponent `trunc`: the m-1 surviving factors grow at most like x each.
inline double residual_slope_bound(int m, const Rational& trunc) { return (m - 1) + to_double(trunc); }

namespace puiseux_detail {

struct ExpansionState {
    const EngineOptions* opt;
    Direction direction;
    std::vector<PuiseuxSeries>* out;
    int next_group_id = 0;
};

inline Rational depth_guard(const Rational& requested, int ram) {
    Rational guard = Rational(-5, 4) - Rational(1, ram);
    return std::min(requested, guard);
}

inline PuiseuxSeries make_series(const BranchBuilder& prefix, ExpansionState& st, const Rational& trunc, bool exact) {
    PuiseuxSeries s;
    s.direction = st.direction;
    s.terms = prefix.terms;
    s.truncation_exponent = trunc;
    s.exact = exact;
    BigInt ram(1);
    for (const auto& [e, c] : s.terms) ram = boost::multiprecision::lcm(ram, den(e));
    s.ramification = ram.convert_to<int>();
    return s;
}

// Expands the `expect` roots of q with xi' = o(x^(mu_bound)) (all roots if
// mu_bound is empty). q's coefficients are numeric; exact multiplicity
// knowledge only enters through `expect`.
inline void expand_cluster(const LPoly& q, int expect, std::optional<Rational> mu_bound, const BranchBuilder& prefix,
                           int ram, ExpansionState& st) {
    if (expect <= 0) return;
    if (q.t.empty()) throw PrecisionExhausted("cluster polynomial vanished");

    LPoly work = q;
    int emitted_coincident = 0;
    std::vector<PuiseuxSeries> pending;
    const Rational depth_here = depth_guard(st.opt->depth, ram);

    // Exact zero roots: xi'^a_min divides q, so a_min branches equal the
    // prefix exactly (terminating).
    int a_min = work.min_xi_degree();
    if (a_min > 0) {
        int zcount = std::min(a_min, expect);
        for (int i = 0; i < zcount; ++i) pending.push_back(make_series(prefix, st, depth_here, true));
        emitted_coincident += zcount;
        expect -= zcount;
        work = divide_by_xi_power(work, a_min);
    }

    std::vector<HullEdge> edges;
    if (expect > 0) {
        edges = upper_hull_edges(work.support());
        if (mu_bound) {
            std::erase_if(edges, [&](const HullEdge& e) { return e.mu >= *mu_bound; });
        }
    }

    // Edge slots at or below the truncation depth stay coincident with the
    // prefix; they are reported, not expanded (DepthExceeded, non-fatal).
    int below_depth = 0;
    std::vector<HullEdge> live;
    for (const auto& e : edges) {
        if (e.mu <= depth_here)
            below_depth += e.a_hi - e.a_lo;
        else
            live.push_back(e);
    }
    below_depth = std::min(below_depth, expect);
    for (int i = 0; i < below_depth; ++i) pending.push_back(make_series(prefix, st, depth_here, false));
    emitted_coincident += below_depth;

    if (emitted_coincident >= 2) {
        int gid = st.next_group_id++;
        bool all_exact = true;
        for (auto& s : pending) all_exact = all_exact && s.exact;
        for (auto& s : pending) {
            s.coincident_group = gid;
            s.coincidence = all_exact ? CoincidenceKind::ExactMultiple : CoincidenceKind::AtDepth;
        }
    }
    for (auto& s : pending) st.out->push_back(std::move(s));
    expect -= below_depth;
    if (expect == 0) return;

    int live_slots = 0;
    for (const auto& e : live) live_slots += e.a_hi - e.a_lo;
    if (live_slots != expect)
        throw PrecisionExhausted("branch count mismatch: polygon offers " + std::to_string(live_slots) +
                                 " slots, expected " + std::to_string(expect));

    for (const auto& edge : live) {
        auto epoly = edge_polynomial(work, edge);
        auto roots = find_roots(epoly, st.opt->precision);
        auto clusters = cluster_roots(roots, st.opt->cluster_tol, &epoly);
        for (const auto& cl : clusters) {
            BranchBuilder next = prefix;
            next.terms[edge.mu] = cl.value;
            int next_ram = boost::multiprecision::lcm(BigInt(ram), den(edge.mu)).convert_to<int>();
            LPoly sub = substitute(work, cl.value, edge.mu, st.opt->zero_tol);
            expand_cluster(sub, cl.multiplicity, edge.mu, next, next_ram, st);
        }
    }
}

// Top level: the symbol is exact, so edge polynomials are exact and their
// multiplicity structure is certified by squarefree decomposition before
// any floating-point root finding.
inline void expand_top(const BivariatePoly& p, ExpansionState& st) {
    LPoly q = from_bivariate(p);
    int m = p.xi_degree();
    int a_min = q.min_xi_degree();
    BranchBuilder empty_prefix;
    int expect = m;

    if (a_min > 0) {
        std::vector<PuiseuxSeries> pending;
        Rational depth_here = depth_guard(st.opt->depth, 1);
        for (int i = 0; i < a_min; ++i) pending.push_back(make_series(empty_prefix, st, depth_here, true));
        if (a_min >= 2) {
            int gid = st.next_group_id++;
            for (auto& s : pending) {
                s.coincident_group = gid;
                s.coincidence = CoincidenceKind::ExactMultiple;
            }
        }
        for (auto& s : pending) st.out->push_back(std::move(s));
        expect -= a_min;
        q = divide_by_xi_power(q, a_min);
    }
    if (expect == 0) return;

    auto edges = exact_polygon_edges(p, a_min);
    for (const auto& [mu, epoly_exact, degree] : edges) {
        // exact squarefree split: factors of multiplicity k carry k-fold roots
        auto factors = squarefree_decomposition(epoly_exact);
        struct Found {
            Complex c;
            int mult;
        };
        std::vector<Found> found;
        for (const auto& [f, mult] : factors) {
            std::vector<Complex> fc;
            for (const auto& g : f.c) fc.push_back(g.to_complex());
            auto roots = find_roots(fc, st.opt->precision);
            for (const auto& r : roots) found.push_back({r, mult});
        }
        std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
            return a.c.real() != b.c.real() ? a.c.real() < b.c.real() : a.c.imag() < b.c.imag();
        });
        int total = 0;
        for (const auto& f : found) total += f.mult;
        if (total != degree) throw PrecisionExhausted("edge root multiplicities do not sum to the edge degree");
        for (const auto& f : found) {
            BranchBuilder prefix;
            prefix.terms[mu] = f.c;
            int ram = den(mu).convert_to<int>();
            LPoly sub = substitute(q, f.c, mu, st.opt->zero_tol);
            expand_cluster(sub, f.mult, mu, prefix, ram, st);
        }
        expect -= degree;
    }
    if (expect != 0) throw PrecisionExhausted("top-level branch count mismatch");
}

}  // namespace puiseux_detail

// All m root expansions of a normalized symbol (xi^m coefficient nonzero,
// m = total degree) in the given direction, correct above the truncation
// depth, with residual certificates over x in [1e2, 1e4].
inline BranchSet expand_branches(const BivariatePoly& p, Direction direction, const EngineOptions& opt = {}) {
    if (p.is_zero()) throw ZeroPolynomial();
    int m = p.total_degree();
    if (p.coeff(m, 0).is_zero())
        throw std::invalid_argument("expand_branches: symbol not normalized (xi^m coefficient vanishes)");
    if (!(opt.depth <= Rational(-1))) throw std::invalid_argument("expand_branches: depth must be <= -1");

    BranchSet set;
    set.direction = direction;
    set.symbol = direction == Direction::PlusInfinity ? p : reflect(p);
    set.depth = puiseux_detail::depth_guard(opt.depth, 1);

    puiseux_detail::ExpansionState st{&opt, direction, &set.branches, 0};
    puiseux_detail::expand_top(set.symbol, st);
    if (static_cast<int>(set.branches.size()) != m)
        throw PrecisionExhausted("branch count " + std::to_string(set.branches.size()) + " != degree " +
                                 std::to_string(m));

    std::vector<double> grid;
    for (int i = 0; i < 9; ++i) grid.push_back(std::pow(10.0, 2.0 + 0.25 * i));
    for (const auto& b : set.branches) set.residual_slopes.push_back(residual_slope(set.symbol, b, grid));
    return set;
}

}  // namespace regsym
