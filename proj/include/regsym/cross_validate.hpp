#pragma once

// Consistency check between a Verdict and solution growth.
//
//   NotRegular  -> the witness built from the failing branch must be
//                  polynomially bounded (a tempered non-Schwartz solution).
//   Regular,    -> the sole solution must decay rapidly or grow faster
//   order 1        than any polynomial; never polynomially bounded.
//   Regular,    -> advisory only: a finite basis can mask decaying
//   order >= 2     solutions, so observations are reported, not asserted.

#include "regsym/diff_operator.hpp"
#include "regsym/oracle.hpp"
#include "regsym/quantize.hpp"
#include "regsym/regularity.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace regsym {

struct OracleReport {
    bool ran = false;
    bool asserted = false;    // a strict consistency claim was checked
    bool consistent = true;   // false only when an asserted check failed
    std::vector<std::string> notes;
    std::optional<GrowthClass> witness_growth;
    std::vector<GrowthClass> solution_growth;
};

namespace oracle_detail {

// Witness series: terms above -1 with imaginary dust stripped, plus the
// exact -1 term (it feeds the logarithmic part and may carry the Boundary
// imaginary coefficient).
inline PuiseuxSeries witness_from_branch(const PuiseuxSeries& branch, double im_tol) {
    PuiseuxSeries w;
    w.direction = branch.direction;
    w.ramification = branch.ramification;
    w.truncation_exponent = Rational(-1);
    for (const auto& [e, c] : branch.terms) {
        if (e < Rational(-1)) continue;
        Complex v = c;
        if (e > Rational(-1) && std::abs(v.imag()) <= im_tol) v = Complex(v.real(), 0.0);
        if (std::abs(v) > 0) w.terms[e] = v;
    }
    return w;
}

}  // namespace oracle_detail

inline OracleReport cross_validate(const BivariatePoly& weyl_symbol, const AnalysisResult& analysis,
                                   const Tolerances& tol = {}) {
    OracleReport rep;
    rep.ran = true;
    const auto& verdict = analysis.verdict;

    if (verdict.decision == Decision::Inconclusive) {
        rep.notes.push_back("verdict inconclusive; nothing to cross-validate");
        return rep;
    }

    auto grid = geometric_grid(1.0, 1e4, 33);

    if (verdict.decision == Decision::NotRegular) {
        // Locate a failing branch; fast-path verdicts get their branches
        // expanded on demand.
        std::vector<BranchSet> sets = analysis.branch_sets;
        std::optional<ConditionReport> cond = verdict.condition;
        if (sets.empty()) {
            EngineOptions eng;
            eng.depth = tol.depth;
            eng.precision = tol.precision;
            eng.zero_tol = tol.zero_tol;
            eng.cluster_tol = tol.cluster_tol;
            auto [normalized, lambda] = normalize_leading(weyl_symbol);
            sets.push_back(expand_branches(normalized, Direction::PlusInfinity, eng));
            sets.push_back(expand_branches(normalized, Direction::MinusInfinity, eng));
            cond = check_condition(sets, tol);
        }
        const PuiseuxSeries* failing = nullptr;
        for (const auto& ent : cond->entries) {
            if (ent.status == ConditionStatus::Holds) continue;
            for (const auto& set : sets)
                if (set.direction == ent.direction) failing = &set.branches[static_cast<std::size_t>(ent.branch)];
            if (failing) break;
        }
        if (failing == nullptr) {
            rep.notes.push_back("no failing branch located; witness not constructed");
            return rep;
        }
        auto witness = oracle_detail::witness_from_branch(*failing, tol.im_tol);
        auto sample = counterexample_solution(witness, grid);
        rep.witness_growth = growth_exponent(sample);
        rep.asserted = true;
        rep.consistent = rep.witness_growth->label == GrowthLabel::PolynomialBounded;
        rep.notes.push_back(std::string("witness growth: ") + to_string(rep.witness_growth->label) +
                            (rep.consistent ? " (tempered, non-Schwartz: consistent with NotRegular)"
                                            : " (expected PolynomialBounded)"));
        return rep;
    }

    // Regular: integrate the operator itself.
    DiffOperatorQ op = operator_from_left_symbol(left_from_weyl(weyl_symbol));
    if (op.order() < 1) {
        rep.notes.push_back("multiplication operator; no ODE to integrate");
        return rep;
    }
    bool leading_constant = op.coeffs[0].degree() == 0;
    try {
        auto samples = solve_operator_equation(op, 1.0, 200.0);
        for (const auto& s : samples) rep.solution_growth.push_back(growth_exponent(s));
    } catch (const StiffnessFailure& e) {
        rep.notes.push_back(std::string("integration unusable: ") + e.what());
        return rep;
    } catch (const LeadingCoeffVanishes& e) {
        rep.notes.push_back(std::string("integration unusable: ") + e.what());
        return rep;
    }
    if (op.order() == 1 && leading_constant) {
        rep.asserted = true;
        rep.consistent = rep.solution_growth[0].label != GrowthLabel::PolynomialBounded;
        rep.notes.push_back(std::string("sole solution growth: ") + to_string(rep.solution_growth[0].label) +
                            (rep.consistent ? " (no tempered non-Schwartz solution: consistent with Regular)"
                                            : " (a polynomially bounded solution contradicts Regular)"));
    } else {
        for (const auto& g : rep.solution_growth)
            rep.notes.push_back(std::string("basis solution growth: ") + to_string(g.label) +
                                " (advisory only for order >= 2: basis mixing can mask decaying solutions)");
    }
    return rep;
}

}  // namespace regsym
