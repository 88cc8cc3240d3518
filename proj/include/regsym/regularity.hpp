#pragma once

// The decision engine: separation and imaginary-growth checks on branch
// expansions, the exact fast paths, and the full pipeline producing a
// Verdict.
//
// A branch pair is relevant when both leading slopes are the same real
// number; it is Separated when the leading deviation monomials differ and
// the larger deviation exponent exceeds -1. The growth condition holds for
// a branch when some coefficient with exponent > -1 has nonzero imaginary
// part (exponent exactly -1 gives the Boundary case: x*Im xi_j stays
// bounded, so the condition fails in the strict reading).

#include "regsym/bivariate.hpp"
#include "regsym/classify.hpp"
#include "regsym/puiseux.hpp"
#include "regsym/quantize.hpp"
#include "regsym/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace regsym {

enum class PairStatus { Separated, Fails, NotApplicable };
enum class ConditionStatus { Holds, Fails, Boundary };
enum class Decision { Regular, NotRegular, Inconclusive };
enum class DecisionPath { ConstantCoefficient, GloballyElliptic, QuasiElliptic, SGElliptic, TheoremGeneral };

inline const char* to_string(PairStatus s) {
    switch (s) {
        case PairStatus::Separated: return "Separated";
        case PairStatus::Fails: return "Fails";
        default: return "NotApplicable";
    }
}
inline const char* to_string(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::Holds: return "Holds";
        case ConditionStatus::Fails: return "Fails";
        default: return "Boundary";
    }
}
inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::Regular: return "Regular";
        case Decision::NotRegular: return "NotRegular";
        default: return "Inconclusive";
    }
}
inline const char* to_string(DecisionPath p) {
    switch (p) {
        case DecisionPath::ConstantCoefficient: return "ConstantCoefficient";
        case DecisionPath::GloballyElliptic: return "GloballyElliptic";
        case DecisionPath::QuasiElliptic: return "QuasiElliptic";
        case DecisionPath::SGElliptic: return "SGElliptic";
        default: return "TheoremGeneral";
    }
}

struct SeparationPair {
    int j = 0, k = 0;  // 0-based branch indices
    Complex lambda{0, 0};
    PairStatus status = PairStatus::NotApplicable;
    std::optional<Rational> witness_exponent;  // first differing deviation exponent
    Complex witness_j{0, 0}, witness_k{0, 0};  // deviation coefficients at the witness exponent
    std::string note;
};

struct SeparationReport {
    Direction direction = Direction::PlusInfinity;
    std::vector<SeparationPair> pairs;  // only pairs with equal real lambda
    bool separated = true;              // no pair Fails
    bool borderline = false;            // lambda equality/reality ambiguous at tolerance
    std::vector<std::string> notes;
};

struct ConditionEntry {
    Direction direction = Direction::PlusInfinity;
    int branch = 0;
    ConditionStatus status = ConditionStatus::Fails;
    std::optional<Rational> witness_exponent;  // highest exponent with |Im| above tolerance
    double witness_im = 0.0;
};

struct ConditionReport {
    std::vector<ConditionEntry> entries;
    bool all_hold = true;
};

struct Tolerances {
    Rational depth = Rational(-9, 4);
    double precision = 1e-12;
    double im_tol = 1e-8;
    double lambda_tol = 1e-8;
    double cluster_tol = 1e-8;
    double zero_tol = 1e-10;
};

struct Verdict {
    Decision decision = Decision::Inconclusive;
    DecisionPath path = DecisionPath::TheoremGeneral;
    std::vector<SeparationReport> separation;  // one per analyzed direction
    std::optional<ConditionReport> condition;
    std::vector<std::string> diagnostics;
    Tolerances tolerances;
};

enum class Quantization { Weyl, Left };
enum class DirectionMode { Both, Plus, Minus };

struct DecisionOptions {
    Quantization quantization = Quantization::Weyl;
    DirectionMode directions = DirectionMode::Both;
    Tolerances tol;
    bool force_general = false;  // skip fast paths (used by agreement tests)
};

struct AnalysisResult {
    BivariatePoly weyl_symbol;   // post-quantization input
    Classification classification;
    std::optional<BivariatePoly> normalized;  // general path only
    Rational shear_lambda{0};
    std::vector<BranchSet> branch_sets;  // parallel to verdict.separation
    Verdict verdict;
};

// --------------------------------------------------------------------------

namespace regularity_detail {

inline bool lambda_is_real(const Complex& l, double lambda_tol) { return std::abs(l.imag()) <= lambda_tol; }

inline bool lambda_borderline(const Complex& l, double lambda_tol) {
    double a = std::abs(l.imag());
    return a > lambda_tol && a <= 100.0 * lambda_tol;
}

}  // namespace regularity_detail

// Pairwise separation check over one direction's branches. Pairs appear
// iff lambda_j = lambda_k is real (within tolerance) and j != k.
inline SeparationReport check_separation(const BranchSet& set, const Tolerances& tol = {}) {
    SeparationReport rep;
    rep.direction = set.direction;
    const auto& br = set.branches;
    std::vector<SeparationPair> ambiguous_reading_pairs;
    for (std::size_t j = 0; j < br.size(); ++j) {
        Complex lj = br[j].lambda();
        if (regularity_detail::lambda_borderline(lj, tol.lambda_tol)) {
            rep.borderline = true;
            rep.notes.push_back("branch " + std::to_string(j + 1) + ": Im(lambda) = " + std::to_string(lj.imag()) +
                                " is within the ambiguity band of lambda_tol");
        }
    }
    for (std::size_t j = 0; j < br.size(); ++j) {
        for (std::size_t k = j + 1; k < br.size(); ++k) {
            Complex lj = br[j].lambda(), lk = br[k].lambda();
            if (!regularity_detail::lambda_is_real(lj, tol.lambda_tol) ||
                !regularity_detail::lambda_is_real(lk, tol.lambda_tol))
                continue;
            double gap = std::abs(lj - lk);
            double eq_tol = tol.lambda_tol * (1.0 + std::max(std::abs(lj), std::abs(lk)));
            if (gap > eq_tol) {
                if (gap <= 100.0 * eq_tol) {
                    rep.borderline = true;
                    rep.notes.push_back("branches " + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                        ": lambda gap " + std::to_string(gap) + " is within the ambiguity band");
                }
                continue;  // distinct real slopes: NotApplicable
            }
            SeparationPair pair;
            pair.j = static_cast<int>(j);
            pair.k = static_cast<int>(k);
            pair.lambda = 0.5 * (lj + lk);

            if (br[j].coincident_group >= 0 && br[j].coincident_group == br[k].coincident_group) {
                pair.status = PairStatus::Fails;
                pair.note = br[j].coincidence == CoincidenceKind::ExactMultiple
                                ? "branches coincide exactly (multiple root)"
                                : "branches still coincide at the truncation depth";
                rep.pairs.push_back(pair);
                rep.separated = false;
                continue;
            }

            // Leading deviation monomials (terms below exponent 1).
            auto ej = br[j].leading_deviation_exponent();
            auto ek = br[k].leading_deviation_exponent();
            bool differ = false;
            Rational max_exp;
            bool have_max = false;
            if (ej && ek) {
                if (*ej != *ek) {
                    differ = true;
                    max_exp = std::max(*ej, *ek);
                    have_max = true;
                    pair.witness_exponent = max_exp;
                    pair.witness_j = br[j].coefficient(max_exp);
                    pair.witness_k = br[k].coefficient(max_exp);
                } else {
                    Complex cj = br[j].coefficient(*ej), ck = br[k].coefficient(*ek);
                    double ctol = tol.cluster_tol * (1.0 + std::max(std::abs(cj), std::abs(ck)));
                    double cgap = std::abs(cj - ck);
                    if (cgap > ctol && cgap <= 100.0 * ctol) {
                        rep.borderline = true;
                        rep.notes.push_back("branches " + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                            ": leading deviation coefficients nearly coincide");
                    }
                    differ = cgap > ctol;
                    max_exp = *ej;
                    have_max = true;
                    pair.witness_exponent = max_exp;
                    pair.witness_j = cj;
                    pair.witness_k = ck;
                }
            } else if (ej || ek) {
                differ = true;  // one deviation is identically zero
                max_exp = ej ? *ej : *ek;
                have_max = true;
                pair.witness_exponent = max_exp;
                pair.witness_j = ej ? br[j].coefficient(max_exp) : Complex(0, 0);
                pair.witness_k = ek ? br[k].coefficient(max_exp) : Complex(0, 0);
            } else {
                differ = false;  // both deviations vanish to truncation
            }

            if (differ && have_max && max_exp > Rational(-1)) {
                pair.status = PairStatus::Separated;
                // The two readings of "strictly larger than -1" (exponent
                // e vs. ramified index p*e) disagree exactly on (-1, -1/p].
                BigInt pram = boost::multiprecision::lcm(BigInt(br[j].ramification), BigInt(br[k].ramification));
                if (max_exp <= Rational(BigInt(-1), pram)) ambiguous_reading_pairs.push_back(pair);
            } else {
                pair.status = PairStatus::Fails;
                if (!differ)
                    pair.note = "deviation series coincide to truncation depth";
                else
                    pair.note = "deviations differ only at exponent <= -1 (rate at most 1/x)";
                rep.separated = false;
            }
            rep.pairs.push_back(pair);
        }
    }
    if (!ambiguous_reading_pairs.empty()) {
        std::string list;
        for (const auto& pr : ambiguous_reading_pairs) {
            if (!list.empty()) list += ", ";
            list += std::to_string(pr.j + 1) + "-" + std::to_string(pr.k + 1);
        }
        rep.notes.push_back("direction " + std::string(to_string(set.direction)) + ": separation witness exponent of pair(s) " +
                            list + " lies in (-1, -1/p]; the index reading of the threshold would reject these");
    }
    return rep;
}

// Growth condition per branch and direction: the highest exponent carrying
// an imaginary coefficient decides (>-1 Holds, =-1 Boundary, else Fails).
inline ConditionReport check_condition(const std::vector<BranchSet>& sets, const Tolerances& tol = {}) {
    ConditionReport rep;
    for (const auto& set : sets) {
        for (std::size_t j = 0; j < set.branches.size(); ++j) {
            ConditionEntry ent;
            ent.direction = set.direction;
            ent.branch = static_cast<int>(j);
            for (const auto& [e, c] : set.branches[j].terms) {
                if (std::abs(c.imag()) > tol.im_tol) {
                    ent.witness_exponent = e;
                    ent.witness_im = c.imag();
                    break;  // terms are in descending exponent order
                }
            }
            if (!ent.witness_exponent)
                ent.status = ConditionStatus::Fails;
            else if (*ent.witness_exponent > Rational(-1))
                ent.status = ConditionStatus::Holds;
            else if (*ent.witness_exponent == Rational(-1))
                ent.status = ConditionStatus::Boundary;
            else
                ent.status = ConditionStatus::Fails;
            rep.all_hold = rep.all_hold && ent.status == ConditionStatus::Holds;
            rep.entries.push_back(std::move(ent));
        }
    }
    return rep;
}

// --------------------------------------------------------------------------
// Full pipeline.

inline AnalysisResult decide(const BivariatePoly& input, const DecisionOptions& opt = {}) {
    if (input.is_zero()) throw ZeroPolynomial();
    AnalysisResult res;
    res.weyl_symbol = opt.quantization == Quantization::Left ? weyl_from_left(input) : input;
    res.verdict.tolerances = opt.tol;

    // Exact fast paths run on the pre-shear symbol (shearing would destroy
    // the quasi-elliptic and SG shapes).
    res.classification = opt.force_general ? Classification{} : classify(res.weyl_symbol);
    switch (res.classification.kind) {
        case SymbolClass::ConstantCoefficient:
            res.verdict.path = DecisionPath::ConstantCoefficient;
            res.verdict.decision = *res.classification.constant_regular ? Decision::Regular : Decision::NotRegular;
            res.verdict.diagnostics.push_back(res.classification.detail);
            return res;
        case SymbolClass::GloballyElliptic:
            res.verdict.path = DecisionPath::GloballyElliptic;
            res.verdict.decision = Decision::Regular;
            res.verdict.diagnostics.push_back(res.classification.detail);
            return res;
        case SymbolClass::QuasiElliptic:
            res.verdict.path = DecisionPath::QuasiElliptic;
            res.verdict.decision = Decision::Regular;
            res.verdict.diagnostics.push_back(res.classification.detail);
            return res;
        case SymbolClass::SGElliptic:
            res.verdict.path = DecisionPath::SGElliptic;
            res.verdict.decision = Decision::Regular;
            res.verdict.diagnostics.push_back(res.classification.detail);
            return res;
        case SymbolClass::General: break;
    }

    res.verdict.path = DecisionPath::TheoremGeneral;
    try {
        auto [normalized, lambda] = normalize_leading(res.weyl_symbol);
        res.normalized = normalized;
        res.shear_lambda = lambda;
        if (lambda != 0)
            res.verdict.diagnostics.push_back("leading coefficient vanished; sheared by lambda = " +
                                              to_fraction_string(lambda));

        EngineOptions eng;
        eng.depth = opt.tol.depth;
        eng.precision = opt.tol.precision;
        eng.zero_tol = opt.tol.zero_tol;
        eng.cluster_tol = opt.tol.cluster_tol;

        std::vector<Direction> dirs;
        if (opt.directions != DirectionMode::Minus) dirs.push_back(Direction::PlusInfinity);
        if (opt.directions != DirectionMode::Plus) dirs.push_back(Direction::MinusInfinity);
        if (opt.directions != DirectionMode::Both)
            res.verdict.diagnostics.push_back("partial analysis: only one direction examined");

        for (Direction d : dirs) res.branch_sets.push_back(expand_branches(normalized, d, eng));

        bool all_separated = true, any_borderline = false;
        for (const auto& set : res.branch_sets) {
            auto rep = check_separation(set, opt.tol);
            all_separated = all_separated && rep.separated;
            any_borderline = any_borderline || rep.borderline;
            for (const auto& n : rep.notes) res.verdict.diagnostics.push_back(n);
            res.verdict.separation.push_back(std::move(rep));
        }

        if (any_borderline) {
            res.verdict.decision = Decision::Inconclusive;
            res.verdict.diagnostics.push_back(
                "leading-slope data too close to the reality/equality tolerance to trust a verdict");
            return res;
        }

        res.verdict.condition = check_condition(res.branch_sets, opt.tol);

        if (!all_separated) {
            res.verdict.decision = Decision::Inconclusive;
            res.verdict.diagnostics.push_back("separation fails: branches with a common real slope stay too close");
            bool slow_coalesce = false;
            for (const auto& rep : res.verdict.separation)
                for (const auto& pr : rep.pairs)
                    if (pr.status == PairStatus::Fails && pr.witness_exponent &&
                        *pr.witness_exponent <= Rational(-1))
                        slow_coalesce = true;
            if (slow_coalesce)
                res.verdict.diagnostics.push_back(
                    "roots coalesce at rate 1/x or faster (Fuchsian-type behavior at infinity); outside the "
                    "decidable class, no verdict is asserted");
            return res;
        }

        bool any_boundary = false;
        for (const auto& ent : res.verdict.condition->entries)
            if (ent.status == ConditionStatus::Boundary) any_boundary = true;
        if (res.verdict.condition->all_hold) {
            res.verdict.decision = Decision::Regular;
        } else {
            res.verdict.decision = Decision::NotRegular;
            if (any_boundary)
                res.verdict.diagnostics.push_back(
                    "boundary case: first imaginary coefficient sits at exponent exactly -1, so x*Im(xi_j) stays "
                    "bounded instead of growing");
        }
        return res;
    } catch (const PrecisionExhausted& e) {
        res.verdict.decision = Decision::Inconclusive;
        res.verdict.diagnostics.push_back(std::string("engine error: ") + e.what());
        return res;
    } catch (const NumericOverflow& e) {
        res.verdict.decision = Decision::Inconclusive;
        res.verdict.diagnostics.push_back(std::string("engine error: ") + e.what());
        return res;
    }
}

}  // namespace regsym
