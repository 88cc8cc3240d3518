#pragma once

// Report assembly: the analysis result rendered as schema-stable JSON
// ("regsym/1") and as a human-readable text block. Rationals serialize as
// "num/den" strings; floating values as IEEE round-trip JSON numbers
// (17-significant-digit fidelity); exactly vanishing residual slopes
// serialize as null.

#include "regsym/cross_validate.hpp"
#include "regsym/regularity.hpp"

#include <json.hpp>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

namespace regsym {

struct ReportMeta {
    std::string symbol_text;
    Quantization quantization = Quantization::Weyl;
    DirectionMode directions = DirectionMode::Both;
    double elapsed_ms = 0.0;
};

inline const char* to_string(Quantization q) { return q == Quantization::Weyl ? "weyl" : "left"; }
inline const char* to_string(DirectionMode d) {
    switch (d) {
        case DirectionMode::Both: return "both";
        case DirectionMode::Plus: return "plus";
        default: return "minus";
    }
}

namespace report_detail {

using nlohmann::json;

inline json complex_json(const Complex& c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

inline json branch_json(const PuiseuxSeries& b, int index, double residual) {
    json terms = json::array();
    for (const auto& [e, c] : b.terms)
        terms.push_back(json{{"exponent", to_fraction_string(e)}, {"re", c.real()}, {"im", c.imag()}});
    json out{{"index", index + 1},
             {"ramification", b.ramification},
             {"exact", b.exact},
             {"truncation_exponent", to_fraction_string(b.truncation_exponent)},
             {"terms", terms}};
    out["coincident_group"] = b.coincident_group >= 0 ? json(b.coincident_group) : json(nullptr);
    out["residual_slope"] = std::isfinite(residual) ? json(residual) : json(nullptr);
    return out;
}

inline json separation_json(const SeparationReport& rep) {
    json pairs = json::array();
    for (const auto& p : rep.pairs) {
        json pj{{"j", p.j + 1},
                {"k", p.k + 1},
                {"lambda", complex_json(p.lambda)},
                {"status", to_string(p.status)}};
        pj["witness_exponent"] = p.witness_exponent ? json(to_fraction_string(*p.witness_exponent)) : json(nullptr);
        pj["witness_j"] = complex_json(p.witness_j);
        pj["witness_k"] = complex_json(p.witness_k);
        if (!p.note.empty()) pj["note"] = p.note;
        pairs.push_back(std::move(pj));
    }
    return json{{"separated", rep.separated}, {"pairs", pairs}};
}

inline json condition_json(const ConditionReport& rep) {
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json ej{{"direction", to_string(e.direction)}, {"branch", e.branch + 1}, {"status", to_string(e.status)}};
        ej["witness_exponent"] = e.witness_exponent ? json(to_fraction_string(*e.witness_exponent)) : json(nullptr);
        ej["witness_im"] = e.witness_im;
        entries.push_back(std::move(ej));
    }
    return json{{"all_hold", rep.all_hold}, {"entries", entries}};
}

inline json oracle_json(const OracleReport& rep) {
    json out{{"ran", rep.ran}, {"asserted", rep.asserted}, {"consistent", rep.consistent}, {"notes", rep.notes}};
    auto growth = [](const GrowthClass& g) {
        return json{{"label", to_string(g.label)},
                    {"slope_logx", g.slope_logx},
                    {"slope_x", g.slope_x},
                    {"rms_logx_fit", g.rms_logx_fit}};
    };
    out["witness_growth"] = rep.witness_growth ? growth(*rep.witness_growth) : json(nullptr);
    json sol = json::array();
    for (const auto& g : rep.solution_growth) sol.push_back(growth(g));
    out["solution_growth"] = sol;
    return out;
}

}  // namespace report_detail

inline nlohmann::json report_json(const ReportMeta& meta, const AnalysisResult& res,
                                  const std::optional<OracleReport>& oracle) {
    using nlohmann::json;
    json out;
    out["schema"] = "regsym/1";
    out["input"] = json{{"symbol", meta.symbol_text},
                        {"quantization", to_string(meta.quantization)},
                        {"directions", to_string(meta.directions)}};
    out["weyl_symbol"] = to_string(res.weyl_symbol);
    {
        json cls{{"class", to_string(res.classification.kind)}, {"detail", res.classification.detail}};
        cls["quasi_exponent"] = res.classification.quasi_exponent
                                    ? json(to_fraction_string(*res.classification.quasi_exponent))
                                    : json(nullptr);
        cls["sg_m"] = res.classification.sg_m ? json(*res.classification.sg_m) : json(nullptr);
        cls["sg_n"] = res.classification.sg_n ? json(*res.classification.sg_n) : json(nullptr);
        out["classification"] = cls;
    }
    out["normalized"] = res.normalized ? json{{"symbol", to_string(*res.normalized)},
                                              {"shear_lambda", to_fraction_string(res.shear_lambda)}}
                                       : json(nullptr);

    json dirs = json::array();
    for (std::size_t d = 0; d < res.branch_sets.size(); ++d) {
        const auto& set = res.branch_sets[d];
        json dj;
        dj["direction"] = to_string(set.direction);
        if (set.direction == Direction::MinusInfinity)
            dj["note"] = "series represent xi_j(-t) in the positive variable t";
        json branches = json::array();
        for (std::size_t b = 0; b < set.branches.size(); ++b)
            branches.push_back(report_detail::branch_json(set.branches[b], static_cast<int>(b),
                                                          set.residual_slopes[b]));
        dj["branches"] = branches;
        if (d < res.verdict.separation.size()) dj["separation"] = report_detail::separation_json(res.verdict.separation[d]);
        dirs.push_back(std::move(dj));
    }
    out["directions"] = dirs;
    out["condition"] = res.verdict.condition ? report_detail::condition_json(*res.verdict.condition) : nlohmann::json(nullptr);
    out["verdict"] = nlohmann::json{{"decision", to_string(res.verdict.decision)},
                                    {"path", to_string(res.verdict.path)},
                                    {"diagnostics", res.verdict.diagnostics}};
    out["tolerances"] = nlohmann::json{{"depth", to_fraction_string(res.verdict.tolerances.depth)},
                                       {"precision", res.verdict.tolerances.precision},
                                       {"im_tol", res.verdict.tolerances.im_tol},
                                       {"lambda_tol", res.verdict.tolerances.lambda_tol},
                                       {"cluster_tol", res.verdict.tolerances.cluster_tol},
                                       {"zero_tol", res.verdict.tolerances.zero_tol}};
    out["oracle"] = oracle ? report_detail::oracle_json(*oracle) : nlohmann::json(nullptr);
    out["timing_ms"] = meta.elapsed_ms;
    return out;
}

inline std::string format_complex(const Complex& c) {
    std::ostringstream os;
    os.precision(10);
    if (c.imag() == 0.0) {
        os << c.real();
    } else if (c.real() == 0.0) {
        os << c.imag() << "i";
    } else {
        os << c.real() << (c.imag() > 0 ? " + " : " - ") << std::abs(c.imag()) << "i";
    }
    return os.str();
}

inline std::string format_series(const PuiseuxSeries& s) {
    if (s.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : s.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << format_complex(c) << ")";
        if (e != 0) os << "*x^(" << to_fraction_string(e) << ")";
    }
    if (!s.exact) os << " + O(x^(" << to_fraction_string(s.truncation_exponent) << "))";
    return os.str();
}

inline std::string report_text(const ReportMeta& meta, const AnalysisResult& res,
                               const std::optional<OracleReport>& oracle) {
    std::ostringstream os;
    os << "symbol        : " << meta.symbol_text << "  (read as " << to_string(meta.quantization) << " symbol)\n";
    os << "weyl symbol   : " << to_string(res.weyl_symbol) << "\n";
    os << "classification: " << to_string(res.classification.kind);
    if (!res.classification.detail.empty()) os << "  [" << res.classification.detail << "]";
    os << "\n";
    if (res.normalized)
        os << "normalized    : " << to_string(*res.normalized) << "  (shear lambda = "
           << to_fraction_string(res.shear_lambda) << ")\n";
    for (std::size_t d = 0; d < res.branch_sets.size(); ++d) {
        const auto& set = res.branch_sets[d];
        os << "direction " << to_string(set.direction);
        if (set.direction == Direction::MinusInfinity) os << "  (series in t = -x, t -> +inf)";
        os << ":\n";
        for (std::size_t b = 0; b < set.branches.size(); ++b) {
            os << "  xi_" << (b + 1) << "(x) = " << format_series(set.branches[b]);
            if (set.branches[b].coincident_group >= 0)
                os << "   [coincident group " << set.branches[b].coincident_group << "]";
            if (std::isfinite(set.residual_slopes[b]))
                os << "   [residual slope " << set.residual_slopes[b] << "]";
            else
                os << "   [residual identically 0]";
            os << "\n";
        }
        if (d < res.verdict.separation.size()) {
            const auto& sep = res.verdict.separation[d];
            os << "  separation: " << (sep.separated ? "Separated" : "Fails") << "\n";
            for (const auto& p : sep.pairs) {
                os << "    pair (" << (p.j + 1) << "," << (p.k + 1) << "): " << to_string(p.status);
                if (p.witness_exponent) os << "  witness exponent " << to_fraction_string(*p.witness_exponent);
                if (!p.note.empty()) os << "  [" << p.note << "]";
                os << "\n";
            }
        }
    }
    if (res.verdict.condition) {
        os << "growth condition (|x Im xi_j| -> inf): "
           << (res.verdict.condition->all_hold ? "holds for every branch" : "fails for some branch") << "\n";
        for (const auto& e : res.verdict.condition->entries) {
            os << "  branch " << (e.branch + 1) << " (" << to_string(e.direction) << "): " << to_string(e.status);
            if (e.witness_exponent)
                os << "  [Im " << e.witness_im << " at exponent " << to_fraction_string(*e.witness_exponent) << "]";
            os << "\n";
        }
    }
    os << "verdict       : " << to_string(res.verdict.decision) << "  (path: " << to_string(res.verdict.path) << ")\n";
    for (const auto& diag : res.verdict.diagnostics) os << "  note: " << diag << "\n";
    if (oracle) {
        os << "oracle        : " << (oracle->consistent ? "consistent" : "INCONSISTENT")
           << (oracle->asserted ? "" : " (advisory)") << "\n";
        for (const auto& n : oracle->notes) os << "  " << n << "\n";
    }
    os << "tolerances    : depth " << to_fraction_string(res.verdict.tolerances.depth) << ", precision "
       << res.verdict.tolerances.precision << ", im_tol " << res.verdict.tolerances.im_tol << ", lambda_tol "
       << res.verdict.tolerances.lambda_tol << ", cluster_tol " << res.verdict.tolerances.cluster_tol << ", zero_tol "
       << res.verdict.tolerances.zero_tol << "\n";
    os << "time          : " << meta.elapsed_ms << " ms\n";
    return os.str();
}

}  // namespace regsym
