#pragma once

// Command-line front end, exposed as a library function so the binary
// stays a two-line main and tests can drive it in-process.
//
//   analyze <symbol>   decide global regularity, print text or JSON report
//   fixtures <path>    run a fixture file of {symbol, expected} records
//   selftest           run the exact property suites
//
// Exit codes for analyze: 0 Regular, 1 NotRegular, 2 Inconclusive,
// 3 usage or engine error.

#include "regsym/cross_validate.hpp"
#include "regsym/parse.hpp"
#include "regsym/regularity.hpp"
#include "regsym/report.hpp"
#include "regsym/selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace regsym::cli {

namespace cli_detail {

inline int decision_exit_code(Decision d) {
    switch (d) {
        case Decision::Regular: return 0;
        case Decision::NotRegular: return 1;
        default: return 2;
    }
}

struct AnalyzeFlags {
    std::string symbol;
    std::string quantization = "weyl";
    std::string direction = "both";
    std::string depth = "-9/4";
    double precision = 1e-12;
    double im_tol = 1e-8;
    double lambda_tol = 1e-8;
    double cluster_tol = 1e-8;
    double zero_tol = 1e-10;
    bool json_output = false;
    bool oracle = false;
};

inline DecisionOptions to_options(const AnalyzeFlags& f) {
    DecisionOptions opt;
    opt.quantization = f.quantization == "left" ? Quantization::Left : Quantization::Weyl;
    opt.directions = f.direction == "plus"    ? DirectionMode::Plus
                     : f.direction == "minus" ? DirectionMode::Minus
                                              : DirectionMode::Both;
    opt.tol.depth = rational_from_string(f.depth);
    opt.tol.precision = f.precision;
    opt.tol.im_tol = f.im_tol;
    opt.tol.lambda_tol = f.lambda_tol;
    opt.tol.cluster_tol = f.cluster_tol;
    opt.tol.zero_tol = f.zero_tol;
    return opt;
}

inline int run_analyze(const AnalyzeFlags& flags, std::ostream& out, std::ostream& err) {
    DecisionOptions opt;
    try {
        opt = to_options(flags);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    if (!(opt.tol.depth <= Rational(-1))) {
        err << "error: --depth must be <= -1\n";
        return 3;
    }
    try {
        auto t0 = std::chrono::steady_clock::now();
        BivariatePoly p = parse_symbol(flags.symbol);
        AnalysisResult res = decide(p, opt);
        std::optional<OracleReport> oracle;
        if (flags.oracle) oracle = cross_validate(res.weyl_symbol, res, opt.tol);
        auto t1 = std::chrono::steady_clock::now();

        ReportMeta meta;
        meta.symbol_text = flags.symbol;
        meta.quantization = opt.quantization;
        meta.directions = opt.directions;
        meta.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        if (flags.json_output)
            out << report_json(meta, res, oracle).dump(2) << "\n";
        else
            out << report_text(meta, res, oracle);
        return decision_exit_code(res.verdict.decision);
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const UnsupportedExponent& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ZeroPolynomial&) {
        err << "error: the zero polynomial has no regularity analysis\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

inline int run_fixtures(const std::string& path, const AnalyzeFlags& defaults, std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot open fixture file '" << path << "'\n";
        return 3;
    }
    nlohmann::json doc;
    try {
        in >> doc;
        if (!doc.is_array()) throw std::runtime_error("fixture file must be a JSON array");
    } catch (const std::exception& e) {
        err << "error: malformed fixture file: " << e.what() << "\n";
        return 3;
    }
    int run = 0, passed = 0;
    for (const auto& item : doc) {
        std::string name, symbol, quant = "weyl", expected;
        try {
            name = item.at("name").get<std::string>();
            symbol = item.at("symbol").get<std::string>();
            expected = item.at("expected").get<std::string>();
            if (item.contains("quantization")) quant = item.at("quantization").get<std::string>();
        } catch (const std::exception& e) {
            err << "error: malformed fixture entry: " << e.what() << "\n";
            return 3;
        }
        AnalyzeFlags flags = defaults;
        flags.symbol = symbol;
        flags.quantization = quant;
        std::string got;
        try {
            AnalysisResult res = decide(parse_symbol(symbol), to_options(flags));
            got = to_string(res.verdict.decision);
        } catch (const std::exception& e) {
            got = std::string("error: ") + e.what();
        }
        ++run;
        bool ok = got == expected;
        passed += ok ? 1 : 0;
        out << (ok ? "PASS  " : "FAIL  ") << name << ": " << symbol << " -> " << got;
        if (!ok) out << " (expected " << expected << ")";
        out << "\n";
    }
    out << run << " run, " << passed << " passed, " << (run - passed) << " failed\n";
    return run == passed ? 0 : 1;
}

inline int run_selftest_cmd(int cases, std::uint64_t seed, std::ostream& out) {
    bool all_ok = true;
    for (const auto& suite : run_selftest(cases, seed)) {
        out << (suite.ok() ? "PASS  " : "FAIL  ") << suite.name << " (" << suite.cases_run << " cases)\n";
        for (const auto& f : suite.failures) out << "      " << f << "\n";
        all_ok = all_ok && suite.ok();
    }
    out << (all_ok ? "all properties hold\n" : "property failures detected\n");
    return all_ok ? 0 : 1;
}

}  // namespace cli_detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"global regularity of ODE operators with polynomial coefficients"};
    app.require_subcommand(1);

    cli_detail::AnalyzeFlags flags;
    if (const char* env = std::getenv("REGSYM_PRECISION")) {
        try {
            flags.precision = std::stod(env);
        } catch (const std::exception&) {
            err << "error: REGSYM_PRECISION is not a number\n";
            return 3;
        }
    }

    auto* analyze = app.add_subcommand("analyze", "decide global regularity of a symbol");
    analyze->add_option("symbol", flags.symbol, "symbol in x, xi (e.g. \"xi^2 + x^2\")")->required();
    analyze->add_option("--quantization", flags.quantization, "how to read the input symbol")
        ->check(CLI::IsMember({"weyl", "left"}))
        ->capture_default_str();
    analyze->add_option("--direction", flags.direction, "directions of infinity to analyze")
        ->check(CLI::IsMember({"both", "plus", "minus"}))
        ->capture_default_str();
    analyze->add_option("--depth", flags.depth, "truncation exponent (rational, <= -1)")->capture_default_str();
    analyze->add_option("--precision", flags.precision, "root-finder certificate")->capture_default_str();
    analyze->add_option("--im-tol", flags.im_tol, "imaginary-part tolerance")->capture_default_str();
    analyze->add_option("--lambda-tol", flags.lambda_tol, "leading-slope reality tolerance")->capture_default_str();
    analyze->add_option("--cluster-tol", flags.cluster_tol, "root clustering tolerance")->capture_default_str();
    analyze->add_option("--zero-tol", flags.zero_tol, "coefficient dropping tolerance")->capture_default_str();
    analyze->add_flag("--json", flags.json_output, "emit the JSON report");
    analyze->add_flag("--oracle", flags.oracle, "cross-validate the verdict by numerical integration");

    std::string fixture_path;
    auto* fixtures = app.add_subcommand("fixtures", "run a fixture file and compare expected decisions");
    fixtures->add_option("path", fixture_path, "JSON array of {name, symbol, quantization, expected}")->required();

    int cases = 500;
    std::uint64_t seed = 12345;
    auto* selftest = app.add_subcommand("selftest", "run the exact property suites");
    selftest->add_option("--cases", cases, "cases per suite")->capture_default_str();
    selftest->add_option("--seed", seed, "random seed")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 3;
    }

    if (app.got_subcommand(analyze)) return cli_detail::run_analyze(flags, out, err);
    if (app.got_subcommand(fixtures)) return cli_detail::run_fixtures(fixture_path, flags, out, err);
    return cli_detail::run_selftest_cmd(cases, seed, out);
}

}  // namespace regsym::cli
