#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgen/audit.hpp"
#include "qgen/qanalytic.hpp"
#include "qgen/qcore.hpp"
#include "qgen/qpadic.hpp"
#include "qgen/qseries.hpp"

namespace qgen::cli {

using json = nlohmann::ordered_json;

namespace detail {

inline void emit_json(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

inline std::string csv_field(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

/// CSV projection of the "rows" array; column order follows the JSON keys.
inline void emit_csv(std::ostream& out, const json& doc) {
    const auto& rows = doc.at("rows");
    if (rows.empty()) return;
    bool first = true;
    for (const auto& [k, v] : rows.front().items()) {
        out << (first ? "" : ",") << csv_field(k);
        first = false;
    }
    out << "\n";
    for (const auto& row : rows) {
        first = true;
        for (const auto& [k, v] : row.items()) {
            out << (first ? "" : ",");
            out << csv_field(v.is_string() ? v.get<std::string>() : v.dump());
            first = false;
        }
        out << "\n";
    }
}

inline void emit(std::ostream& out, const json& doc, const std::string& format) {
    if (format == "csv") emit_csv(out, doc);
    else emit_json(out, doc);
}

inline unsigned long env_budget() {
    if (const char* s = std::getenv("QGEN_BUDGET")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw std::invalid_argument("QGEN_BUDGET must be a positive integer");
    }
    return kDefaultTermBudget;
}

inline std::pair<double, double> parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

inline const char* status_str(audit::CaseStatus s) { return audit::to_string(s); }

inline json audit_to_json(const audit::AuditResult& r) {
    json rows = json::array();
    for (const auto& c : r.cases)
        rows.push_back(json{{"suite", r.suite},
                            {"case", c.key},
                            {"lhs", c.lhs},
                            {"rhs", c.rhs},
                            {"residual", c.residual},
                            {"status", status_str(c.status)}});
    return rows;
}

}  // namespace detail

/// Runs the command line given args (without the program name). All output
/// goes to `out`, diagnostics to `err`; the return value is the process exit
/// code: 0 on success and for a clean audit, 1 for an audit with failures,
/// 2 for domain/runtime errors.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"modified q-Genocchi numbers, identities and the weighted q-zeta function"};
    app.require_subcommand(1);

    std::string format = "json";
    unsigned n_max = 10;
    unsigned alpha = 1, beta = 1;
    std::string q_str = "1/2";
    std::optional<long> x_arg;
    std::optional<std::string> y_arg;
    std::string s_str = "0";
    double x_real = 1.0;
    double tol = 1e-14;
    long p_prime = 3;
    long precision = 6;
    unsigned level = 4;
    unsigned witt_n = 0;
    unsigned weight_max = 3;
    std::string suite = "all";
    std::string orientation = "lemma";

    const auto add_format = [&](CLI::App* c) {
        c->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    };
    const auto add_weights = [&](CLI::App* c) {
        c->add_option("--alpha", alpha, "bracket weight alpha (>= 1)");
        c->add_option("--beta", beta, "measure weight beta (>= 1)");
    };

    auto* numbers = app.add_subcommand("numbers", "table of g_n for n = 0..n-max");
    numbers->add_option("--n-max", n_max);
    add_weights(numbers);
    numbers->add_option("--q", q_str, "rational q as NUM/DEN");
    add_format(numbers);

    auto* poly = app.add_subcommand("poly", "table of g_n(x) at y = q^x or explicit y");
    poly->add_option("--n-max", n_max);
    add_weights(poly);
    poly->add_option("--q", q_str, "rational q as NUM/DEN");
    auto* xopt = poly->add_option("--x", x_arg, "integer argument x (y = q^x)");
    poly->add_option("--y", y_arg, "rational y = q^x directly as NUM/DEN")->excludes(xopt);
    add_format(poly);

    auto* euler = app.add_subcommand("euler", "table of modified q-Euler numbers eps_n");
    euler->add_option("--n-max", n_max);
    euler->add_option("--q", q_str, "rational q as NUM/DEN");
    add_format(euler);

    auto* classical = app.add_subcommand("classical", "classical Genocchi numbers G_n");
    classical->add_option("--n-max", n_max);
    add_format(classical);

    auto* limit = app.add_subcommand("limit", "q->1 limits of g_n (classical values)");
    limit->add_option("--n-max", n_max);
    add_weights(limit);
    add_format(limit);

    auto* zeta = app.add_subcommand("zeta", "weighted q-zeta value xi(s, x | q)");
    zeta->add_option("--s", s_str, "complex s as RE[,IM]")->required();
    zeta->add_option("--x", x_real, "argument x > 0");
    add_weights(zeta);
    zeta->add_option("--q", q_str, "rational q in (0,1) as NUM/DEN");
    zeta->add_option("--tol", tol, "series truncation tolerance");
    add_format(zeta);

    auto* witt = app.add_subcommand("witt", "p-adic convergence table for the Witt formula");
    witt->add_option("--p", p_prime, "odd prime")->required();
    witt->add_option("--q", q_str, "rational q with q = 1 (mod p)")->required();
    witt->add_option("--n", witt_n, "moment index n");
    witt->add_option("--precision", precision, "base p-adic digits K");
    witt->add_option("--level", level, "maximum level N");
    add_weights(witt);
    add_format(witt);

    auto* auditc = app.add_subcommand("audit", "run identity audit suites");
    auditc->add_option("--suite", suite)
        ->check(CLI::IsMember({"boundary", "tail", "mult", "witt", "lemma1", "limit", "interp",
                               "euler", "all"}));
    auditc->add_option("--orientation", orientation, "tail orientation")
        ->check(CLI::IsMember({"lemma", "as_printed"}));
    auditc->add_option("--tol", tol, "tolerance override for interp");
    auto* grid_q = auditc->add_option("--q", q_str, "restrict the q grid to a single value");
    auto* grid_n = auditc->add_option("--n-max", n_max, "override the suite's n range");
    auto* grid_w = auditc->add_option("--weight-max", weight_max, "override the weight range");
    add_format(auditc);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        const unsigned long budget = detail::env_budget();

        if (*numbers || *poly || *euler) {
            Rational qv;
            try {
                qv = parse_rational(q_str);
            } catch (const std::exception& e) {
                err << e.what() << "\n";
                return 2;
            }
            if (qv == Rational(1)) {
                err << "q = 1 is degenerate here; use the `limit` subcommand for q -> 1 values\n";
                return 2;
            }
            const QPoint q(qv);
            json rows = json::array();
            json params;
            std::string command;
            if (*numbers) {
                command = "numbers";
                params = json{{"n_max", n_max}, {"alpha", alpha}, {"beta", beta}, {"q", qv.str()}};
                for (unsigned n = 0; n <= n_max; ++n)
                    rows.push_back(json{{"n", n},
                                        {"value", genocchi_number(n, Weights(alpha, beta), q).str()}});
            } else if (*poly) {
                command = "poly";
                PolyArg arg = y_arg ? PolyArg::at_y(parse_rational(*y_arg))
                                    : PolyArg::at_x(x_arg.value_or(0), q);
                params = json{{"n_max", n_max}, {"alpha", alpha}, {"beta", beta}, {"q", qv.str()}};
                if (y_arg) params["y"] = arg.y().str();
                else params["x"] = x_arg.value_or(0);
                for (unsigned n = 0; n <= n_max; ++n)
                    rows.push_back(
                        json{{"n", n},
                             {"value", genocchi_poly(n, Weights(alpha, beta), q, arg).str()}});
            } else {
                command = "euler";
                params = json{{"n_max", n_max}, {"q", qv.str()}};
                for (unsigned n = 0; n <= n_max; ++n)
                    rows.push_back(json{{"n", n}, {"value", q_euler_number(n, q).str()}});
            }
            detail::emit(out, json{{"command", command}, {"params", params}, {"rows", rows}}, format);
            return 0;
        }

        if (*classical) {
            json rows = json::array();
            for (unsigned n = 0; n <= n_max; ++n)
                rows.push_back(json{{"n", n}, {"value", classical_genocchi(n).str()}});
            detail::emit(out,
                         json{{"command", "classical"}, {"params", json{{"n_max", n_max}}},
                              {"rows", rows}},
                         format);
            return 0;
        }

        if (*limit) {
            json rows = json::array();
            for (unsigned n = 0; n <= n_max; ++n)
                rows.push_back(json{
                    {"n", n},
                    {"value", series_genocchi(n, Weights(alpha, beta), n + 4).coeff(0).str()}});
            detail::emit(out,
                         json{{"command", "limit"},
                              {"params", json{{"n_max", n_max}, {"alpha", alpha}, {"beta", beta}}},
                              {"rows", rows}},
                         format);
            return 0;
        }

        if (*zeta) {
            const auto [sre, sim] = detail::parse_complex(s_str);
            const Rational qv = parse_rational(q_str);
            const ZetaParams zp(ComplexValue(sre, sim), x_real, Weights(alpha, beta),
                                qv.to_double());
            const ComplexValue v = qzeta(zp, tol);
            json rows = json::array();
            rows.push_back(json{{"re", v.real()}, {"im", v.imag()}, {"precision", "ieee754-binary64"}});
            detail::emit(out,
                         json{{"command", "zeta"},
                              {"params", json{{"s", s_str},
                                              {"x", x_real},
                                              {"alpha", alpha},
                                              {"beta", beta},
                                              {"q", qv.str()},
                                              {"tol", tol}}},
                              {"rows", rows}},
                         format);
            return 0;
        }

        if (*witt) {
            const Rational qv = parse_rational(q_str);
            const PadicQ pq(qv, p_prime);
            const auto rep =
                witt_check(witt_n, Weights(alpha, beta), pq, precision, level, 2, budget);
            json rows = json::array();
            for (const auto& e : rep.entries)
                rows.push_back(json{{"level", e.level},
                                    {"valuation", e.valuation_bound},
                                    {"exact", e.exact},
                                    {"difference", e.difference}});
            detail::emit(out,
                         json{{"command", "witt"},
                              {"params", json{{"p", p_prime},
                                              {"q", qv.str()},
                                              {"n", witt_n},
                                              {"alpha", alpha},
                                              {"beta", beta},
                                              {"precision", precision},
                                              {"level", level}}},
                              {"rows", rows},
                              {"closed_form", rep.closed_form.str()},
                              {"passed", rep.passed}},
                         format);
            return rep.passed ? 0 : 1;
        }

        if (*auditc) {
            audit::GridConfig grid;
            grid.budget = budget;
            if (grid_q->count() > 0) grid.q_grid = {parse_rational(q_str)};
            if (grid_n->count() > 0) {
                grid.boundary_n_max = n_max;
                grid.tail_n_max = n_max;
                grid.mult_n_max = std::max(1u, n_max);
                grid.limit_n_max = n_max;
                grid.euler_n_max = n_max;
                grid.witt_n_max = n_max;
                grid.interp_n_max = n_max;
            }
            if (grid_w->count() > 0) {
                grid.weight_max = weight_max;
                grid.witt_weight_max = std::min(weight_max, 2u);
                grid.interp_weight_max = std::min(weight_max, 2u);
            }
            if (auditc->count("--tol") > 0) grid.interp_tol = tol;
            const auto orient =
                orientation == "lemma" ? TailOrientation::Lemma : TailOrientation::AsPrinted;

            std::vector<audit::AuditResult> results;
            if (suite == "all") results = audit::run_all(grid);
            else if (suite == "boundary") results.push_back(audit::run_boundary(grid));
            else if (suite == "tail") results.push_back(audit::run_tail(grid, orient));
            else if (suite == "mult") results.push_back(audit::run_mult(grid));
            else if (suite == "witt") results.push_back(audit::run_witt(grid));
            else if (suite == "lemma1") results.push_back(audit::run_lemma1(grid));
            else if (suite == "limit") results.push_back(audit::run_limit(grid));
            else if (suite == "interp") results.push_back(audit::run_interp(grid));
            else if (suite == "euler") results.push_back(audit::run_euler(grid));

            json rows = json::array();
            unsigned pass = 0, fail = 0, errata = 0;
            for (const auto& r : results) {
                for (auto& row : detail::audit_to_json(r)) rows.push_back(row);
                pass += r.passed;
                fail += r.failed;
                errata += r.errata;
            }
            json doc{{"command", "audit"},
                     {"params", json{{"suite", suite},
                                     {"orientation", orientation},
                                     {"grid_version", audit::kGridVersion}}},
                     {"rows", rows},
                     {"summary",
                      json{{"pass", pass}, {"fail", fail}, {"erratum_expected", errata}}}};
            detail::emit(out, doc, format);
            return fail == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace qgen::cli
