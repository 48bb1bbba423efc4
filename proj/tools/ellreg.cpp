#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ellreg/verify.hpp"

using namespace ellreg;

namespace {

CurveModel parse_curve(const std::string& s) {
    std::vector<long long> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t pos = 0;
            v.push_back(std::stoll(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw config_error("--curve: bad integer '" + tok + "'");
        }
    }
    if (v.size() != 6) throw config_error("--curve expects a1,a2,a3,a4,a6,N");
    try {
        return CurveModel(v[0], v[1], v[2], v[3], v[4], v[5]);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("--curve: ") + e.what());
    }
}

void print_report(const CheckReport& r) {
    std::string tag = r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL");
    std::string in = r.inputs.contains("chi") ? " " + r.inputs["chi"].get<std::string>() : "";
    std::printf("%-4s %-36s%s rel_err=%.3e tol=%.1e %.0f ms%s%s\n", tag.c_str(), r.id.c_str(), in.c_str(), r.rel_err,
                r.tolerance, r.wall_ms, r.note.empty() ? "" : "  # ", r.note.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical checks for elliptic regulators and L(E,2)"};
    app.require_subcommand(1);

    VerifyConfig cfg;
    std::string suite, curve_s, out;
    double tol = 0.0;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "thm8|cor101|thm1|thm2|thm3|mahler|appendix|all")->required();
    verify->add_option("--level", cfg.level, "prime level");
    verify->add_option("--curve", curve_s, "a1,a2,a3,a4,a6,N");
    auto* tol_opt = verify->add_option("--tolerance", tol, "override every tolerance");
    verify->add_option("--terms", cfg.terms, "Dirichlet coefficients of the form");
    verify->add_option("--jobs", cfg.jobs, "worker threads (0: all cores)");
    verify->add_option("--out", out, "write the JSON report here");

    int ulevel = 0;
    std::string label;
    auto* units = app.add_subcommand("units", "divisor of the modular unit attached to an even character");
    units->add_option("--level", ulevel, "level")->required();
    units->add_option("--char", label, "character label, e.g. 13:g=2,zeta12^2")->required();

    std::string poly;
    int mjobs = 0;
    auto* mahler = app.add_subcommand("mahler", "logarithmic Mahler measure of a two-variable polynomial");
    mahler->add_option("--poly", poly, "\"X^i Y^j: c; ...\"")->required();
    mahler->add_option("--jobs", mjobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            if (!curve_s.empty()) cfg.curve = parse_curve(curve_s);
            if (*tol_opt) cfg.tolerance = tol;
            if (cfg.jobs < 0) throw config_error("--jobs must be >= 0");
            if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
                throw config_error("unknown suite '" + suite + "'");
            VerifyContext ctx(cfg);
            auto t0 = Clock::now();
            Suite reports = suite == "all" ? run_all(ctx) : run_suite(suite, ctx);
            bool ok = all_pass(reports);
            for (auto& r : reports) print_report(r);
            std::printf("%s %s (%.0f ms)\n", ok ? "PASS" : "FAIL", suite.c_str(), ms_since(t0));
            if (!out.empty()) {
                nlohmann::json j = {{"suite", suite},
                                    {"level", ctx.p()},
                                    {"curve", {ctx.curve().a1, ctx.curve().a2, ctx.curve().a3, ctx.curve().a4, ctx.curve().a6}},
                                    {"pass", ok},
                                    {"wall_ms", ms_since(t0)},
                                    {"reports", to_json(reports)}};
                std::ofstream f(out);
                if (!f) throw config_error("cannot write " + out);
                f << j.dump(2) << "\n";
            }
            return ok ? 0 : 1;
        }
        if (*units) {
            DirichletCharacter chi;
            try {
                chi = parse_character(label);
            } catch (const std::exception& e) {
                throw config_error(std::string("--char: ") + e.what());
            }
            if (chi.modulus() != ulevel) throw config_error("--char modulus differs from --level");
            if (!chi.is_even() || chi.is_trivial()) throw config_error("--char must be even and nontrivial");
            nlohmann::json j = {{"character", chi.label()},
                                {"divisor", to_json(unit_divisor_chi(chi))},
                                {"hat_divisor", to_json(unit_divisor_chihat(chi))}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*mahler) {
            BivariatePolynomial P;
            try {
                P = BivariatePolynomial::parse(poly);
            } catch (const std::exception& e) {
                throw config_error(std::string("--poly: ") + e.what());
            }
            MahlerControl mc;
            mc.jobs = mjobs;
            auto m = mahler_measure(P, mc);
            nlohmann::json j = {{"poly", P.to_string()},
                                {"value", m.value},
                                {"error_estimate", m.error_estimate},
                                {"breakpoints", m.breakpoints},
                                {"panels", m.panels}};
            std::cout << j.dump(2) << "\n";
            return std::isfinite(m.value) ? 0 : 1;
        }
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
