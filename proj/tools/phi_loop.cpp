// phi-loop: brackets in loop algebras of conformal algebras and the
// verification suites, from the command line.
//
// Exit status: 0 when every check passes, 1 when a check fails or errors,
// 2 for usage and parse errors.

#include "philoop/algebra_io.hpp"
#include "philoop/errors.hpp"
#include "philoop/loop.hpp"
#include "philoop/parse.hpp"
#include "philoop/suite.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace philoop;

namespace {

constexpr int kUsage = 2;

int run_bracket(const std::string &algebra, const std::string &p, const std::string &u_text,
                const std::string &v_text, int precision)
{
    NamedAlgebra A = load_algebra(algebra);
    LaurentSeries ps = parse_series(p);
    if (ps.is_zero())
        throw ParseError("p must be nonzero", 0);
    LoopCtx ctx(A.algebra, Deformation(ps), std::nullopt, precision);
    LoopElement u = parse_loop_element(ctx, u_text);
    LoopElement v = parse_loop_element(ctx, v_text);
    LoopElement b = bracket(ctx, u, v);
    nlohmann::ordered_json out = {{"algebra", A.name},
                                  {"p", ctx.deformation().str()},
                                  {"u", str(ctx, u)},
                                  {"v", str(ctx, v)},
                                  {"bracket", to_json(ctx, b)},
                                  {"text", str(ctx, b)}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Brackets and verification suites for loop algebras of conformal algebras"};
    app.require_subcommand(1);

    std::string algebra, p = "1", u_text, v_text;
    int precision = 32;
    auto *br = app.add_subcommand("bracket", "Bracket of two loop algebra elements, printed as JSON");
    br->add_option("--algebra", algebra, "Built-in name (sl2, gl2, heisenberg, virasoro, novikov1) or JSON file")
        ->required();
    br->add_option("--p", p, "Deformation p(x), a Laurent polynomial")->capture_default_str();
    br->add_option("--u", u_text, "First element, e.g. \"e[x^-1] + h[2*x]\"")->required();
    br->add_option("--v", v_text, "Second element")->required();
    br->add_option("--precision", precision, "Terms of p^{-1} kept for residues")->capture_default_str();

    SuiteConfig cfg;
    bool as_json = false;
    auto *ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("suite", cfg.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    ver->add_option("--p", cfg.p, "Deformation p(x); default runs the suite's own list");
    ver->add_option("--algebra", cfg.algebra, "Built-in name or JSON file; default runs the suite's own list");
    ver->add_option("--M", cfg.M, "Order of the cyclic group (twisted suite)");
    ver->add_option("--samples", cfg.samples, "Random samples per check")->capture_default_str();
    ver->add_option("--seed", cfg.seed, "Seed for every sampler")->capture_default_str();
    ver->add_option("--window", cfg.window, "Mode window radius (default depends on the suite)");
    ver->add_option("--precision", cfg.precision, "Terms of p^{-1} kept for residues")->capture_default_str();
    ver->add_option("--level", cfg.level, "Level of the Fock module; default runs 0, 1, -2, 1/2");
    ver->add_option("--degree", cfg.degree, "Largest oscillator degree of the Fock basis")->capture_default_str();
    ver->add_flag("--json", as_json, "Print the full JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*br)
            return run_bracket(algebra, p, u_text, v_text, precision);
        SuiteResult res = run_suite(cfg);
        if (as_json)
            std::cout << res.to_json(cfg).dump(2) << "\n";
        else
            std::cout << res.to_text();
        return res.passed() ? 0 : 1;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
