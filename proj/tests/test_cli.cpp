#include "doctest.h"

#include "philoop/errors.hpp"
#include "philoop/suite.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <string>
#include <sys/wait.h>

using namespace philoop;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string &args)
{
    std::string cmd = std::string(PHILOOP_CLI) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE *)> pipe(popen(cmd.c_str(), "r"), pclose);
    REQUIRE(pipe);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe.get()))
        out.append(buf, n);
    int status = pclose(pipe.release());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

SuiteConfig config(std::string suite)
{
    SuiteConfig cfg;
    cfg.suite = std::move(suite);
    cfg.samples = 10;
    return cfg;
}

} // namespace

TEST_CASE("run_suite is deterministic")
{
    SuiteConfig cfg = config("all");
    cfg.seed = 11;
    std::string a = run_suite(cfg).to_json(cfg).dump();
    std::string b = run_suite(cfg).to_json(cfg).dump();
    CHECK(a == b);
    cfg.seed = 12;
    CHECK(run_suite(cfg).to_json(cfg).dump() != a);
}

TEST_CASE("report layout")
{
    SuiteConfig cfg = config("virasoro");
    cfg.p = "x";
    cfg.seed = 7;
    auto res = run_suite(cfg);
    auto j = res.to_json(cfg);
    CHECK(j["suite"] == "virasoro");
    CHECK(j["config"]["seed"] == 7);
    CHECK(j["config"]["p"] == "x");
    CHECK(j["sign_convention"]["s1"] == -1);
    CHECK(j["sign_convention"]["s2"] == 1);
    CHECK(j["summary"]["ok"] == true);
    std::string prev;
    for (const auto &c : j["checks"]) {
        CHECK(prev <= c["name"].get<std::string>());
        prev = c["name"];
    }
}

TEST_CASE("every suite passes on its defaults")
{
    for (const auto &name : suite_names()) {
        if (name == "all")
            continue;
        SuiteConfig cfg = config(name);
        auto res = run_suite(cfg);
        CHECK_MESSAGE(res.passed(), name, "\n", res.to_text());
        CHECK(!res.report.checks().empty());
    }
}

TEST_CASE("configuration errors")
{
    SuiteConfig cfg = config("affine");
    cfg.p = "x^";
    CHECK_THROWS_AS(run_suite(cfg), ParseError);
    cfg.p = "0";
    CHECK_THROWS_AS(run_suite(cfg), ParseError);
    cfg = config("affine");
    cfg.algebra = "novikov1";
    CHECK_THROWS_AS(run_suite(cfg), UsageError);
    cfg = config("nonsense");
    CHECK_THROWS_AS(run_suite(cfg), UsageError);
    cfg = config("fock");
    cfg.level = "1/";
    CHECK_THROWS_AS(run_suite(cfg), ParseError);
}

TEST_CASE("incompatible twisted configuration is a check-level error")
{
    // p = 1 + x admits no character pair with chi_phi = -1
    SuiteConfig cfg = config("twisted");
    cfg.p = "1 + x";
    auto res = run_suite(cfg);
    CHECK_FALSE(res.passed());
    REQUIRE(res.report.checks().size() == 1);
    CHECK(res.report.checks()[0].status == Status::error);
}

TEST_CASE("precision shortfall is a check-level error")
{
    SuiteConfig cfg = config("loop");
    cfg.algebra = "virasoro";
    cfg.p = "1 + x";
    cfg.precision = 1;
    auto res = run_suite(cfg);
    CHECK_FALSE(res.passed());
    bool any_error = false;
    for (const auto &c : res.report.checks())
        any_error = any_error || c.status == Status::error;
    CHECK(any_error);
}

TEST_CASE("command line exit codes")
{
    CHECK(run_cli("verify phi").code == 0);
    CHECK(run_cli("verify affine --p \"x^\"").code == 2);
    CHECK(run_cli("verify nonsense").code == 2);
    CHECK(run_cli("verify").code == 2);
    CHECK(run_cli("verify affine --samples notanumber").code == 2);
    CHECK(run_cli("verify affine --algebra novikov1").code == 2);
    CHECK(run_cli("verify twisted --p \"1 + x\"").code == 1);
    CHECK(run_cli("verify fock --p x --level 1/2 --window 4 --degree 3").code == 0);

    std::string path = "cli_bad_form.json";
    std::ofstream(path) << R"({"type":"lie","basis":["a","b"],"brackets":{"[a,b]":{"a":"1"}},"form":[[1,0],[0,1]]})";
    CHECK(run_cli("verify axioms --algebra " + path).code == 1);
    std::ofstream(path) << R"({"type":"lie","basis":[)";
    CHECK(run_cli("verify axioms --algebra " + path).code == 2);
    std::remove(path.c_str());
}

TEST_CASE("command line output")
{
    Run a = run_cli("verify virasoro --p x --seed 7 --json");
    Run b = run_cli("verify virasoro --p x --seed 7 --json");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["sign_convention"]["s1"] == -1);

    Run br = run_cli("bracket --algebra sl2 --p x --u \"e[x^-1]\" --v \"f[x]\"");
    CHECK(br.code == 0);
    auto bj = nlohmann::json::parse(br.out);
    CHECK(bj["text"] == "h[1] + c[-1]");
    CHECK(run_cli("bracket --algebra sl2 --p x --u \"q[x]\" --v \"f[x]\"").code == 2);
}
