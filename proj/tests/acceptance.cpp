// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic
// throughout. Exits nonzero if any criterion fails.

#include "philoop/errors.hpp"
#include "philoop/fock.hpp"
#include "philoop/models.hpp"
#include "philoop/parse.hpp"
#include "philoop/random.hpp"
#include "philoop/suite.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace philoop;

namespace {

struct Failure {
    std::string what;
};

void require(bool ok, const std::string &what)
{
    if (!ok)
        throw Failure{what};
}

void require_pass(const Report &r, const std::string &what)
{
    if (r.passed())
        return;
    for (const auto &c : r.checks())
        if (c.status != Status::pass)
            throw Failure{what + ": " + c.name + " " + (c.witness.is_null() ? c.info.dump() : c.witness.dump())};
}

Deformation D(const char *p) { return Deformation(parse_series(p)); }
LaurentSeries X(int e, Scalar c = Scalar(1)) { return LaurentSeries::monomial(c, e); }

LoopElement central(const Scalar &c)
{
    LoopElement u;
    u.central = c;
    return u;
}

LoopElement elem(int gen, const LaurentSeries &f)
{
    LoopElement u;
    if (!f.is_zero())
        u.parts.emplace(gen, f);
    return u;
}

GStructure current_action(const Matrix &sigma, const Scalar &chi, const Scalar &chi_phi, int M)
{
    return {M, scaled(sigma, chi), chi, chi_phi};
}

const char *const kFive[] = {"1", "x", "x^2", "x^-1", "1 + x"};
const char *const kFour[] = {"1", "x", "x^2", "1 + x"};

LieData heisenberg() { return catalog::abelian(1, {{Scalar(1)}}); }

void associate_law()
{
    for (const char *p : kFive)
        require(phi_compose_check(D(p), 8), std::string("composition law fails for p = ") + p);
    auto plain = phi_expand(D("1"), 8);
    require(plain[0] == X(1) && plain[1] == X(0), "p = 1 does not give x + z");
    for (int k = 2; k <= 8; ++k)
        require(plain[static_cast<std::size_t>(k)].is_zero(), "p = 1 has a z^k term");
    auto expo = phi_expand(D("x"), 8);
    for (int k = 0; k <= 8; ++k)
        require(expo[static_cast<std::size_t>(k)] == X(1, Scalar(1) / factorial(k)), "p = x is not x e^z");
}

void delta_annihilation()
{
    auto f3 = FieldCtx::make(3);
    for (const char *p : {"1", "x", "x^2"})
        for (const Scalar &lambda : {Scalar(1), Scalar(2), Scalar::zeta(f3)})
            for (int k = 1; k <= 3; ++k)
                for (int j = 0; j < k; ++j) {
                    DeltaSum s(D(p), {{lambda, j, X(0)}});
                    require(delta_mul_binomial(s, lambda, k, Window::square(12)).all_zero(),
                            "nonzero table for p = " + std::string(p) + ", lambda = " + lambda.str());
                }
}

void conformal_axioms()
{
    require_pass(check_axioms(build_current(catalog::sl2()), 50, 0), "sl2");
    require_pass(check_axioms(build_current(catalog::gl2()), 50, 0), "gl2");
    require_pass(check_axioms(build_virasoro(), 50, 0), "Virasoro");
    require_pass(check_axioms(build_novikov(catalog::novikov_line(Scalar(1), Scalar(1))), 50, 0), "Novikov");

    auto fails_with_witness = [](const Report &r) {
        for (const auto &c : r.checks())
            if (c.status == Status::fail)
                return !c.witness.is_null();
        return false;
    };
    auto g = catalog::sl2();
    g.form[2][2] = Scalar(1);
    require(fails_with_witness(check_axioms(build_current_unchecked(g), 50, 0)), "non-invariant form accepted");
    auto skew = build_current(catalog::sl2());
    skew.set(1, 0, 0, CAElement::gen(2));
    require(fails_with_witness(check_axioms(skew, 50, 0)), "asymmetric table accepted");
    auto vir = build_virasoro();
    vir.set(0, 0, 1, CAElement::gen(0, Scalar(3)));
    require(fails_with_witness(check_axioms(vir, 50, 0)), "wrong Virasoro coefficient accepted");
    NovikovData A = catalog::novikov_zero({{Scalar(0), Scalar(0)}, {Scalar(0), Scalar(0)}});
    A.product[0][1] = {Scalar(1), Scalar(0)};
    require(fails_with_witness(check_axioms(build_novikov_unchecked(A), 50, 0)), "non-Novikov table accepted");
}

void loop_lie_structure()
{
    const std::vector<std::pair<std::string, ConformalAlgebra>> algebras{
        {"sl2", build_current(catalog::sl2())},
        {"Virasoro", build_virasoro()},
        {"Novikov", build_novikov(catalog::novikov_line(Scalar(1), Scalar(1)))}};
    for (const auto &[name, C] : algebras)
        for (const char *p : kFour) {
            LoopCtx ctx(C, D(p));
            require_pass(jacobi_check(ctx, 50, 0), name + " p = " + p);
            require_pass(well_definedness_check(ctx, 50, 0), name + " p = " + p + " quotient");
        }
}

void field_commutator()
{
    for (const char *p : {"1", "x"}) {
        require_pass(check_field_commutator(LoopCtx(build_current(heisenberg()), D(p)), 0, 0, Window::square(8)),
                     std::string("Heisenberg p = ") + p);
        require_pass(check_field_commutator(LoopCtx(build_virasoro(), D(p)), 0, 0, Window::square(8)),
                     std::string("Virasoro p = ") + p);
    }
    // p = 1: the modes against residues computed directly
    LoopCtx h(build_current(heisenberg()), D("1"));
    for (int m = -8; m <= 8; ++m)
        for (int n = -8; n <= 8; ++n) {
            Scalar res = (X(m).derivative() * X(n)).residue();
            require(res == Scalar(m + n == 0 ? m : 0), "residue oracle disagrees with m delta_{m+n,0}");
            require(bracket(h, field_mode(h, 0, m), field_mode(h, 0, n)) == central(res), "[a_m, a_n]");
        }
    // L_m = L (x) x^{m+1}; bracket of vector fields -x^{m+1} d/dx with the
    // residue cocycle (1/12) Res(f''' g) as the oracle
    LoopCtx vir(build_virasoro(), D("1"));
    auto L = [&](int m) { return field_mode(vir, 0, m + 1); };
    for (int m = -8; m <= 8; ++m)
        for (int n = -8; n <= 8; ++n) {
            LaurentSeries f = X(m + 1), g = X(n + 1);
            Scalar cocycle = (f.derivative().derivative().derivative() * g).residue() * Scalar::rational(1, 12);
            require(cocycle == Scalar(m + n == 0 ? Rational(m * m * m - m, 12) : Rational(0)), "cocycle oracle");
            LoopElement expected = L(m + n) * Scalar(m - n);
            expected.central = cocycle;
            require(bracket(vir, L(m), L(n)) == expected, "[L_m, L_n]");
        }
}

void affine_isomorphism()
{
    const std::vector<std::pair<std::string, LieData>> algebras{
        {"sl2", catalog::sl2()}, {"abelian", heisenberg()}, {"gl2", catalog::gl2()}};
    for (const auto &[name, g] : algebras)
        for (const char *p : kFive)
            require_pass(verify_affine_iso(g, D(p), 50, 0), name + " p = " + p);
    Rng rng(0);
    std::vector<std::pair<LaurentSeries, LaurentSeries>> pairs;
    for (int s = 0; s < 20; ++s)
        pairs.emplace_back(rng.laurent(-5, 5), rng.laurent(-5, 5));
    for (const char *p : kFive) {
        LoopCtx ctx(build_current(heisenberg()), D(p));
        for (const auto &[f, g] : pairs)
            require(bracket(ctx, elem(0, f), elem(0, g)).central == (f.derivative() * g).residue(),
                    std::string("central cocycle depends on p = ") + p);
    }
}

void virasoro_isomorphism()
{
    Rng rng(0);
    for (int s = 0; s < 50; ++s)
        require(alpha_phi(D("1"), rng.laurent(-8, 8)).is_zero(), "alpha nonzero for p = 1");
    require(alpha_phi(D("x"), X(0)) == Scalar::rational(-1, 24), "alpha(p = x, f = 1) != -1/24");

    std::vector<std::pair<int, int>> common{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
    for (const char *p : kFive) {
        auto res = verify_virasoro_iso(D(p), 50, 0);
        require_pass(res.report, std::string("p = ") + p);
        require(!res.passing.empty(), std::string("no convention for p = ") + p);
        std::erase_if(common, [&](auto c) {
            return std::find(res.passing.begin(), res.passing.end(), c) == res.passing.end();
        });
    }
    require(common == std::vector<std::pair<int, int>>{{-1, 1}}, "no single convention across p");
    SuiteConfig cfg;
    cfg.suite = "virasoro";
    auto j = run_suite(cfg).to_json(cfg);
    require(j["sign_convention"]["s1"] == -1 && j["sign_convention"]["s2"] == 1, "convention not recorded");
}

void equivariant_layer()
{
    auto C = build_current(catalog::sl2());
    auto compatible = [&](const char *p, const Scalar &chi, const Scalar &chi_phi) {
        Report r = check_g_structure(C, current_action(catalog::sl2_chevalley(), chi, chi_phi, 2), D(p));
        return r.find("character_compatibility")->status == Status::pass;
    };
    require(compatible("1", Scalar(-1), Scalar(-1)) && !compatible("1", Scalar(1), Scalar(-1)),
            "p = 1 does not force chi = chi_phi");
    require(compatible("x", Scalar(1), Scalar(-1)) && !compatible("x", Scalar(-1), Scalar(-1)),
            "p = x does not force chi = 1");

    LoopCtx ctx(C, D("x"), current_action(catalog::sl2_chevalley(), Scalar(1), Scalar(-1), 2));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            require_pass(check_field_commutator(ctx, a, b, Window::square(6)), "twisted field commutator");
    require_pass(fixed_subalgebra_compare(ctx, -6, 6, 50, 0), "fixed subalgebra");
    auto tw = twisted_affine_build(catalog::sl2(), catalog::sl2_chevalley(), 2, D("x"), Scalar(1), Scalar(-1), 50, 0);
    require_pass(tw.report, "twisted affine");
}

void quotient()
{
    auto C = build_current(catalog::sl2());
    Matrix transpose(4, Vector(4, Scalar(0)));
    transpose[0][0] = Scalar(-1);
    transpose[2][1] = Scalar(-1);
    transpose[1][2] = Scalar(-1);
    transpose[3][3] = Scalar(-1);
    const std::vector<std::pair<ConformalAlgebra, GStructure>> cases{
        {C, current_action(catalog::sl2_chevalley(), Scalar(1), Scalar(1), 2)},
        {build_current(heisenberg()), GStructure{2, {{Scalar(1)}}, Scalar(1), Scalar(1)}},
        {build_current(catalog::gl2()), GStructure{2, transpose, Scalar(1), Scalar(1)}}};
    for (const auto &[alg, G] : cases) {
        auto q = quotient_by_H(alg, G);
        require(q.algebra.dim() > 0, "empty quotient");
        require_pass(check_axioms(q.algebra, 50, 0), "quotient axioms");
    }
    auto f3 = FieldCtx::make(3);
    Scalar z = Scalar::zeta(f3);
    auto q = quotient_by_H(C, current_action(catalog::sl2_torus(z), z, z, 3));
    require(q.algebra.gens() == C.gens() && q.algebra.support() == C.support(), "trivial H changed the generators");
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int n = 0; n <= C.support(); ++n)
                require(q.algebra.table(a, b, n) == C.table(a, b, n), "trivial H changed a product");
}

void restricted_module()
{
    auto basis = fock_basis(6);
    for (const char *p : {"1", "x", "x^2"})
        for (const Scalar &l : {Scalar(0), Scalar(1), Scalar(-2), Scalar::rational(1, 2)}) {
            FockCtx ctx{l, D(p)};
            std::string what = std::string("p = ") + p + ", level " + l.str();
            require(restricted_check(ctx, basis, 8), what + " not restricted");
            require_pass(verify_module_commutator(ctx, Window::square(8), basis), what);
        }
}

void determinism()
{
    SuiteConfig cfg;
    cfg.suite = "all";
    cfg.seed = 5;
    std::string a = run_suite(cfg).to_json(cfg).dump(2);
    std::string b = run_suite(cfg).to_json(cfg).dump(2);
    require(a == b, "reports differ");
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void()>>> criteria{
        {"associate law", associate_law},
        {"delta annihilation", delta_annihilation},
        {"conformal axioms", conformal_axioms},
        {"loop algebra Lie structure", loop_lie_structure},
        {"field commutator", field_commutator},
        {"affine isomorphism", affine_isomorphism},
        {"Virasoro isomorphism", virasoro_isomorphism},
        {"equivariant layer", equivariant_layer},
        {"quotient by H", quotient},
        {"restricted module", restricted_module},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto &[name, run] = criteria[i];
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            run();
        } catch (const Failure &f) {
            ok = false;
            detail = f.what;
        } catch (const std::exception &e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        std::cout << (ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << name << " (" << ms.count() << " ms)";
        if (!ok)
            std::cout << ": " << detail;
        std::cout << std::endl;
        failed += !ok;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
