#include "doctest.h"

#include "philoop/errors.hpp"
#include "philoop/loop.hpp"
#include "philoop/parse.hpp"
#include "philoop/random.hpp"

using namespace philoop;

namespace {

LaurentSeries X(int e, Scalar c = Scalar(1)) { return LaurentSeries::monomial(c, e); }
Deformation D(const char *p) { return Deformation(parse_series(p)); }

ConformalAlgebra heis() { return build_current(catalog::abelian(1, {{Scalar(1)}})); }
ConformalAlgebra sl2() { return build_current(catalog::sl2()); }

LoopElement elem(int gen, const LaurentSeries &f)
{
    LoopElement u;
    if (!f.is_zero())
        u.parts.emplace(gen, f);
    return u;
}

LoopElement central(const Scalar &c)
{
    LoopElement u;
    u.central = c;
    return u;
}

GStructure current_action(const Matrix &lie_auto, const Scalar &chi, const Scalar &chi_phi, int M)
{
    return {M, scaled(lie_auto, chi), chi, chi_phi};
}

struct Config {
    std::string name;
    LoopCtx ctx;
};

// The configurations every property below is run against.
std::vector<Config> matrix()
{
    auto f3 = FieldCtx::make(3);
    Scalar z3 = Scalar::zeta(f3);
    std::vector<Config> out;
    for (const char *p : {"1", "x", "x^2", "1 + x"})
        out.push_back({std::string("sl2 p=") + p, LoopCtx(sl2(), D(p))});
    out.push_back({"virasoro p=1", LoopCtx(build_virasoro(), D("1"))});
    out.push_back({"virasoro p=1+x", LoopCtx(build_virasoro(), D("1 + x"))});
    out.push_back({"virasoro p=x^-1", LoopCtx(build_virasoro(), D("x^-1"))});
    out.push_back({"heisenberg p=x", LoopCtx(heis(), D("x"))});
    out.push_back({"novikov1 p=x", LoopCtx(build_novikov(catalog::novikov_line(Scalar(1), Scalar(1))), D("x"))});
    out.push_back({"sl2 chevalley p=x",
                   LoopCtx(sl2(), D("x"), current_action(catalog::sl2_chevalley(), Scalar(1), Scalar(-1), 2))});
    out.push_back(
        {"sl2 order-3 p=1", LoopCtx(sl2(), D("1"), current_action(catalog::sl2_torus(z3), z3, z3, 3))});
    out.push_back({"virasoro order-3 p=1", LoopCtx(build_virasoro(), D("1"), GStructure{3, {{z3.pow(2)}}, z3, z3})});
    out.push_back({"heisenberg sigma=-1 p=x", LoopCtx(heis(), D("x"), GStructure{2, {{Scalar(-1)}}, Scalar(1), Scalar(-1)})});
    return out;
}

} // namespace

TEST_CASE("reduce: one step of the quotient relation")
{
    Rng rng(1);
    for (const char *p : {"1", "x", "x^2", "1 + x", "x^-1"}) {
        LoopCtx ctx(sl2(), D(p));
        for (int s = 0; s < 10; ++s) {
            LaurentSeries f = rng.laurent(-4, 4);
            RawElement raw;
            raw.add(1, 0, f);
            CHECK(reduce(ctx, raw) == elem(0, -ctx.deformation().derive(f)));
            // oracle: subtracting the image of e (x) f leaves -e (x) p f'
            RawElement minus_image = raw;
            RawElement image = d_image(ctx, CAElement::gen(0), f);
            for (auto &[k, g] : image.terms)
                minus_image.add(k.first, k.second, -g);
            CHECK(minus_image.terms.count({1, 0}) == 0);
            CHECK(reduce(ctx, minus_image) == reduce(ctx, raw));
        }
    }
}

TEST_CASE("reduce: central classes")
{
    Rng rng(2);
    for (const char *p : {"1", "x", "x^2", "1 + x", "x^-1", "2 - x^3"}) {
        LoopCtx ctx(sl2(), D(p));
        RawElement r;
        r.central = ctx.deformation().p_bar();
        CHECK(reduce(ctx, r) == central(Scalar(1)));
        for (int s = 0; s < 10; ++s) {
            RawElement exact;
            exact.central = ctx.deformation().derive(rng.laurent(-5, 5));
            CHECK(reduce(ctx, exact).is_zero());
        }
        for (int n = -12; n <= 12; ++n)
            CHECK(central_mode(ctx, n) == central(Scalar(n == -1 ? 1 : 0)));
    }
}

TEST_CASE("precision limits surface as errors")
{
    LoopCtx ctx(heis(), D("1 + x"), std::nullopt, 4);
    RawElement r;
    r.central = X(-3);
    CHECK(reduce(ctx, r).central == Scalar(1)); // (1+x)^{-1} = 1 - x + x^2 - ...
    r.central = X(-10);
    CHECK_THROWS_AS(reduce(ctx, r), PrecisionError);
    Report rep = jacobi_check(LoopCtx(heis(), D("1 + x"), std::nullopt, 2), 20, 0);
    CHECK(rep.find("jacobi_identity")->status == Status::error);
    CHECK_THROWS_AS(LoopCtx(heis(), D("1"), std::nullopt, 0), ValidationError);
}

TEST_CASE("bracket examples")
{
    for (const char *p : {"1", "x", "x^2", "1 + x", "x^-1"}) {
        LoopCtx ctx(heis(), D(p));
        CHECK(bracket(ctx, elem(0, X(-1)), elem(0, X(1))) == central(Scalar(-1)));
        CHECK(bracket(ctx, elem(0, X(1)), elem(0, X(-1))) == central(Scalar(1)));
    }
    LoopCtx vir(build_virasoro(), D("1"));
    CHECK(bracket(vir, elem(0, X(3)), elem(0, X(-1))) == elem(0, X(1, Scalar(4))) + central(Scalar::rational(1, 2)));

    // a trivial group changes nothing
    LoopCtx plain(sl2(), D("x"));
    LoopCtx trivial(sl2(), D("x"), GStructure{1, identity_matrix(3), Scalar(1), Scalar(1)});
    Rng rng(3);
    for (int s = 0; s < 10; ++s) {
        LoopElement u = random_loop_element(plain, rng), v = random_loop_element(plain, rng);
        CHECK(bracket(plain, u, v) == bracket(trivial, u, v));
    }
}

TEST_CASE("Virasoro bracket against the hand-expanded formula")
{
    // [L f, L g] = L (x) p (f'g - fg') + (1/2) Res(p^{-1} (p d/dx)^{(3)} f * g) central
    Rng rng(4);
    for (const char *p : {"1", "x", "x^2", "1 + x", "x^-1"}) {
        LoopCtx ctx(build_virasoro(), D(p));
        const auto &def = ctx.deformation();
        for (int s = 0; s < 15; ++s) {
            LaurentSeries f = rng.laurent(-5, 5), g = rng.laurent(-5, 5);
            LoopElement expected;
            LaurentSeries vec = def.p() * (f.derivative() * g - f * g.derivative());
            if (!vec.is_zero())
                expected.parts.emplace(0, vec);
            expected.central = ctx.central_residue(def.divided_power(f, 3) * g) * Scalar::rational(1, 2);
            CHECK(bracket(ctx, elem(0, f), elem(0, g)) == expected);
        }
    }
}

TEST_CASE("current bracket against the affine formula")
{
    // [a f, b g] = [a,b] (x) fg + (a,b) Res(f'g) central, for every p
    Rng rng(5);
    auto g = catalog::sl2();
    for (const char *p : {"1", "x", "x^2", "1 + x"}) {
        LoopCtx ctx(sl2(), D(p));
        for (int s = 0; s < 15; ++s) {
            int a = static_cast<int>(rng.uniform(0, 2)), b = static_cast<int>(rng.uniform(0, 2));
            LaurentSeries f = rng.laurent(-5, 5), h = rng.laurent(-5, 5);
            LoopElement expected;
            for (int k = 0; k < 3; ++k) {
                LaurentSeries part = f * h * g.bracket[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)][static_cast<std::size_t>(k)];
                if (!part.is_zero())
                    expected.parts.emplace(k, part);
            }
            expected.central = g.form[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * (f.derivative() * h).residue();
            CHECK(bracket(ctx, elem(a, f), elem(b, h)) == expected);
        }
    }
}

TEST_CASE("Lie algebra axioms across the configuration matrix")
{
    for (auto &[name, ctx] : matrix()) {
        Report r = jacobi_check(ctx, 25, 7);
        CHECK_MESSAGE(r.passed(), name, " ", r.to_json().dump());
    }
}

TEST_CASE("bracket descends to the quotient")
{
    for (auto &[name, ctx] : matrix()) {
        Report r = well_definedness_check(ctx, 15, 11);
        CHECK_MESSAGE(r.passed(), name, " ", r.to_json().dump());
    }
}

TEST_CASE("corrupted products break the Jacobi identity")
{
    auto g = catalog::sl2();
    g.form[2][2] = Scalar(1);
    LoopCtx ctx(build_current_unchecked(g), D("x^2"));
    Report r = jacobi_check(ctx, 50, 0);
    const Check *c = r.find("jacobi_identity");
    CHECK(c->status == Status::fail);
    CHECK(c->witness.contains("jacobiator"));
}

TEST_CASE("group action: invariance and validation")
{
    for (auto &[name, ctx] : matrix()) {
        if (!ctx.group())
            continue;
        Rng rng(9);
        for (int s = 0; s < 10; ++s) {
            LoopElement u = random_loop_element(ctx, rng), v = random_loop_element(ctx, rng);
            CHECK_MESSAGE(bracket(ctx, act(ctx, u, 1), v) == bracket(ctx, u, v), name);
            CHECK(symmetrize(ctx, act(ctx, u, 1)) == symmetrize(ctx, u));
            CHECK(symmetrize(ctx, symmetrize(ctx, u)) == symmetrize(ctx, u));
        }
    }
    // chi_phi must be injective
    CHECK_THROWS_AS(LoopCtx(sl2(), D("x"), current_action(catalog::sl2_chevalley(), Scalar(1), Scalar(1), 2)),
                    ValidationError);
    // p = x forces chi = 1
    CHECK_THROWS_AS(LoopCtx(sl2(), D("x"), current_action(catalog::sl2_chevalley(), Scalar(-1), Scalar(-1), 2)),
                    ValidationError);
}

TEST_CASE("cyclotomic coefficients in the order-3 twisted algebra")
{
    auto f3 = FieldCtx::make(3);
    Scalar z = Scalar::zeta(f3);
    LoopCtx ctx(sl2(), D("1"), current_action(catalog::sl2_torus(z), z, z, 3));
    LoopElement u = parse_loop_element(ctx, "e[w*x^2 + 1] + h[x^-1]", f3);
    LoopElement v = parse_loop_element(ctx, "f[x^-2] + h[w^2*x]", f3);
    LoopElement uv = bracket(ctx, u, v);
    CHECK(uv == bracket(ctx, v, u) * Scalar(-1));
    CHECK(uv == symmetrize(ctx, uv));
    for (int k = -4; k <= 4; ++k) {
        LoopElement s = symmetrize(ctx, elem(0, X(k)));
        // R(e x^k) = zeta^{1-k} e x^k, so the average survives iff k = 1 mod 3
        CHECK(s.is_zero() == (((k % 3) + 3) % 3 != 1));
    }
}

TEST_CASE("field modes")
{
    LoopCtx vir(build_virasoro(), D("1"));
    for (int m = -5; m <= 5; ++m)
        CHECK(field_mode(vir, 0, m + 1) == elem(0, X(m + 1)));
    LoopCtx h(heis(), D("x"));
    for (int n = -5; n <= 5; ++n)
        CHECK(field_mode(h, 0, n) == elem(0, X(n + 1)));
}

TEST_CASE("field commutator: classical Heisenberg and Virasoro relations")
{
    LoopCtx h(heis(), D("1"));
    CHECK(check_field_commutator(h, 0, 0, Window::square(8)).passed());
    for (int m = -8; m <= 8; ++m)
        for (int n = -8; n <= 8; ++n)
            CHECK(bracket(h, field_mode(h, 0, m), field_mode(h, 0, n)) == central(Scalar(m + n == 0 ? m : 0)));

    LoopCtx vir(build_virasoro(), D("1"));
    CHECK(check_field_commutator(vir, 0, 0, Window::square(6)).passed());
    auto L = [&](int m) { return field_mode(vir, 0, m + 1); };
    for (int m = -6; m <= 6; ++m)
        for (int n = -6; n <= 6; ++n) {
            LoopElement expected = L(m + n) * Scalar(m - n);
            if (m + n == 0)
                expected.central = Scalar(Rational(m * m * m - m, 12));
            CHECK(bracket(vir, L(m), L(n)) == expected);
        }
}

TEST_CASE("field commutator across the configuration matrix")
{
    for (auto &[name, ctx] : matrix()) {
        int dim = static_cast<int>(ctx.algebra().dim());
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) {
                Report r = check_field_commutator(ctx, a, b, Window::square(4));
                CHECK_MESSAGE(r.passed(), name, " ", r.to_json().dump());
            }
    }
}

TEST_CASE("fixed subalgebra comparison")
{
    for (auto &[name, ctx] : matrix()) {
        Report r = fixed_subalgebra_compare(ctx, -4, 4, 15, 2);
        CHECK_MESSAGE(r.passed(), name, " ", r.to_json().dump());
    }
    LoopCtx plain(sl2(), D("x"));
    CHECK(fixed_subalgebra_compare(plain, -4, 4, 5, 0).find("bracket_intertwined")->info["group_order"] == 1);
}

TEST_CASE("text form round trip and parse errors")
{
    LoopCtx ctx(sl2(), D("x"));
    Rng rng(12);
    for (int s = 0; s < 20; ++s) {
        LoopElement u = random_loop_element(ctx, rng);
        CHECK(parse_loop_element(ctx, str(ctx, u)) == u);
    }
    CHECK(parse_loop_element(ctx, "e[x^-1] + f[2*x] + c[3/2]") ==
          elem(0, X(-1)) + elem(1, X(1, Scalar(2))) + central(Scalar::rational(3, 2)));
    CHECK(parse_loop_element(ctx, "0").is_zero());
    CHECK(str(ctx, LoopElement{}) == "0");
    CHECK(to_json(ctx, elem(2, X(3)))["parts"]["h"] == "x^3");

    auto offset = [&](const char *text) -> std::size_t {
        try {
            parse_loop_element(ctx, text);
        } catch (const ParseError &e) {
            return e.position();
        }
        return std::string::npos;
    };
    CHECK(offset("q[x]") == 0);
    CHECK(offset("e[x] f[x]") == 5);
    CHECK(offset("e[x") == 1);
    CHECK(offset("e[x^]") == 4);
    CHECK(offset("") == 0);
    CHECK(offset("e x") == 2);
}
