#include "philoop/loop.hpp"

#include "philoop/errors.hpp"
#include "philoop/parse.hpp"
#include "philoop/random.hpp"

#include <cctype>

namespace philoop {

bool LoopElement::is_zero() const { return parts.empty() && central.is_zero(); }

LoopElement &LoopElement::operator+=(const LoopElement &o)
{
    for (const auto &[a, f] : o.parts) {
        auto &slot = parts[a];
        slot += f;
        if (slot.is_zero())
            parts.erase(a);
    }
    central += o.central;
    return *this;
}

LoopElement &LoopElement::operator-=(const LoopElement &o) { return *this += o * Scalar(-1); }

LoopElement &LoopElement::operator*=(const Scalar &s)
{
    for (auto it = parts.begin(); it != parts.end();) {
        it->second *= s;
        if (it->second.is_zero())
            it = parts.erase(it);
        else
            ++it;
    }
    central *= s;
    return *this;
}

bool operator==(const LoopElement &a, const LoopElement &b) { return a.parts == b.parts && a.central == b.central; }

LaurentSeries LoopElement::part(int gen) const
{
    auto it = parts.find(gen);
    return it == parts.end() ? LaurentSeries() : it->second;
}

void RawElement::add(int k, int gen, const LaurentSeries &f)
{
    auto &slot = terms[{k, gen}];
    slot += f;
    if (slot.is_zero())
        terms.erase({k, gen});
}

void RawElement::add(const CAElement &x, const LaurentSeries &f)
{
    for (const auto &[key, c] : x.terms())
        add(key.first, key.second, f * c);
    if (!x.central_part().is_zero())
        central += f * x.central_part();
}

RawElement &RawElement::operator+=(const RawElement &o)
{
    for (const auto &[key, f] : o.terms)
        add(key.first, key.second, f);
    central += o.central;
    return *this;
}

RawElement RawElement::from(const LoopElement &u)
{
    RawElement r;
    for (const auto &[a, f] : u.parts)
        r.add(0, a, f);
    // gamma times the class of c (x) x^{-1} p is stored as a scalar; products
    // with c vanish, so the bracket never needs its series.
    return r;
}

LoopCtx::LoopCtx(ConformalAlgebra C, Deformation def, std::optional<GStructure> G, int precision)
    : C_(std::move(C)), def_(std::move(def)), G_(std::move(G)), precision_(precision),
      p_inv_(def_.p_inverse(precision))
{
    if (precision < 1)
        throw ValidationError("working precision must be positive");
    if (!G_)
        return;
    if (G_->chi_phi_order() != G_->M)
        throw ValidationError("chi_phi must be injective on G; pass the algebra through quotient_by_H first");
    Report r = check_g_structure(C_, *G_, def_);
    for (const auto &c : r.checks())
        if (c.status != Status::pass)
            throw ValidationError("group action fails " + c.name + ": " + c.witness.dump());
}

Scalar LoopCtx::central_residue(const LaurentSeries &g) const
{
    if (g.is_zero())
        return Scalar(0);
    return (g * p_inv_).residue();
}

LoopElement reduce(const LoopCtx &ctx, const RawElement &raw)
{
    LoopElement out;
    for (const auto &[key, f] : raw.terms) {
        auto [k, a] = key;
        LaurentSeries g = f;
        for (int s = 0; s < k; ++s)
            g = -ctx.deformation().derive(g);
        LoopElement piece;
        if (!g.is_zero())
            piece.parts.emplace(a, std::move(g));
        out += piece;
    }
    out.central += ctx.central_residue(raw.central);
    return out;
}

RawElement d_image(const LoopCtx &ctx, const CAElement &x, const LaurentSeries &f)
{
    RawElement r;
    r.add(x.derivative(), f);
    r.add(x, ctx.deformation().derive(f));
    return r;
}

LoopElement raw_bracket(const LoopCtx &ctx, const RawElement &u, const RawElement &v)
{
    const auto &C = ctx.algebra();
    const auto &def = ctx.deformation();
    const int S = C.support();
    RawElement out;
    for (const auto &[ku, f] : u.terms)
        for (const auto &[kv, g] : v.terms) {
            CAElement x = CAElement::gen(ku.second, Scalar(1), ku.first);
            CAElement y = CAElement::gen(kv.second, Scalar(1), kv.first);
            for (int i = 0; i <= S + ku.first + kv.first; ++i) {
                CAElement prod = C.nprod(x, y, i);
                if (!prod.is_zero())
                    out.add(prod, def.divided_power(f, i) * g);
            }
        }
    return reduce(ctx, out);
}

LoopElement plain_bracket(const LoopCtx &ctx, const LoopElement &u, const LoopElement &v)
{
    const auto &C = ctx.algebra();
    const auto &def = ctx.deformation();
    const int S = C.support();
    RawElement out;
    for (const auto &[a, f] : u.parts) {
        std::vector<LaurentSeries> powers;
        for (int i = 0; i <= S; ++i)
            powers.push_back(def.divided_power(f, i));
        for (const auto &[b, g] : v.parts)
            for (int i = 0; i <= S; ++i) {
                CAElement prod = C.table(a, b, i);
                if (!prod.is_zero())
                    out.add(prod, powers[static_cast<std::size_t>(i)] * g);
            }
    }
    return reduce(ctx, out);
}

LoopElement act(const LoopCtx &ctx, const LoopElement &u, long g)
{
    const auto &G = ctx.group();
    if (!G)
        return u;
    long e = ((g % G->M) + G->M) % G->M;
    if (e == 0)
        return u;
    Matrix Rg = matrix_power(G->R, e);
    Scalar chi_inv = G->chi.pow(e).inverse();
    Scalar lambda_inv = G->chi_phi.pow(e).inverse();
    LoopElement out;
    out.central = u.central;
    for (const auto &[a, f] : u.parts) {
        LaurentSeries fs = f.scale_x(lambda_inv) * chi_inv;
        for (std::size_t r = 0; r < Rg.size(); ++r) {
            const Scalar &c = Rg[r][static_cast<std::size_t>(a)];
            if (c.is_zero())
                continue;
            LoopElement piece;
            piece.parts.emplace(static_cast<int>(r), fs * c);
            out += piece;
        }
    }
    return out;
}

LoopElement symmetrize(const LoopCtx &ctx, const LoopElement &u)
{
    const auto &G = ctx.group();
    if (!G || G->M == 1)
        return u;
    LoopElement sum;
    for (long g = 0; g < G->M; ++g)
        sum += act(ctx, u, g);
    return sum * Scalar::rational(1, G->M);
}

LoopElement bracket(const LoopCtx &ctx, const LoopElement &u, const LoopElement &v)
{
    const auto &G = ctx.group();
    if (!G || G->M == 1)
        return plain_bracket(ctx, u, v);
    LoopElement sum;
    for (long g = 0; g < G->M; ++g)
        sum += plain_bracket(ctx, act(ctx, u, g), v);
    return symmetrize(ctx, sum);
}

LoopElement field_mode(const LoopCtx &ctx, const CAElement &x, int n)
{
    RawElement r;
    r.add(x, ctx.deformation().p().shifted(n));
    return symmetrize(ctx, reduce(ctx, r));
}

LoopElement field_mode(const LoopCtx &ctx, int gen, int n) { return field_mode(ctx, CAElement::gen(gen), n); }

LoopElement central_mode(const LoopCtx &ctx, int n) { return field_mode(ctx, CAElement::central(Scalar(1)), n); }

LoopElement random_loop_element(const LoopCtx &ctx, Rng &rng, int lo, int hi)
{
    LoopElement u;
    for (int a = 0; a < static_cast<int>(ctx.algebra().dim()); ++a)
        if (rng.uniform(0, 3) != 0) {
            LaurentSeries f = rng.laurent(lo, hi, 3);
            if (!f.is_zero())
                u.parts.emplace(a, std::move(f));
        }
    if (ctx.algebra().central() && rng.coin())
        u.central = Scalar(rng.small_rational());
    return u;
}

Report jacobi_check(const LoopCtx &ctx, int samples, std::uint64_t seed)
{
    Report rep;
    Rng rng(seed);
    nlohmann::ordered_json anti, jac;
    nlohmann::ordered_json info = {{"samples", samples}, {"seed", seed}};
    try {
        for (int s = 0; s < samples && (anti.is_null() || jac.is_null()); ++s) {
            LoopElement u = symmetrize(ctx, random_loop_element(ctx, rng));
            LoopElement v = symmetrize(ctx, random_loop_element(ctx, rng));
            LoopElement w = symmetrize(ctx, random_loop_element(ctx, rng));
            LoopElement uv = bracket(ctx, u, v), vu = bracket(ctx, v, u);
            if (anti.is_null() && uv != vu * Scalar(-1))
                anti = {{"u", str(ctx, u)}, {"v", str(ctx, v)}, {"[u,v]", str(ctx, uv)}, {"[v,u]", str(ctx, vu)}};
            LoopElement total = bracket(ctx, u, bracket(ctx, v, w)) + bracket(ctx, v, bracket(ctx, w, u)) +
                                bracket(ctx, w, uv);
            if (jac.is_null() && !total.is_zero())
                jac = {{"u", str(ctx, u)},
                       {"v", str(ctx, v)},
                       {"w", str(ctx, w)},
                       {"jacobiator", str(ctx, total)}};
        }
    } catch (const PrecisionError &e) {
        rep.error("antisymmetry", e.what());
        rep.error("jacobi_identity", e.what());
        return rep;
    }
    if (anti.is_null())
        rep.pass("antisymmetry", info);
    else
        rep.fail("antisymmetry", anti, info);
    if (jac.is_null())
        rep.pass("jacobi_identity", info);
    else
        rep.fail("jacobi_identity", jac, info);
    return rep;
}

Report well_definedness_check(const LoopCtx &ctx, int samples, std::uint64_t seed)
{
    Report rep;
    Rng rng(seed);
    const auto &C = ctx.algebra();
    nlohmann::ordered_json zero_w, left_w, right_w, idem_w;
    try {
        for (int s = 0; s < samples; ++s) {
            LoopElement u = random_loop_element(ctx, rng), v = random_loop_element(ctx, rng);
            CAElement x;
            if (C.central() && rng.uniform(0, 3) == 0)
                x = CAElement::central(Scalar(1));
            else
                x = CAElement::gen(static_cast<int>(rng.uniform(0, static_cast<long>(C.dim()) - 1)), Scalar(1),
                                   static_cast<int>(rng.uniform(0, 2)));
            LaurentSeries f = rng.laurent(-6, 6, 3);
            RawElement image = d_image(ctx, x, f);

            LoopElement r = reduce(ctx, image);
            if (zero_w.is_null() && !r.is_zero())
                zero_w = {{"x", C.str(x)}, {"f", f.str()}, {"reduced", str(ctx, r)}};

            RawElement shifted = RawElement::from(u);
            shifted += image;
            LoopElement base = plain_bracket(ctx, u, v);
            LoopElement left = raw_bracket(ctx, shifted, RawElement::from(v));
            if (left_w.is_null() && left != base)
                left_w = {{"u", str(ctx, u)}, {"v", str(ctx, v)}, {"x", C.str(x)}, {"f", f.str()},
                          {"lhs", str(ctx, left)}, {"rhs", str(ctx, base)}};
            LoopElement right = raw_bracket(ctx, RawElement::from(v), shifted);
            LoopElement base_r = plain_bracket(ctx, v, u);
            if (right_w.is_null() && right != base_r)
                right_w = {{"u", str(ctx, u)}, {"v", str(ctx, v)}, {"x", C.str(x)}, {"f", f.str()},
                           {"lhs", str(ctx, right)}, {"rhs", str(ctx, base_r)}};

            LoopElement once = reduce(ctx, shifted);
            LoopElement twice = reduce(ctx, RawElement::from(once));
            twice.central += once.central;
            if (idem_w.is_null() && once != twice)
                idem_w = {{"once", str(ctx, once)}, {"twice", str(ctx, twice)}};
        }
    } catch (const PrecisionError &e) {
        for (const char *n : {"image_reduces_to_zero", "left_slot", "right_slot", "reduce_idempotent"})
            rep.error(n, e.what());
        return rep;
    }
    auto record = [&](const char *name, const nlohmann::ordered_json &w) {
        if (w.is_null())
            rep.pass(name, {{"samples", samples}, {"seed", seed}});
        else
            rep.fail(name, w, {{"samples", samples}, {"seed", seed}});
    };
    record("image_reduces_to_zero", zero_w);
    record("left_slot", left_w);
    record("right_slot", right_w);
    record("reduce_idempotent", idem_w);
    return rep;
}

Report check_field_commutator(const LoopCtx &ctx, int a, int b, const Window &window)
{
    Report rep;
    const auto &C = ctx.algebra();
    const auto &def = ctx.deformation();
    const auto &G = ctx.group();
    const int S = C.support();
    const long M = G ? G->M : 1;
    const std::string name = "field_commutator[" + C.gens().at(static_cast<std::size_t>(a)) + "," +
                             C.gens().at(static_cast<std::size_t>(b)) + "]";

    // (lambda, element (R_{g^{-1}} a)_i b, i) for every term of the right side
    struct Term {
        Scalar lambda;
        CAElement coeff;
        int i;
    };
    std::vector<Term> terms;
    for (long g = 0; g < M; ++g) {
        CAElement ag = G ? G->apply(CAElement::gen(a), -g) : CAElement::gen(a);
        Scalar lambda = G ? G->chi_phi.pow(g) : Scalar(1);
        for (int i = 0; i <= S; ++i) {
            CAElement x = C.nprod(ag, CAElement::gen(b), i);
            if (!x.is_zero())
                terms.push_back({lambda, std::move(x), i});
        }
    }

    nlohmann::ordered_json witness;
    int cells = 0;
    try {
        for (int m = window.m_lo; m <= window.m_hi && witness.is_null(); ++m) {
            std::vector<LaurentSeries> q;
            for (const auto &t : terms)
                q.push_back(DeltaSum(def, {{t.lambda, t.i, LaurentSeries::constant(Scalar(1))}}).z_coeff(m));
            LoopElement am = field_mode(ctx, a, m);
            for (int n = window.n_lo; n <= window.n_hi && witness.is_null(); ++n) {
                LoopElement lhs = bracket(ctx, am, field_mode(ctx, b, n));
                LoopElement rhs;
                for (std::size_t t = 0; t < terms.size(); ++t)
                    for (const auto &[e, c] : q[t].terms())
                        rhs += field_mode(ctx, terms[t].coeff, n + e) * c;
                ++cells;
                if (lhs != rhs)
                    witness = {{"m", m}, {"n", n}, {"lhs", str(ctx, lhs)}, {"rhs", str(ctx, rhs)}};
            }
        }
    } catch (const PrecisionError &e) {
        rep.error(name, e.what());
        return rep;
    }
    nlohmann::ordered_json info = {{"window", {window.m_lo, window.m_hi, window.n_lo, window.n_hi}}, {"cells", cells}};
    if (witness.is_null())
        rep.pass(name, info);
    else
        rep.fail(name, witness, info);
    return rep;
}

Report fixed_subalgebra_compare(const LoopCtx &ctx, int lo, int hi, int samples, std::uint64_t seed)
{
    Report rep;
    Rng rng(seed);
    const long M = ctx.group() ? ctx.group()->M : 1;
    auto psi = [&](const LoopElement &u) {
        LoopElement s;
        for (long g = 0; g < M; ++g)
            s += act(ctx, u, g);
        return s;
    };
    nlohmann::ordered_json hom_w, fixed_w;
    try {
        for (int s = 0; s < samples; ++s) {
            LoopElement u = random_loop_element(ctx, rng, lo, hi), v = random_loop_element(ctx, rng, lo, hi);
            LoopElement pu = psi(u), pv = psi(v);
            if (fixed_w.is_null() && act(ctx, pu, 1) != pu)
                fixed_w = {{"u", str(ctx, u)}, {"image", str(ctx, pu)}};
            LoopElement lhs = psi(bracket(ctx, u, v));
            LoopElement rhs = plain_bracket(ctx, pu, pv);
            if (hom_w.is_null() && lhs != rhs)
                hom_w = {{"u", str(ctx, u)}, {"v", str(ctx, v)}, {"lhs", str(ctx, lhs)}, {"rhs", str(ctx, rhs)}};
        }
    } catch (const PrecisionError &e) {
        rep.error("image_is_fixed", e.what());
        rep.error("bracket_intertwined", e.what());
        return rep;
    }
    nlohmann::ordered_json info = {{"group_order", M}, {"samples", samples}, {"exponents", {lo, hi}}};
    if (fixed_w.is_null())
        rep.pass("image_is_fixed", info);
    else
        rep.fail("image_is_fixed", fixed_w, info);
    if (hom_w.is_null())
        rep.pass("bracket_intertwined", info);
    else
        rep.fail("bracket_intertwined", hom_w, info);
    return rep;
}

std::string str(const LoopCtx &ctx, const LoopElement &u)
{
    const auto &C = ctx.algebra();
    std::string out;
    for (const auto &[a, f] : u.parts) {
        if (!out.empty())
            out += " + ";
        out += C.gens().at(static_cast<std::size_t>(a)) + "[" + f.str() + "]";
    }
    if (!u.central.is_zero()) {
        if (!out.empty())
            out += " + ";
        out += C.central().value_or("c") + "[" + u.central.str() + "]";
    }
    return out.empty() ? "0" : out;
}

nlohmann::ordered_json to_json(const LoopCtx &ctx, const LoopElement &u)
{
    nlohmann::ordered_json parts = nlohmann::ordered_json::object();
    for (const auto &[a, f] : u.parts)
        parts[ctx.algebra().gens().at(static_cast<std::size_t>(a))] = f.str();
    return {{"parts", parts}, {"central", u.central.str()}, {"text", str(ctx, u)}};
}

LoopElement parse_loop_element(const LoopCtx &ctx, std::string_view text, const FieldPtr &field)
{
    const auto &C = ctx.algebra();
    const std::string central_name = C.central().value_or("");
    LoopElement out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    skip();
    if (text.substr(i) == "0")
        return out;
    bool first = true;
    while (true) {
        skip();
        if (i >= text.size()) {
            if (first)
                throw ParseError("empty element", i);
            break;
        }
        if (!first) {
            if (text[i] != '+')
                throw ParseError("expected '+' between terms", i);
            ++i;
            skip();
        }
        first = false;
        std::size_t start = i;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
            ++i;
        std::string name(text.substr(start, i - start));
        if (name.empty())
            throw ParseError("expected a generator name", start);
        skip();
        if (i >= text.size() || text[i] != '[')
            throw ParseError("expected '[' after '" + name + "'", i);
        std::size_t close = text.find(']', i);
        if (close == std::string_view::npos)
            throw ParseError("missing ']'", i);
        std::string_view inner = text.substr(i + 1, close - i - 1);
        std::size_t inner_pos = i + 1;
        i = close + 1;
        bool is_central = !central_name.empty() && name == central_name;
        auto idx = C.index_of(name);
        if (!is_central && !idx)
            throw ParseError("unknown generator '" + name + "'", start);
        try {
            if (is_central) {
                out.central += parse_scalar(inner, field);
            } else {
                LoopElement piece;
                piece.parts.emplace(*idx, parse_series(inner, field));
                out += piece;
            }
        } catch (const ParseError &e) {
            throw ParseError(e.message(), inner_pos + e.position());
        }
    }
    return out;
}

} // namespace philoop
