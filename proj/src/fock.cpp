#include "philoop/fock.hpp"

#include "philoop/errors.hpp"
#include "philoop/models.hpp"
#include "philoop/random.hpp"
#include "philoop/structure.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace philoop {

FockVector FockVector::vacuum() { return monomial({}); }

FockVector FockVector::monomial(Monomial parts, const Scalar &c)
{
    FockVector v;
    v.add(std::move(parts), c);
    return v;
}

int FockVector::max_part() const
{
    int m = 0;
    for (const auto &[parts, c] : terms_)
        if (!parts.empty())
            m = std::max(m, parts.front());
    return m;
}

int FockVector::degree() const
{
    int d = 0;
    for (const auto &[parts, c] : terms_)
        d = std::max(d, std::accumulate(parts.begin(), parts.end(), 0));
    return d;
}

void FockVector::add(Monomial parts, const Scalar &c)
{
    if (c.is_zero())
        return;
    for (int n : parts)
        if (n < 1)
            throw ValidationError("oscillator mode numbers must be positive");
    std::sort(parts.begin(), parts.end(), std::greater<>());
    auto [it, inserted] = terms_.try_emplace(std::move(parts), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

FockVector &FockVector::operator+=(const FockVector &o)
{
    for (const auto &[parts, c] : o.terms_)
        add(parts, c);
    return *this;
}

FockVector &FockVector::operator-=(const FockVector &o)
{
    for (const auto &[parts, c] : o.terms_)
        add(parts, -c);
    return *this;
}

FockVector &FockVector::operator*=(const Scalar &s)
{
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[parts, c] : terms_)
        c *= s;
    return *this;
}

std::string FockVector::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto &[parts, c] : terms_) {
        if (!out.empty())
            out += " + ";
        if (!c.is_one())
            out += "(" + c.str() + ")*";
        if (!parts.empty()) {
            out += "a[";
            for (std::size_t i = 0; i < parts.size(); ++i)
                out += (i ? "," : "") + std::to_string(-parts[i]);
            out += "]";
        }
        out += "|0>";
    }
    return out;
}

FockVector mode(const FockCtx &ctx, int n, const FockVector &v)
{
    FockVector out;
    if (n == 0)
        return out;
    for (const auto &[parts, c] : v.terms()) {
        if (n < 0) {
            auto next = parts;
            next.push_back(-n);
            out.add(std::move(next), c);
            continue;
        }
        // n l d/da_{-n}: the multiplicity of n comes out as a factor
        auto it = std::find(parts.begin(), parts.end(), n);
        if (it == parts.end())
            continue;
        long mult = std::count(parts.begin(), parts.end(), n);
        auto next = parts;
        next.erase(next.begin() + (it - parts.begin()));
        out.add(std::move(next), c * ctx.level * Scalar(n * mult));
    }
    return out;
}

FockVector act(const FockCtx &ctx, const LaurentSeries &f, const FockVector &v)
{
    if (!f.is_exact()) {
        // a_n with n > max_part kills v; everything below must be known
        int need = v.max_part() > 0 ? v.max_part() + 1 : 0;
        if (*f.precision() < need)
            throw PrecisionError("series known below x^" + std::to_string(*f.precision()) +
                                 " but the vector is moved by modes up to " + std::to_string(need - 1));
    }
    FockVector out;
    if (v.is_zero())
        return out;
    for (const auto &[n, c] : f.terms())
        out += mode(ctx, n, v) * c;
    return out;
}

std::vector<FockVector> fock_basis(int max_degree)
{
    std::vector<FockVector> out;
    std::vector<int> parts;
    // partitions of d with parts at most `cap`, in descending order
    std::function<void(int, int)> rec = [&](int left, int cap) {
        if (left == 0) {
            out.push_back(FockVector::monomial(parts));
            return;
        }
        for (int k = std::min(left, cap); k >= 1; --k) {
            parts.push_back(k);
            rec(left - k, k);
            parts.pop_back();
        }
    };
    for (int d = 0; d <= max_degree; ++d)
        rec(d, d);
    return out;
}

namespace {

FockVector apply(const FockCtx &ctx, const FockAction &action, const LaurentSeries &f, const FockVector &v)
{
    return action ? action(ctx, f, v) : act(ctx, f, v);
}

LaurentSeries mode_series(const FockCtx &ctx, int n) { return ctx.def.p().shifted(n); }

} // namespace

std::optional<int> annihilation_bound(const FockCtx &ctx, const FockVector &v, int n_max, const FockAction &action)
{
    const int top = 2 * n_max + 1;
    const int floor = -top;
    int n = top;
    while (n >= floor && apply(ctx, action, mode_series(ctx, n), v).is_zero())
        --n;
    if (n == top)
        return std::nullopt;
    int bound = n + 1;
    if (bound > n_max)
        return std::nullopt;
    return bound;
}

bool restricted_check(const FockCtx &ctx, const std::vector<FockVector> &vectors, int n_max,
                      const FockAction &action)
{
    return std::all_of(vectors.begin(), vectors.end(),
                       [&](const FockVector &v) { return annihilation_bound(ctx, v, n_max, action).has_value(); });
}

Scalar module_commutator_scalar(const FockCtx &ctx, int m, int n)
{
    DeltaSum s(ctx.def, {{Scalar(1), 1, LaurentSeries::constant(Scalar(1))}});
    return ctx.level * s.coeff(m, -n - 1);
}

Report verify_module_commutator(const FockCtx &ctx, const Window &window, const std::vector<FockVector> &vectors,
                                const FockAction &action)
{
    Report rep;
    nlohmann::ordered_json witness;
    int cells = 0;
    try {
        for (int m = window.m_lo; m <= window.m_hi && witness.is_null(); ++m) {
            LaurentSeries am = mode_series(ctx, m);
            for (int n = window.n_lo; n <= window.n_hi && witness.is_null(); ++n) {
                LaurentSeries an = mode_series(ctx, n);
                Scalar k = module_commutator_scalar(ctx, m, n);
                for (const auto &v : vectors) {
                    FockVector lhs = apply(ctx, action, am, apply(ctx, action, an, v)) -
                                     apply(ctx, action, an, apply(ctx, action, am, v));
                    FockVector rhs = v * k;
                    ++cells;
                    if (lhs != rhs) {
                        witness = {{"m", m}, {"n", n}, {"v", v.str()}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
                        break;
                    }
                }
            }
        }
    } catch (const PrecisionError &e) {
        rep.error("module_commutator", e.what());
        return rep;
    }
    nlohmann::ordered_json info = {{"level", ctx.level.str()},
                                   {"p", ctx.def.p().str()},
                                   {"window", {window.m_lo, window.m_hi, window.n_lo, window.n_hi}},
                                   {"vectors", vectors.size()},
                                   {"cells", cells}};
    if (witness.is_null())
        rep.pass("module_commutator", info);
    else
        rep.fail("module_commutator", witness, info);
    return rep;
}

Report verify_fock_bracket(const FockCtx &ctx, const std::vector<FockVector> &vectors, int samples,
                           std::uint64_t seed)
{
    Report rep;
    const LieData heis = catalog::abelian(1, {{Scalar(1)}});
    Rng rng(seed);
    auto apply_affine = [&](const AffineElement &u, const FockVector &v) {
        FockVector out = v * (u.central * ctx.level);
        for (const auto &[gen, f] : u.parts)
            out += act(ctx, f, v);
        return out;
    };
    nlohmann::ordered_json witness;
    for (int s = 0; s < samples && witness.is_null(); ++s) {
        LaurentSeries f = rng.laurent(-6, 6), g = rng.laurent(-6, 6);
        AffineElement u, w;
        if (!f.is_zero())
            u.parts.emplace(0, f);
        if (!g.is_zero())
            w.parts.emplace(0, g);
        AffineElement b = affine_bracket(heis, u, w);
        for (const auto &v : vectors) {
            FockVector lhs = act(ctx, f, act(ctx, g, v)) - act(ctx, g, act(ctx, f, v));
            FockVector rhs = apply_affine(b, v);
            if (lhs != rhs) {
                witness = {{"f", f.str()}, {"g", g.str()}, {"v", v.str()}, {"lhs", lhs.str()}, {"rhs", rhs.str()}};
                break;
            }
        }
    }
    nlohmann::ordered_json info = {{"samples", samples}, {"vectors", vectors.size()}};
    if (witness.is_null())
        rep.pass("fock_bracket", info);
    else
        rep.fail("fock_bracket", witness, info);
    return rep;
}

} // namespace philoop
