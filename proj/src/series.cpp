#include "philoop/series.hpp"

#include "philoop/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace philoop {

LaurentSeries::LaurentSeries(Terms terms, std::optional<int> prec) : prec_(prec)
{
    for (auto &[e, c] : terms)
        if (!c.is_zero() && (!prec || e < *prec))
            c_.emplace(e, std::move(c));
}

LaurentSeries LaurentSeries::monomial(const Scalar &c, int exponent)
{
    Terms t;
    if (!c.is_zero())
        t.emplace(exponent, c);
    return LaurentSeries(std::move(t));
}

void LaurentSeries::set_precision(std::optional<int> prec)
{
    prec_ = prec;
    if (prec_)
        c_.erase(c_.lower_bound(*prec_), c_.end());
}

Scalar LaurentSeries::coeff(int exponent) const
{
    if (!is_known(exponent))
        throw PrecisionError("coefficient of x^" + std::to_string(exponent) + " unknown in " + str());
    auto it = c_.find(exponent);
    return it == c_.end() ? Scalar(0) : it->second;
}

std::optional<int> LaurentSeries::valuation() const
{
    if (c_.empty())
        return std::nullopt;
    return c_.begin()->first;
}

std::optional<int> LaurentSeries::degree() const
{
    if (c_.empty())
        return std::nullopt;
    return c_.rbegin()->first;
}

LaurentSeries LaurentSeries::truncated(int prec) const
{
    LaurentSeries r = *this;
    r.set_precision(prec_ ? std::min(*prec_, prec) : prec);
    return r;
}

LaurentSeries LaurentSeries::shifted(int k) const
{
    Terms t;
    for (const auto &[e, c] : c_)
        t.emplace(e + k, c);
    return LaurentSeries(std::move(t), prec_ ? std::optional<int>(*prec_ + k) : std::nullopt);
}

LaurentSeries LaurentSeries::derivative() const
{
    Terms t;
    for (const auto &[e, c] : c_)
        if (e != 0)
            t.emplace(e - 1, c * Scalar(e));
    return LaurentSeries(std::move(t), prec_ ? std::optional<int>(*prec_ - 1) : std::nullopt);
}

LaurentSeries LaurentSeries::scale_x(const Scalar &lambda) const
{
    if (lambda.is_zero())
        throw ArithmeticError("scale_x by zero");
    Terms t;
    for (const auto &[e, c] : c_)
        t.emplace(e, c * lambda.pow(e));
    return LaurentSeries(std::move(t), prec_);
}

Scalar LaurentSeries::residue() const { return coeff(-1); }

LaurentSeries &LaurentSeries::operator+=(const LaurentSeries &o)
{
    for (const auto &[e, c] : o.c_) {
        auto [it, inserted] = c_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                c_.erase(it);
        }
    }
    if (o.prec_)
        set_precision(prec_ ? std::min(*prec_, *o.prec_) : *o.prec_);
    return *this;
}

LaurentSeries &LaurentSeries::operator-=(const LaurentSeries &o) { return *this += -o; }

LaurentSeries &LaurentSeries::operator*=(const Scalar &s)
{
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto &[e, c] : c_)
        c *= s;
    return *this;
}

LaurentSeries LaurentSeries::operator-() const
{
    LaurentSeries r = *this;
    for (auto &[e, c] : r.c_)
        c = -c;
    return r;
}

namespace {

// Lower bound on the order of vanishing; nullopt only for the exact zero.
std::optional<long> order_bound(const LaurentSeries &f)
{
    if (auto v = f.valuation())
        return *v;
    if (auto p = f.precision())
        return *p;
    return std::nullopt;
}

} // namespace

LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b)
{
    if (a.is_zero() || b.is_zero())
        return LaurentSeries();
    std::optional<int> prec;
    if (!a.is_exact() || !b.is_exact()) {
        long best = std::numeric_limits<long>::max();
        if (a.prec_)
            best = std::min(best, static_cast<long>(*a.prec_) + *order_bound(b));
        if (b.prec_)
            best = std::min(best, static_cast<long>(*b.prec_) + *order_bound(a));
        prec = static_cast<int>(best);
    }
    LaurentSeries::Terms t;
    for (const auto &[ea, ca] : a.c_) {
        for (const auto &[eb, cb] : b.c_) {
            int e = ea + eb;
            if (prec && e >= *prec)
                break;
            auto [it, inserted] = t.try_emplace(e, ca * cb);
            if (!inserted)
                it->second += ca * cb;
        }
    }
    return LaurentSeries(std::move(t), prec);
}

std::string LaurentSeries::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : c_) {
        std::string cs = c.str();
        bool compound = c.coeffs().size() > 1;
        bool negative = !compound && cs.front() == '-';
        if (negative)
            cs.erase(0, 1);
        if (compound)
            cs = "(" + cs + ")";
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        if (e == 0) {
            os << cs;
            continue;
        }
        if (cs != "1")
            os << cs << "*";
        os << "x";
        if (e != 1)
            os << "^" << e;
    }
    if (prec_) {
        os << (first ? "" : " + ") << "O(x^" << *prec_ << ")";
        first = false;
    }
    if (first)
        os << "0";
    return os.str();
}

LaurentSeries inverse(const LaurentSeries &f, int target_prec)
{
    auto v = f.valuation();
    if (!v)
        throw ArithmeticError(f.is_exact() ? "inverse of zero series"
                                           : "inverse: leading coefficient unknown in " + f.str());
    // f = x^v u with u(0) != 0; u is known for relative exponents below rel_known.
    long rel_known = f.precision() ? static_cast<long>(*f.precision()) - *v : std::numeric_limits<long>::max();
    long want = static_cast<long>(target_prec) + *v; // relative exponents needed: [0, want)
    long n = std::min(rel_known, want);
    int out_prec = static_cast<int>(n - *v);
    if (n <= 0)
        return LaurentSeries::big_o(out_prec);

    Scalar u0inv = f.coeff(*v).inverse();
    std::vector<Scalar> g;
    g.reserve(static_cast<std::size_t>(n));
    g.push_back(u0inv);
    for (long k = 1; k < n; ++k) {
        Scalar acc(0);
        for (long i = 1; i <= k; ++i) {
            auto it = f.terms().find(static_cast<int>(*v + i));
            if (it != f.terms().end())
                acc += it->second * g[static_cast<std::size_t>(k - i)];
        }
        g.push_back(-(acc * u0inv));
    }
    LaurentSeries::Terms t;
    for (long k = 0; k < n; ++k)
        t.emplace(static_cast<int>(k - *v), g[static_cast<std::size_t>(k)]);
    return LaurentSeries(std::move(t), out_prec);
}

Deformation::Deformation(LaurentSeries p) : p_(std::move(p))
{
    if (!p_.is_exact())
        throw ArithmeticError("deformation p(x) must be an exact Laurent polynomial");
    if (p_.is_zero())
        throw ArithmeticError("deformation p(x) must be nonzero");
    p_bar_ = p_.shifted(-1);
}

LaurentSeries Deformation::derive(const LaurentSeries &f) const { return p_ * f.derivative(); }

LaurentSeries Deformation::divided_power(const LaurentSeries &f, int j) const
{
    if (j < 0)
        throw ArithmeticError("divided power order must be nonnegative");
    LaurentSeries r = f;
    for (int i = 0; i < j; ++i)
        r = derive(r);
    return r * factorial(j).inverse();
}

LaurentSeries Deformation::p_inverse(int terms) const { return inverse(p_, -*p_.valuation() + terms); }

std::vector<LaurentSeries> phi_expand(const Deformation &def, int order)
{
    std::vector<LaurentSeries> out;
    out.push_back(LaurentSeries::monomial(Scalar(1), 1));
    for (int k = 1; k <= order; ++k)
        out.push_back(def.derive(out.back()) * Scalar::rational(1, k));
    return out;
}

namespace {

// Polynomial in one z variable with Laurent coefficients, indexed by z-degree.
using ZPoly = std::vector<LaurentSeries>;

ZPoly zmul(const ZPoly &a, const ZPoly &b, std::size_t cap)
{
    ZPoly r(cap, LaurentSeries());
    for (std::size_t i = 0; i < a.size() && i < cap; ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < b.size() && i + j < cap; ++j)
            if (!b[j].is_zero())
                r[i + j] += a[i] * b[j];
    }
    return r;
}

} // namespace

bool associate_law_holds(std::span<const LaurentSeries> c, int order)
{
    if (order < 0 || c.size() < static_cast<std::size_t>(order) + 1)
        return false;
    if (c[0] != LaurentSeries::monomial(Scalar(1), 1))
        return false;
    const std::size_t cap = static_cast<std::size_t>(order) + 1;

    // delta(z1) = phi(x, z1) - x
    ZPoly delta(cap, LaurentSeries());
    for (std::size_t i = 1; i < cap; ++i)
        delta[i] = c[i];

    // powers[m] = delta^m / m!
    std::vector<ZPoly> powers;
    powers.push_back(ZPoly(cap, LaurentSeries()));
    powers[0][0] = LaurentSeries::constant(Scalar(1));
    for (std::size_t m = 1; m < cap; ++m) {
        ZPoly next = zmul(powers.back(), delta, cap);
        for (auto &s : next)
            s *= Scalar::rational(1, static_cast<long>(m));
        powers.push_back(std::move(next));
    }

    for (std::size_t b = 0; b < cap; ++b) {
        // Taylor: c_b(x + delta) = sum_m c_b^{(m)}(x) delta^m / m!
        ZPoly lhs(cap, LaurentSeries());
        LaurentSeries deriv = c[b];
        for (std::size_t m = 0; m + b < cap; ++m) {
            for (std::size_t a = m; a + b < cap; ++a)
                if (!powers[m][a].is_zero())
                    lhs[a] += deriv * powers[m][a];
            deriv = deriv.derivative();
        }
        for (std::size_t a = 0; a + b < cap; ++a) {
            LaurentSeries rhs = c[a + b] * binomial(static_cast<long>(a + b), static_cast<long>(a));
            if (lhs[a] != rhs)
                return false;
        }
    }
    return true;
}

bool phi_compose_check(const Deformation &def, int order)
{
    auto expansion = phi_expand(def, order);
    return associate_law_holds(expansion, order);
}

} // namespace philoop
