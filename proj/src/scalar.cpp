#include "philoop/scalar.hpp"

#include "philoop/errors.hpp"

#include <sstream>

namespace philoop {

namespace {

using Poly = std::vector<Rational>;

void trim_poly(Poly &p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

// Remainder and quotient of a / b in Q[x]; b nonzero and trimmed.
std::pair<Poly, Poly> divmod(Poly a, const Poly &b)
{
    trim_poly(a);
    Poly q;
    if (a.size() >= b.size())
        q.assign(a.size() - b.size() + 1, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t shift = a.size() - b.size();
        Rational f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= f * b[i];
        a.pop_back();
        trim_poly(a);
    }
    trim_poly(q);
    return {q, a};
}

Poly mul_poly(const Poly &a, const Poly &b)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    trim_poly(r);
    return r;
}

Poly sub_poly(Poly a, const Poly &b)
{
    if (a.size() < b.size())
        a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim_poly(a);
    return a;
}

} // namespace

std::vector<Integer> cyclotomic_polynomial(int n)
{
    if (n < 1)
        throw ArithmeticError("cyclotomic order must be positive");
    // x^n - 1 divided by Phi_d for every proper divisor d.
    std::vector<Integer> num(static_cast<std::size_t>(n) + 1, Integer(0));
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0)
            continue;
        auto den = cyclotomic_polynomial(d);
        // exact monic division over Z
        std::vector<Integer> q(num.size() - den.size() + 1, Integer(0));
        for (std::size_t k = q.size(); k-- > 0;) {
            Integer f = num[k + den.size() - 1];
            q[k] = f;
            for (std::size_t i = 0; i < den.size(); ++i)
                num[k + i] -= f * den[i];
        }
        num = std::move(q);
    }
    return num;
}

FieldCtx::FieldCtx(int order) : order_(order), modulus_(cyclotomic_polynomial(order)) {}

std::shared_ptr<const FieldCtx> FieldCtx::make(int order)
{
    return std::shared_ptr<const FieldCtx>(new FieldCtx(order));
}

Scalar::Scalar(const Rational &v)
{
    if (v != 0) {
        c_.push_back(v);
        c_.back().canonicalize();
    }
}

Scalar Scalar::rational(long num, long den)
{
    if (den == 0)
        throw ArithmeticError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::zeta(const FieldPtr &ctx, long k)
{
    if (!ctx)
        throw ArithmeticError("zeta requires a cyclotomic context");
    long m = ctx->order();
    long e = ((k % m) + m) % m;
    std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
    c.back() = 1;
    return from_coeffs(ctx, std::move(c));
}

Scalar Scalar::from_coeffs(const FieldPtr &ctx, std::vector<Rational> coeffs)
{
    Scalar s;
    s.ctx_ = ctx;
    s.c_ = std::move(coeffs);
    for (auto &q : s.c_)
        q.canonicalize();
    s.reduce();
    return s;
}

void Scalar::trim() { trim_poly(c_); }

void Scalar::reduce()
{
    trim();
    if (!ctx_ || c_.empty())
        return;
    const auto &mod = ctx_->modulus();
    std::size_t deg = mod.size() - 1;
    for (std::size_t k = c_.size(); k-- > deg;) {
        Rational f = c_[k];
        if (f == 0)
            continue;
        for (std::size_t i = 0; i <= deg; ++i)
            c_[k - deg + i] -= f * Rational(mod[i]);
    }
    if (c_.size() > deg)
        c_.resize(deg);
    trim();
}

FieldPtr Scalar::join(const Scalar &a, const Scalar &b)
{
    if (!a.ctx_)
        return b.ctx_;
    if (!b.ctx_ || a.ctx_ == b.ctx_)
        return a.ctx_;
    if (a.ctx_->order() != b.ctx_->order())
        throw ArithmeticError("mismatched cyclotomic contexts: order " + std::to_string(a.ctx_->order()) +
                              " vs " + std::to_string(b.ctx_->order()));
    return a.ctx_;
}

bool Scalar::is_one() const { return c_.size() == 1 && c_[0] == 1; }

std::optional<Rational> Scalar::as_rational() const
{
    if (c_.empty())
        return Rational(0);
    if (c_.size() == 1)
        return c_[0];
    return std::nullopt;
}

Scalar &Scalar::operator+=(const Scalar &o)
{
    ctx_ = join(*this, o);
    if (c_.size() < o.c_.size())
        c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o)
{
    ctx_ = join(*this, o);
    if (c_.size() < o.c_.size())
        c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

Scalar &Scalar::operator*=(const Scalar &o)
{
    ctx_ = join(*this, o);
    c_ = mul_poly(c_, o.c_);
    reduce();
    return *this;
}

Scalar &Scalar::operator/=(const Scalar &o)
{
    ctx_ = join(*this, o);
    return *this *= o.inverse();
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    for (auto &q : r.c_)
        q = -q;
    return r;
}

Scalar Scalar::inverse() const
{
    if (c_.empty())
        throw ArithmeticError("division by zero");
    if (c_.size() == 1) {
        Scalar r = *this;
        r.c_[0] = 1 / c_[0];
        return r;
    }
    // Extended Euclid: s * a + t * Phi = 1.
    Poly mod;
    for (const auto &z : ctx_->modulus())
        mod.emplace_back(z);
    Poly r0 = mod, r1 = c_;
    Poly s0, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        Poly s = sub_poly(s0, mul_poly(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant since Phi is irreducible.
    Rational lead = r0[0];
    for (auto &q : s0)
        q /= lead;
    return from_coeffs(ctx_, s0);
}

Scalar Scalar::pow(long n) const
{
    if (n < 0)
        return inverse().pow(-n);
    Scalar result(1);
    result.ctx_ = ctx_;
    Scalar base = *this;
    while (n > 0) {
        if (n & 1)
            result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

bool operator==(const Scalar &a, const Scalar &b)
{
    Scalar::join(a, b);
    return a.c_ == b.c_;
}

std::strong_ordering operator<=>(const Scalar &a, const Scalar &b)
{
    if (a.c_.size() != b.c_.size())
        return a.c_.size() <=> b.c_.size();
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        int c = cmp(a.c_[i], b.c_[i]);
        if (c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string Scalar::str() const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const Rational &q = c_[i];
        if (q == 0)
            continue;
        Rational mag = abs(q);
        if (first) {
            if (q < 0)
                os << "-";
        } else {
            os << (q < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1)
            os << mag.get_str() << "*";
        os << "w";
        if (i > 1)
            os << "^" << i;
    }
    return os.str();
}

Scalar binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return Scalar(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Scalar(Rational(r));
}

Scalar factorial(long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Scalar(Rational(r));
}

} // namespace philoop
