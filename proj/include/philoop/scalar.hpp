#pragma once

#include <gmpxx.h>

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace philoop {

using Rational = mpq_class;
using Integer = mpz_class;

/// The cyclotomic field Q(w) with w a primitive M-th root of unity.
///
/// Elements are stored as rational polynomials in w of degree below
/// totient(M), reduced modulo the cyclotomic polynomial Phi_M.
class FieldCtx {
public:
    static std::shared_ptr<const FieldCtx> make(int order);

    int order() const noexcept { return order_; }
    int degree() const noexcept { return static_cast<int>(modulus_.size()) - 1; }
    /// Coefficients of Phi_M, lowest degree first; monic.
    const std::vector<Integer> &modulus() const noexcept { return modulus_; }

private:
    explicit FieldCtx(int order);

    int order_;
    std::vector<Integer> modulus_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(int n);

/// Exact element of Q(w_M).
///
/// A scalar without a context is a plain rational; it mixes freely with any
/// context. Two scalars carrying contexts of different order cannot be mixed.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : Scalar(Rational(v)) {}
    Scalar(int v) : Scalar(Rational(v)) {}
    Scalar(const Rational &v);
    static Scalar rational(long num, long den);

    /// w^k in the given field.
    static Scalar zeta(const FieldPtr &ctx, long k = 1);
    /// Sum of c[i] * w^i, reduced.
    static Scalar from_coeffs(const FieldPtr &ctx, std::vector<Rational> coeffs);

    const FieldPtr &ctx() const noexcept { return ctx_; }
    /// Coefficients in w, lowest first, trailing zeros trimmed (empty for zero).
    const std::vector<Rational> &coeffs() const noexcept { return c_; }

    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const;
    std::optional<Rational> as_rational() const;

    Scalar inverse() const;
    Scalar pow(long n) const;

    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const Scalar &o);
    Scalar &operator/=(const Scalar &o);

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
    Scalar operator-() const;

    friend bool operator==(const Scalar &a, const Scalar &b);
    /// Arbitrary but fixed total order, used for canonical sorting.
    friend std::strong_ordering operator<=>(const Scalar &a, const Scalar &b);

    std::string str() const;

private:
    void trim();
    void reduce();
    static FieldPtr join(const Scalar &a, const Scalar &b);

    FieldPtr ctx_;
    std::vector<Rational> c_;
};

Scalar binomial(long n, long k);
Scalar factorial(long n);

} // namespace philoop
