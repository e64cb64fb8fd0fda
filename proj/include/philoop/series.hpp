#pragma once

#include "philoop/scalar.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace philoop {

/// Working window used when an infinite series (such as p^{-1}) must be cut.
inline constexpr int kDefaultPrecision = 32;

/// Laurent series over Q(w) with an explicit precision marker.
///
/// An exact series is a Laurent polynomial. A truncated series knows its
/// coefficients only below `precision()`; asking for anything at or above
/// that exponent raises PrecisionError.
class LaurentSeries {
public:
    using Terms = std::map<int, Scalar>;

    LaurentSeries() = default;
    explicit LaurentSeries(Terms terms, std::optional<int> prec = std::nullopt);

    static LaurentSeries monomial(const Scalar &c, int exponent);
    static LaurentSeries constant(const Scalar &c) { return monomial(c, 0); }
    /// The unknown tail O(x^k).
    static LaurentSeries big_o(int k) { return LaurentSeries({}, k); }

    bool is_exact() const noexcept { return !prec_.has_value(); }
    std::optional<int> precision() const noexcept { return prec_; }
    const Terms &terms() const noexcept { return c_; }

    /// Exact zero, or truncated with every known coefficient zero.
    bool known_zero() const noexcept { return c_.empty(); }
    /// True only for the exact zero series.
    bool is_zero() const noexcept { return c_.empty() && !prec_; }
    bool is_known(int exponent) const noexcept { return !prec_ || exponent < *prec_; }

    /// Coefficient at x^exponent; throws PrecisionError when unknown.
    Scalar coeff(int exponent) const;
    /// Lowest exponent with a known nonzero coefficient.
    std::optional<int> valuation() const;
    /// Highest stored exponent (exact series only meaningful); nullopt when empty.
    std::optional<int> degree() const;

    LaurentSeries truncated(int prec) const;
    LaurentSeries shifted(int k) const;
    LaurentSeries derivative() const;
    /// f(lambda x): coefficient n scaled by lambda^n.
    LaurentSeries scale_x(const Scalar &lambda) const;
    /// Coefficient of x^{-1}.
    Scalar residue() const;

    LaurentSeries &operator+=(const LaurentSeries &o);
    LaurentSeries &operator-=(const LaurentSeries &o);
    LaurentSeries &operator*=(const Scalar &s);
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries &b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries &b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b);
    friend LaurentSeries operator*(LaurentSeries a, const Scalar &s) { return a *= s; }
    friend LaurentSeries operator*(const Scalar &s, LaurentSeries a) { return a *= s; }
    LaurentSeries operator-() const;

    friend bool operator==(const LaurentSeries &a, const LaurentSeries &b) = default;

    std::string str() const;

private:
    void set_precision(std::optional<int> prec);

    Terms c_;
    std::optional<int> prec_;
};

/// Multiplicative inverse truncated at `target_prec` (or earlier if the
/// input window forces it).
LaurentSeries inverse(const LaurentSeries &f, int target_prec);

/// The deformation p(x) fixing the associate phi = exp(z p(x) d/dx)(x).
class Deformation {
public:
    explicit Deformation(LaurentSeries p);

    const LaurentSeries &p() const noexcept { return p_; }
    /// x^{-1} p(x)
    const LaurentSeries &p_bar() const noexcept { return p_bar_; }

    /// p(x) f'(x)
    LaurentSeries derive(const LaurentSeries &f) const;
    /// (p d/dx)^j f / j!
    LaurentSeries divided_power(const LaurentSeries &f, int j) const;
    /// p^{-1} with `terms` known coefficients past its leading exponent.
    LaurentSeries p_inverse(int terms = kDefaultPrecision) const;

    std::string str() const { return p_.str(); }

private:
    LaurentSeries p_;
    LaurentSeries p_bar_;
};

/// Coefficients of z^0..z^order of phi(x, z) = exp(z p d/dx)(x).
std::vector<LaurentSeries> phi_expand(const Deformation &def, int order);

/// Checks phi(phi(x,z1),z2) = phi(x,z1+z2) through total z-degree `order`
/// for an arbitrary candidate expansion (entry k = coefficient of z^k).
bool associate_law_holds(std::span<const LaurentSeries> expansion, int order);

bool phi_compose_check(const Deformation &def, int order);

} // namespace philoop
