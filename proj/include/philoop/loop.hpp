#pragma once

#include "philoop/conformal.hpp"
#include "philoop/delta.hpp"
#include "philoop/report.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace philoop {

/// Canonical element sum_a a (x) f_a + gamma c of the loop algebra. The
/// central coefficient gamma multiplies the class of c (x) x^{-1} p(x).
struct LoopElement {
    std::map<int, LaurentSeries> parts;
    Scalar central{0};

    bool is_zero() const;
    LoopElement &operator+=(const LoopElement &o);
    LoopElement &operator-=(const LoopElement &o);
    LoopElement &operator*=(const Scalar &s);
    friend LoopElement operator+(LoopElement a, const LoopElement &b) { return a += b; }
    friend LoopElement operator-(LoopElement a, const LoopElement &b) { return a -= b; }
    friend LoopElement operator*(LoopElement a, const Scalar &s) { return a *= s; }
    friend bool operator==(const LoopElement &a, const LoopElement &b);

    /// Generator part, zero when absent.
    LaurentSeries part(int gen) const;
};

/// Formal sum of d^k a (x) f and c (x) g before passing to the quotient.
struct RawElement {
    std::map<std::pair<int, int>, LaurentSeries> terms; // (d-power, generator) -> series
    LaurentSeries central;

    void add(int k, int gen, const LaurentSeries &f);
    /// x (x) f for an element x of the conformal algebra.
    void add(const CAElement &x, const LaurentSeries &f);
    RawElement &operator+=(const RawElement &o);
    static RawElement from(const LoopElement &u);
};

/// The data fixing one loop algebra: the conformal algebra, the deformation
/// p, and optionally a cyclic group action. With a group present, elements
/// stand for classes and are kept as symmetrized representatives.
class LoopCtx {
public:
    /// Throws ValidationError if the group action fails check_g_structure or
    /// chi_phi is not injective.
    LoopCtx(ConformalAlgebra C, Deformation def, std::optional<GStructure> G = std::nullopt,
            int precision = kDefaultPrecision);

    const ConformalAlgebra &algebra() const noexcept { return C_; }
    const Deformation &deformation() const noexcept { return def_; }
    const std::optional<GStructure> &group() const noexcept { return G_; }
    int precision() const noexcept { return precision_; }

    /// Res(g / p) with p^{-1} known to the working precision.
    Scalar central_residue(const LaurentSeries &g) const;

private:
    ConformalAlgebra C_;
    Deformation def_;
    std::optional<GStructure> G_;
    int precision_;
    LaurentSeries p_inv_;
};

/// Canonical form: d^k a (x) f becomes a (x) (-p d/dx)^k f and c (x) g
/// becomes Res(g/p) times the central class. Throws PrecisionError when a
/// residue needs more of p^{-1} than the working precision provides.
LoopElement reduce(const LoopCtx &ctx, const RawElement &raw);

/// The image of d (x) 1 + 1 (x) p d/dx applied to x (x) f.
RawElement d_image(const LoopCtx &ctx, const CAElement &x, const LaurentSeries &f);

/// sum_i (a_i b) (x) (p d/dx)^{(i)} f * g on arbitrary raw elements, reduced.
/// Ignores the group.
LoopElement raw_bracket(const LoopCtx &ctx, const RawElement &u, const RawElement &v);

/// Bracket of the loop algebra; with a group, sum_g [R_g u, v] on classes.
LoopElement bracket(const LoopCtx &ctx, const LoopElement &u, const LoopElement &v);
/// Bracket of the untwisted loop algebra, ignoring any group.
LoopElement plain_bracket(const LoopCtx &ctx, const LoopElement &u, const LoopElement &v);

/// R_g(a (x) f) = chi(g)^{-1} R_g(a) (x) f(chi_phi(g)^{-1} x); central class fixed.
LoopElement act(const LoopCtx &ctx, const LoopElement &u, long g);
/// (1/|G|) sum_g R_g u, the canonical class representative. Identity without a group.
LoopElement symmetrize(const LoopCtx &ctx, const LoopElement &u);

/// Class of x (x) x^n p(x).
LoopElement field_mode(const LoopCtx &ctx, const CAElement &x, int n);
LoopElement field_mode(const LoopCtx &ctx, int gen, int n);
/// Class of c (x) x^n p(x), which is delta_{n,-1} times the central class.
LoopElement central_mode(const LoopCtx &ctx, int n);

/// Antisymmetry and Jacobi identity on seeded random triples.
Report jacobi_check(const LoopCtx &ctx, int samples = 50, std::uint64_t seed = 0);

/// bracket(u + image, v) = bracket(u, v) for random images of the quotient map.
Report well_definedness_check(const LoopCtx &ctx, int samples = 20, std::uint64_t seed = 0);

/// Compares [a(m), b(n)] with the (m, n) coefficient of the delta-sum
/// expansion of the field commutator for every cell of the window.
Report check_field_commutator(const LoopCtx &ctx, int a, int b, const Window &window);

/// Checks that u -> sum_g R_g u carries the bracket of classes to the
/// bracket of the untwisted loop algebra, on pairs with exponents in [lo, hi].
Report fixed_subalgebra_compare(const LoopCtx &ctx, int lo, int hi, int samples = 30, std::uint64_t seed = 0);

/// Random element with exact parts, exponents in [lo, hi].
LoopElement random_loop_element(const LoopCtx &ctx, class Rng &rng, int lo = -6, int hi = 6);

/// Text form "e[x^-1] + f[2*x] + c[3/2]": generator names with the series
/// in brackets, and the central coefficient under the central name.
std::string str(const LoopCtx &ctx, const LoopElement &u);
nlohmann::ordered_json to_json(const LoopCtx &ctx, const LoopElement &u);
/// Parses the text form. Throws ParseError.
LoopElement parse_loop_element(const LoopCtx &ctx, std::string_view text, const FieldPtr &field = nullptr);

} // namespace philoop
