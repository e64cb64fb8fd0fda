#pragma once

#include "philoop/delta.hpp"
#include "philoop/report.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace philoop {

/// Linear combination of oscillator monomials a_{-n_1} ... a_{-n_k}|0>.
/// A monomial is its multiset of mode numbers n_i >= 1, stored in
/// descending order; zero coefficients are never stored.
class FockVector {
public:
    using Monomial = std::vector<int>;

    FockVector() = default;
    static FockVector vacuum();
    static FockVector monomial(Monomial parts, const Scalar &c = Scalar(1));

    const std::map<Monomial, Scalar> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Largest mode number appearing, 0 for a multiple of the vacuum.
    int max_part() const;
    /// Largest total sum of mode numbers.
    int degree() const;

    void add(Monomial parts, const Scalar &c);
    FockVector &operator+=(const FockVector &o);
    FockVector &operator-=(const FockVector &o);
    FockVector &operator*=(const Scalar &s);
    friend FockVector operator+(FockVector a, const FockVector &b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector &b) { return a -= b; }
    friend FockVector operator*(FockVector a, const Scalar &s) { return a *= s; }
    friend bool operator==(const FockVector &, const FockVector &) = default;

    /// "2*a[-2,-1]|0> + |0>" style text.
    std::string str() const;

private:
    std::map<Monomial, Scalar> terms_;
};

/// Rank-one Heisenberg Fock space of level l, with the deformation fixing
/// which loop elements are the field modes.
struct FockCtx {
    Scalar level;
    Deformation def;
};

/// Mode a_n for a single n: creation for n < 0, n l d/da_{-n} for n > 0, zero for n = 0.
FockVector mode(const FockCtx &ctx, int n, const FockVector &v);

/// The action of a (x) f, i.e. sum_n f_n a_n. A truncated f is accepted only
/// when every annihilation mode that can act on v has a known coefficient;
/// otherwise PrecisionError.
FockVector act(const FockCtx &ctx, const LaurentSeries &f, const FockVector &v);

using FockAction = std::function<FockVector(const FockCtx &, const LaurentSeries &, const FockVector &)>;

/// Every monomial of total degree at most max_degree, vacuum first.
std::vector<FockVector> fock_basis(int max_degree);

/// Smallest N <= n_max with A_n v = 0 for N <= n <= 2 n_max + 1, where A_n is
/// the action of x^n p(x); nullopt if there is none.
std::optional<int> annihilation_bound(const FockCtx &ctx, const FockVector &v, int n_max,
                                      const FockAction &action = nullptr);

/// True when the field applied to every vector is truncated from above,
/// with the bound found no later than n_max.
bool restricted_check(const FockCtx &ctx, const std::vector<FockVector> &vectors, int n_max,
                      const FockAction &action = nullptr);

/// The (m, n) scalar that [A_m, A_n] must act by: l times the coefficient
/// of z^{-m-1} w^{-n-1} in (p(w) d/dw) [pbar(z) delta(w/z)].
Scalar module_commutator_scalar(const FockCtx &ctx, int m, int n);

/// [A_m, A_n] v against module_commutator_scalar(m, n) v over the window.
Report verify_module_commutator(const FockCtx &ctx, const Window &window, const std::vector<FockVector> &vectors,
                                const FockAction &action = nullptr);

/// act(u) act(v) - act(v) act(u) against the scalar the affine bracket's
/// central term prescribes, on seeded random exact f, g and the given vectors.
Report verify_fock_bracket(const FockCtx &ctx, const std::vector<FockVector> &vectors, int samples = 50,
                           std::uint64_t seed = 0);

} // namespace philoop
