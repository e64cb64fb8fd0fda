#pragma once

#include "philoop/series.hpp"

#include <vector>

namespace philoop {

/// A(w) (p(w) d/dw)^{(j)} [ pbar(lambda^{-1} z) delta(lambda w / z) ].
struct DeltaTerm {
    Scalar lambda;
    int j = 0;
    LaurentSeries A;
};

/// Rectangle of (m, n) indices, inclusive on both ends.
struct Window {
    int m_lo = 0, m_hi = 0, n_lo = 0, n_hi = 0;

    static Window square(int radius) { return {-radius, radius, -radius, radius}; }
    int rows() const { return m_hi - m_lo + 1; }
    int cols() const { return n_hi - n_lo + 1; }
};

/// Coefficients indexed by (m, n) over a window.
struct CoeffTable {
    Window window;
    std::vector<Scalar> values;

    const Scalar &at(int m, int n) const;
    bool all_zero() const;
};

/// Finite sum of delta-type terms kept in canonical form: sorted by
/// (lambda, j), one term per pair, zero coefficients dropped.
///
/// Two-variable distributions are never expanded; coefficients of
/// z^{-m-1} w^n are extracted on demand.
class DeltaSum {
public:
    explicit DeltaSum(Deformation def, std::vector<DeltaTerm> terms = {});

    const Deformation &deformation() const noexcept { return def_; }
    const std::vector<DeltaTerm> &terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    DeltaSum &operator+=(const DeltaSum &o);
    friend DeltaSum operator+(DeltaSum a, const DeltaSum &b) { return a += b; }

    /// Coefficient of z^{-m-1}, as a Laurent series in w.
    LaurentSeries z_coeff(int m) const;
    /// Coefficient of z^{-m-1} w^n.
    Scalar coeff(int m, int n) const;
    CoeffTable table(const Window &w) const;

    /// Canonical forms agree term by term. Throws if the deformations differ.
    friend bool operator==(const DeltaSum &a, const DeltaSum &b);

private:
    void add_term(DeltaTerm t);

    Deformation def_;
    std::vector<DeltaTerm> terms_;
};

/// Coefficient of z^{-m-1} w^n in pbar(lambda^{-1} z) delta(lambda w / z),
/// which is lambda^{m+1} pbar_{n-m-1}.
Scalar base_coefficient(const Deformation &def, const Scalar &lambda, int m, int n);

/// Coefficients of (z - lambda0 w)^k s over the window.
CoeffTable delta_mul_binomial(const DeltaSum &s, const Scalar &lambda0, int k, const Window &w);

/// Entries k = 0..order of exp(z0 p(w) d/dw) s, i.e. (p d/dw)^{(k)} s.
std::vector<DeltaSum> delta_apply_exp_shift(const DeltaSum &s, int order);

} // namespace philoop
