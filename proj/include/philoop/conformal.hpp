#pragma once

#include "philoop/report.hpp"
#include "philoop/series.hpp"
#include "philoop/structure.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace philoop {

/// Element sum c_{k,i} d^k gen_i + gamma c of a free C[d]-module plus a
/// central line. Zero coefficients are never stored.
class CAElement {
public:
    using Key = std::pair<int, int>; // (d-power, generator index)

    CAElement() = default;
    static CAElement gen(int i, const Scalar &coef = Scalar(1), int k = 0);
    static CAElement central(const Scalar &coef);
    /// sum_i v[i] gen_i
    static CAElement from_vector(const Vector &v, int k = 0);

    const std::map<Key, Scalar> &terms() const noexcept { return terms_; }
    const Scalar &central_part() const noexcept { return central_; }
    bool is_zero() const { return terms_.empty() && central_.is_zero(); }
    int max_degree() const;

    void add(int k, int i, const Scalar &c);
    void add_central(const Scalar &c);

    CAElement &operator+=(const CAElement &o);
    CAElement &operator-=(const CAElement &o);
    CAElement &operator*=(const Scalar &s);
    friend CAElement operator+(CAElement a, const CAElement &b) { return a += b; }
    friend CAElement operator-(CAElement a, const CAElement &b) { return a -= b; }
    friend CAElement operator*(CAElement a, const Scalar &s) { return a *= s; }
    CAElement operator-() const { return *this * Scalar(-1); }
    friend bool operator==(const CAElement &, const CAElement &) = default;

    /// d applied `times` times; the central part is killed.
    CAElement derivative(int times = 1) const;
    /// d^{(j)} = d^j / j!
    CAElement divided_derivative(int j) const;
    /// Coordinates of the d^k part in the generator basis.
    Vector component(int k, std::size_t dim) const;

    std::string str(const std::vector<std::string> &names, const std::string &central_name = "c") const;

private:
    std::map<Key, Scalar> terms_;
    Scalar central_{0};
};

/// Conformal algebra that is free over C[d] on finitely many generators,
/// plus an optional central element with d c = 0 and all products with c zero.
class ConformalAlgebra {
public:
    ConformalAlgebra(std::vector<std::string> gens, std::optional<std::string> central, std::string family);

    const std::vector<std::string> &gens() const noexcept { return gens_; }
    std::size_t dim() const noexcept { return gens_.size(); }
    const std::optional<std::string> &central() const noexcept { return central_; }
    const std::string &family() const noexcept { return family_; }
    std::optional<int> index_of(const std::string &name) const;

    /// Stores gen_a _n gen_b.
    void set(int a, int b, int n, CAElement value);
    /// gen_a _n gen_b read from the table; zero beyond the stored support.
    CAElement table(int a, int b, int n) const;
    /// Largest n with a stored nonzero product, or -1.
    int support() const;

    /// Bilinear extension using (d a)_n b = -n a_{n-1} b on the left and
    /// a_n (d b) = d(a_n b) + n a_{n-1} b on the right.
    CAElement nprod(const CAElement &u, const CAElement &v, int n) const;

    std::string str(const CAElement &u) const;

private:
    std::vector<std::string> gens_;
    std::optional<std::string> central_;
    std::string family_;
    std::map<std::pair<int, int>, std::vector<CAElement>> table_;
};

/// a_n b = d_{n0} [a,b] + d_{n1} (a,b) c. Throws ValidationError on invalid data.
ConformalAlgebra build_current(const LieData &g);
/// Same without validating `g`; used to build negative controls.
ConformalAlgebra build_current_unchecked(const LieData &g);
/// L_n L = d_{n0} dL + d_{n1} 2L + d_{n3} c/2.
ConformalAlgebra build_virasoro();
/// a_n b = d_{n0} d(ba) + d_{n1}(ab + ba) + d_{n3} <a,b> c/2.
ConformalAlgebra build_novikov(const NovikovData &A);
ConformalAlgebra build_novikov_unchecked(const NovikovData &A);

/// Support bound, skew-symmetry on generator pairs, agreement of the right
/// derivation rule with skew-symmetry, and the Jacobi-type identity
/// a_m(b_n c) = sum_j C(m,j) (a_j b)_{m+n-j} c + b_n(a_m c) for m, n <= 4 on
/// all generator triples and on `samples` seeded random triples.
Report check_axioms(const ConformalAlgebra &C, int samples = 50, std::uint64_t seed = 0);

/// -sum_j (-1)^{j+n} d^{(j)} (v_{n+j} u): the right-hand side of skew-symmetry.
CAElement skew_product(const ConformalAlgebra &C, const CAElement &u, const CAElement &v, int n);

/// Action of a cyclic group G = <sigma> of order M.
struct GStructure {
    int M = 1;
    /// Action of sigma on generators (column j = image of gen j).
    Matrix R;
    Scalar chi{1};
    Scalar chi_phi{1};

    /// R_{sigma^g}, extended by R(d^k a) = chi^k d^k R(a); central fixed.
    CAElement apply(const CAElement &u, long g) const;
    /// Smallest h >= 1 with chi_phi^h = 1.
    int chi_phi_order() const;
};

/// Order relations, the d-intertwining rule, R_g(a_n b) = chi(g)^{-(n+1)}
/// (R_g a)_n (R_g b) on generator pairs, and p(chi_phi x) = chi^{-1} chi_phi p(x).
Report check_g_structure(const ConformalAlgebra &C, const GStructure &G, const Deformation &def);

struct Quotient {
    ConformalAlgebra algebra;
    /// Induced action of G/H, generated by the image of sigma.
    GStructure action;
    /// Generators of C kept as representatives of the quotient generators.
    std::vector<int> kept;
};

/// C/H for H the kernel of chi_phi, with (uH)_n(vH) = sum_{h in H} ((R_h u)_n v)H.
/// For trivial H the input is returned unchanged.
Quotient quotient_by_H(const ConformalAlgebra &C, const GStructure &G);

} // namespace philoop
