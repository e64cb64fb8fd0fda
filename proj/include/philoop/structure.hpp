#pragma once

#include "philoop/matrix.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace philoop {

/// Sparse vector over a basis indexed by integers.
using SparseVec = std::map<int, Scalar>;
/// Product of two basis elements.
using BasisProduct = std::function<SparseVec(int, int)>;

/// A finite-dimensional Lie algebra with a symmetric bilinear form.
struct LieData {
    std::vector<std::string> basis;
    /// bracket[i][j] = coordinates of [e_i, e_j]
    std::vector<std::vector<Vector>> bracket;
    Matrix form;

    std::size_t dim() const { return basis.size(); }
    Vector lie(const Vector &a, const Vector &b) const;
    Scalar pairing(const Vector &a, const Vector &b) const;

    /// Name of the first violated identity, with a witness, or nullopt.
    std::optional<std::string> violation() const;
    /// Throws ValidationError naming the violated identity.
    void validate() const;
};

/// A finite-dimensional Novikov algebra with its form.
struct NovikovData {
    std::vector<std::string> basis;
    /// product[i][j] = coordinates of e_i e_j
    std::vector<std::vector<Vector>> product;
    Matrix form;

    std::size_t dim() const { return basis.size(); }
    Vector mul(const Vector &a, const Vector &b) const;
    Scalar pairing(const Vector &a, const Vector &b) const;

    std::optional<std::string> violation() const;
    void validate() const;
};

/// Checks both Novikov identities on every triple drawn from `indices`,
/// using the bilinear extension of `mul`. Works for infinite-dimensional
/// algebras given by a rule on basis elements.
std::optional<std::string> novikov_identity_violation(const BasisProduct &mul, std::span<const int> indices);

/// Shipped examples.
namespace catalog {
LieData sl2();
LieData gl2();
/// Abelian Lie algebra of dimension n with the given (symmetric) form.
LieData abelian(std::size_t n, Matrix form);
/// One-dimensional Novikov algebra a*a = k a with <a,a> = form.
NovikovData novikov_line(const Scalar &k, const Scalar &form);
/// Zero multiplication with the given form.
NovikovData novikov_zero(Matrix form);
/// Chevalley involution e -> -f, f -> -e, h -> -h of sl2.
Matrix sl2_chevalley();
/// Ad(diag(t, 1)) on sl2: e -> t e, f -> t^{-1} f, h -> h.
Matrix sl2_torus(const Scalar &t);
} // namespace catalog

} // namespace philoop
