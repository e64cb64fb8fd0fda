#pragma once

#include "philoop/loop.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace philoop {

/// Element of g (x) C((x)) + C c. Same shape as a canonical loop element,
/// with parts indexed by the basis of g.
using AffineElement = LoopElement;
/// Element of A (x) C((x)) + C c for a Novikov algebra A.
using NovikovAffineElement = LoopElement;

/// F(x) d/dx + gamma c.
struct VirasoroElement {
    LaurentSeries coeff;
    Scalar central{0};

    friend bool operator==(const VirasoroElement &, const VirasoroElement &) = default;
    VirasoroElement &operator+=(const VirasoroElement &o);
    std::string str() const;
};

/// [a f, b g] = [a,b] fg + (a,b) Res(f' g) c.
AffineElement affine_bracket(const LieData &g, const AffineElement &u, const AffineElement &v);

/// Map from the loop algebra of the current conformal algebra to the affine
/// algebra; the default sends a (x) f to a (x) f and the central class to c.
using AffineMap = std::function<AffineElement(const LoopElement &)>;

/// Checks that the map is a Lie homomorphism on seeded random pairs.
Report verify_affine_iso(const LieData &g, const Deformation &def, int samples = 50, std::uint64_t seed = 0,
                         const AffineMap &map = nullptr);

/// [F d/dx, G d/dx] = (F G' - G F') d/dx + (c/2) Res(F'''/6 G).
VirasoroElement virasoro_bracket(const VirasoroElement &u, const VirasoroElement &v);

/// (1/24) Res( f (2 p'' - p^{-1} p'^2) ), with p^{-1} cut at the working precision.
Scalar alpha_phi(const Deformation &def, const LaurentSeries &f, int precision = kDefaultPrecision);

struct VirasoroIsoResult {
    Report report;
    /// Sign choices (s1, s2) for which L (x) f -> s1 p f d/dx + s2 alpha(f) c,
    /// central class -> c, is a homomorphism on every sample.
    std::vector<std::pair<int, int>> passing;
};

VirasoroIsoResult verify_virasoro_iso(const Deformation &def, int samples = 50, std::uint64_t seed = 0);

/// [a f, b g] = ab (p f') g - ba (p g') f + (c/2) <a,b> Res(p^{-1} (p d/dx)^{(3)} f g).
/// With divide_by_p false the p^{-1} in the central term is dropped; this
/// exists only as a negative control.
NovikovAffineElement novikov_affine_bracket(const NovikovData &A, const Deformation &def,
                                            const NovikovAffineElement &u, const NovikovAffineElement &v,
                                            bool divide_by_p = true, int precision = kDefaultPrecision);

/// Agreement of the loop-algebra bracket of the Novikov conformal algebra
/// with novikov_affine_bracket, plus antisymmetry and Jacobi for the latter.
Report verify_novikov_loop_agreement(const NovikovData &A, const Deformation &def, int samples = 50,
                                     std::uint64_t seed = 0, bool divide_by_p = true);

struct TwistedAffine {
    LoopCtx ctx;
    Report report;
};

/// Equivariant loop algebra of the current algebra of g under the cyclic
/// group generated by `sigma` (order M), acting by R(d^n a) = chi^{n+1} d^n sigma(a).
/// Runs the Lie axioms, the fixed-subalgebra comparison, and checks that the
/// averaged classes land in the affine algebra's fixed points of
/// sigma_hat(a f) = sigma(a) f(chi_phi^{-1} x), with the affine bracket.
/// Throws ValidationError for incompatible (chi, chi_phi, p) or a sigma
/// that is not a form-preserving automorphism of order M.
TwistedAffine twisted_affine_build(const LieData &g, const Matrix &sigma, int M, const Deformation &def,
                                   const Scalar &chi, const Scalar &chi_phi, int samples = 30,
                                   std::uint64_t seed = 0);

} // namespace philoop
