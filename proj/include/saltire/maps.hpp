#pragma once

#include <vector>

#include "saltire/domains.hpp"
#include "saltire/feasibility.hpp"
#include "saltire/hardy.hpp"
#include "saltire/realization.hpp"
#include "saltire/types.hpp"

namespace saltire {

/// Analytic map of the disc into the symmetrised bidisc, componentwise
/// (s, p).
struct GammaMap {
  Evaluable s, p;

  GammaPoint operator()(cxd lambda) const {
    return {s(lambda), p(lambda)};
  }
};

/// Analytic map of the disc into the tetrablock, componentwise
/// (x1, x2, x3).  The degenerate flag marks canonical preimages chosen for
/// z-independent data (see lw_tetra).
struct TetraMap {
  Evaluable x1, x2, x3;
  bool degenerate = false;

  TetraPoint operator()(cxd lambda) const {
    return {x1(lambda), x2(lambda), x3(lambda)};
  }
};

/// Function on the bidisc of the form
///   (z, lambda) -> (a(lambda) z + b(lambda)) / (c(lambda) z + d(lambda)),
/// a Moebius transform in the first variable with coefficients analytic in
/// the second.  Every map this library produces into the bidisc Schur class
/// has this shape.
struct MobiusPencil {
  Evaluable a, b, c, d;

  /// Throws ZeroDenominator when the denominator vanishes at the point.
  cxd operator()(cxd z, cxd lambda) const;
};

/// Flip the sign of the pencil as a function: (z,l) -> -pencil(z,l).
MobiusPencil negate(const MobiusPencil& pencil);

/// North map for the symmetrised bidisc: lift an analytic (s, p) with
/// rational components to a 2x2 Schur-class function with trace s and
/// determinant p,
///   F = [[s/2, phi], [psi, s/2]]   with   phi psi = s^2/4 - p,
/// where phi absorbs the inner part of s^2/4 - p and phi, psi split its
/// outer part as equal square roots.  When s^2/4 = p identically (the
/// royal case) the lift is diag(s/2, s/2).  Throws PoleInDisc for inputs
/// with disc poles and NotInGamma when the lift fails the Schur bound on a
/// boundary grid.
Mat2Function ln_gamma(const RationalFunction& s, const RationalFunction& p,
                      const Tolerance& tol = {});

/// North map for the tetrablock: lift rational (x1, x2, x3) to
///   F = [[x1, phi], [psi, x2]]   with   phi psi = x1 x2 - x3,
/// so diag(F) = (x1, x2) and det F = x3; diag(x1, x2) when x1 x2 = x3
/// identically.  Throws PoleInDisc and NotInTetrablock analogously.
Mat2Function ln_tetra(const RationalFunction& x1, const RationalFunction& x2,
                      const RationalFunction& x3, const Tolerance& tol = {});

/// South map onto the symmetrised bidisc: (trace, determinant) of F.
GammaMap ls_gamma(const Mat2Function& f);

/// South map onto the tetrablock: (f11, f22, det) of F.
TetraMap ls_tetra(const Mat2Function& f);

/// East map for the symmetrised bidisc: the magic-function composition
///   (z, lambda) -> (p(lambda) z - s(lambda)/2) / (1 - s(lambda) z / 2)
/// as a Moebius pencil (a, b, c, d) = (p, -s/2, -s/2, 1).
MobiusPencil le_gamma(const GammaMap& h);

/// East map for the tetrablock:
///   (z, lambda) -> (x3(lambda) z - x1(lambda)) / (x2(lambda) z - 1)
/// as the pencil (a, b, c, d) = (-x3, x1, -x2, 1).
MobiusPencil le_tetra(const TetraMap& x);

/// Southeast map: SE(F)(z, lambda) = -F_{F(lambda)}(z), i.e. the negated
/// scalar linear fractional transform of F(lambda) at z, as the pencil
/// (det F, -f11, -f22, 1).
MobiusPencil se_map(const Mat2Function& f);

/// West map for the symmetrised bidisc: recover (s, p) = (-2b/d, a/d) from
/// a pencil in the range of le_gamma.
GammaMap lw_gamma(const MobiusPencil& pencil);

/// West map for the tetrablock: recover (x1, x2, x3) = (b/d, -c/d, -a/d).
/// When the pencil is z-independent (ad = bc identically, detected on an
/// interior sampling grid) the fibre of preimages is a whole family; the
/// canonical representative (b/d, 0, 0) is returned with the degenerate
/// flag set.
TetraMap lw_tetra(const MobiusPencil& pencil, const Tolerance& tol = {});

/// Kernel pair of a 2x2 Schur-class function on finite node data — the
/// east-up direction of the web; identical to kernel_pair_from_function.
KernelPair ue_map(const Mat2Function& f, const std::vector<cxd>& nodes,
                  const std::vector<cxd>& z_points);

/// West-up direction: realize a 2x2 Schur-class function from a kernel
/// pair with rank-one N whose slack kernel
///   ONES - Q o N - P o M
/// is PSD of rank one.  Factors f, g, V of N, the slack kernel, and M are
/// combined into domain columns (1, z_k f_jk, lambda_j V_jk) and range
/// columns (g_jk, f_jk, V_jk); the least-squares completion of the column
/// correspondence is the colligation of the result.  Throws RankTolerance
/// when a rank-one condition fails, GramianViolation when the slack kernel
/// is indefinite or the completion norm exceeds its tolerance, and
/// ShapeMismatch on inconsistent dimensions.
Mat2Function procedure_uw(const KernelPair& pair,
                          const std::vector<cxd>& nodes,
                          const std::vector<cxd>& z_points,
                          const Tolerance& tol = {});

}  // namespace saltire
