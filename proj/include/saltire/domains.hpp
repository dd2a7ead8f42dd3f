#pragma once

#include "saltire/types.hpp"

namespace saltire {

/// Point of C^2 in symmetrised-bidisc coordinates: s the sum coordinate,
/// p the product coordinate.  Membership in Gamma is a predicate, not a
/// constructor constraint.
struct GammaPoint {
  cxd s{0.0};
  cxd p{0.0};
};

/// Point of C^3 tested against the tetrablock and its distinguished
/// boundary.  Membership is a predicate, not a constructor constraint.
struct TetraPoint {
  cxd x1{0.0};
  cxd x2{0.0};
  cxd x3{0.0};
};

/// Magic function of the symmetrised bidisc:
///   Phi(z, (s,p)) = (2zp - s) / (2 - zs).
/// Throws PoleError when |2 - zs| < pole_eps.
cxd phi(cxd z, const GammaPoint& g, double pole_eps = 1e-14);

/// Magic function of the tetrablock:
///   Psi(z, x) = (x3 z - x1) / (x2 z - 1).
/// Throws PoleError when |x2 z - 1| < pole_eps.
cxd psi(cxd z, const TetraPoint& x, double pole_eps = 1e-14);

/// Companion magic function of the tetrablock:
///   Upsilon(z, x) = (x3 z - x2) / (x1 z - 1).
/// Throws PoleError when |x1 z - 1| < pole_eps.
cxd upsilon(cxd z, const TetraPoint& x, double pole_eps = 1e-14);

/// Signed residual of the closed-form tetrablock membership inequality
///   |x1|^2 + |x2|^2 - |x3|^2 + 2|x1 x2 - x3| <= 1   and   |x3| <= 1.
/// Nonpositive means the point lies in the closed tetrablock; the magnitude
/// is a crude distance proxy used in verification reports.
double tetra_membership_residual(const TetraPoint& x);

/// Closed-tetrablock membership via the quadratic inequality above.
bool in_closed_tetrablock(const TetraPoint& x, const Tolerance& tol = {});

/// Exact supremum of |Psi(., x)| over the open unit disc.
///
/// Psi(., x) is a Moebius map; for |x2| < 1 its image of the disc is a disc,
/// giving the closed form
///   sup = (|x1 - conj(x2) x3| + |x1 x2 - x3|) / (1 - |x2|^2).
/// When |x2| >= 1 the pole of Psi lies in the closed disc and the supremum
/// is infinite unless x1 x2 == x3 (then Psi is constant x1).  A boundary
/// grid cannot certify this supremum to the tolerances the library needs
/// (interior poles are invisible to a single circle and discretisation
/// slack dominates), hence the closed form.
double psi_sup(const TetraPoint& x, double degenerate_eps = 1e-12);

/// Closed-tetrablock membership via the Psi-supremum test: sup |Psi| <= 1
/// together with the side condition |x2| <= 1 on the branch where Psi(., x)
/// is constant (x1 x2 == x3).  Agrees with in_closed_tetrablock away from
/// the decision boundary; both are exposed so they can cross-validate.
bool in_closed_tetrablock_psi(const TetraPoint& x, const Tolerance& tol = {});

/// Distinguished-boundary membership for the tetrablock:
///   x1 == conj(x2) x3,  |x3| == 1,  |x2| <= 1.
bool in_tetra_distinguished_boundary(const TetraPoint& x,
                                     const Tolerance& tol = {});

/// Closed symmetrised-bidisc membership: |s| <= 2 and the Phi-supremum test
/// max over a boundary grid (radially shrunk to avoid the |zs| = 2 pole
/// line) of |Phi(z, g)| <= 1.  Grid size comes from tol.boundary_grid_size.
bool in_closed_gamma(const GammaPoint& g, const Tolerance& tol = {});

/// Distinguished-boundary membership for the symmetrised bidisc: both roots
/// of t^2 - s t + p lie on the unit circle.
bool in_gamma_distinguished_boundary(const GammaPoint& g,
                                     const Tolerance& tol = {});

/// Structured singular value with respect to diagonal 2x2 perturbations:
///   mu_diag(A) = inf{ t > 0 : (a11/t, a22/t, det(A)/t^2) in closed
///   tetrablock },
/// computed by bisection against in_closed_tetrablock.  Returns 0 when every
/// scaling is feasible (e.g. A == 0).  Throws NonConvergence if the initial
/// upper bracket 2*||A|| + 1 is infeasible (it cannot be, since
/// mu_diag(A) <= ||A||; the guard protects against tolerance corruption).
double mu_diag(const Mat2& a, const Tolerance& tol = {});

/// Tetrablock target data of a 2x2 matrix: (w11, w22, det w).
/// Throws DegenerateTarget when |w11*w22 - det w| < tol.eps_eq, i.e. when
/// w12*w21 == 0, since the interpolation theory requires x1*x2 != x3.
TetraPoint tetra_targets(const Mat2& w, const Tolerance& tol = {});

/// Symmetrised-bidisc target data of a 2x2 matrix: (tr w, det w).
/// Throws ScalarMatrix when w is a scalar multiple of the identity.
GammaPoint gamma_targets(const Mat2& w, const Tolerance& tol = {});

}  // namespace saltire
