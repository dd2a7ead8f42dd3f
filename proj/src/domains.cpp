#include "saltire/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace saltire {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Radial shrink of boundary grids.  Chosen well above eps_member so that
/// the pole line |zs| = 2 (reachable only when |s| is within eps of 2)
/// stays outside the sample circle.
constexpr double kBoundaryShrink = 1e-6;

/// Relative tolerance of the mu_diag bisection.
constexpr double kMuRelTol = 1e-10;

/// Hard iteration cap for the bisection; 300 halvings of the initial
/// bracket exhaust double precision in every case, including mu == 0.
constexpr int kMuMaxIter = 300;

double sq(double v) { return v * v; }

}  // namespace

cxd phi(cxd z, const GammaPoint& g, double pole_eps) {
  const cxd den = 2.0 - z * g.s;
  if (std::abs(den) < pole_eps) {
    throw PoleError("phi: evaluation at a pole (2 - zs == 0)");
  }
  return (2.0 * z * g.p - g.s) / den;
}

cxd psi(cxd z, const TetraPoint& x, double pole_eps) {
  const cxd den = x.x2 * z - 1.0;
  if (std::abs(den) < pole_eps) {
    throw PoleError("psi: evaluation at a pole (x2 z == 1)");
  }
  return (x.x3 * z - x.x1) / den;
}

cxd upsilon(cxd z, const TetraPoint& x, double pole_eps) {
  const cxd den = x.x1 * z - 1.0;
  if (std::abs(den) < pole_eps) {
    throw PoleError("upsilon: evaluation at a pole (x1 z == 1)");
  }
  return (x.x3 * z - x.x2) / den;
}

double tetra_membership_residual(const TetraPoint& x) {
  const double lhs = sq(std::abs(x.x1)) + sq(std::abs(x.x2)) -
                     sq(std::abs(x.x3)) + 2.0 * std::abs(x.x1 * x.x2 - x.x3);
  return std::max(lhs - 1.0, std::abs(x.x3) - 1.0);
}

bool in_closed_tetrablock(const TetraPoint& x, const Tolerance& tol) {
  return tetra_membership_residual(x) <= tol.eps_member;
}

double psi_sup(const TetraPoint& x, double degenerate_eps) {
  const double r2 = std::abs(x.x2);
  const double mismatch = std::abs(x.x1 * x.x2 - x.x3);
  if (r2 < 1.0) {
    // Moebius image of the disc is the disc of centre
    // (x1 - conj(x2) x3)/(1 - |x2|^2) and radius |x1 x2 - x3|/(1 - |x2|^2).
    return (std::abs(x.x1 - std::conj(x.x2) * x.x3) + mismatch) /
           (1.0 - r2 * r2);
  }
  // The pole of Psi(., x) lies in the closed disc.  The singularity is
  // removable exactly when x1 x2 == x3, in which case Psi is constant x1.
  if (mismatch <= degenerate_eps * std::max(1.0, std::abs(x.x3))) {
    return std::abs(x.x1);
  }
  return std::numeric_limits<double>::infinity();
}

bool in_closed_tetrablock_psi(const TetraPoint& x, const Tolerance& tol) {
  const double sup = psi_sup(x, tol.eps_eq);
  if (!(sup <= 1.0 + tol.eps_member)) {
    return false;
  }
  // Side condition: on the constant branch the supremum does not see x2,
  // but membership still requires |x2| <= 1.
  const bool constant_branch =
      std::abs(x.x1 * x.x2 - x.x3) <= tol.eps_eq * std::max(1.0, std::abs(x.x3));
  if (constant_branch && std::abs(x.x2) > 1.0 + tol.eps_member) {
    return false;
  }
  return true;
}

bool in_tetra_distinguished_boundary(const TetraPoint& x,
                                     const Tolerance& tol) {
  return std::abs(x.x1 - std::conj(x.x2) * x.x3) <= tol.eps_member &&
         std::abs(std::abs(x.x3) - 1.0) <= tol.eps_member &&
         std::abs(x.x2) <= 1.0 + tol.eps_member;
}

bool in_closed_gamma(const GammaPoint& g, const Tolerance& tol) {
  if (std::abs(g.s) > 2.0 + tol.eps_member) {
    return false;
  }
  const int grid = std::max(tol.boundary_grid_size, 64);
  const double radius = 1.0 - kBoundaryShrink;
  for (int k = 0; k < grid; ++k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / grid;
    const cxd z = radius * std::exp(cxd(0.0, theta));
    // With |s| <= 2 + eps_member the pole of Phi(., g) has modulus at least
    // 2/(2 + eps_member) > radius, so the evaluation below cannot blow up
    // on genuine members; non-members may produce large values, which is
    // exactly what the test wants to see.
    if (std::abs(phi(z, g)) > 1.0 + tol.eps_member) {
      return false;
    }
  }
  return true;
}

bool in_gamma_distinguished_boundary(const GammaPoint& g,
                                     const Tolerance& tol) {
  // Roots of t^2 - s t + p, evaluated with the numerically stable pairing
  // r1 = (s + sqrt(s^2 - 4p))/2, r2 = p / r1 (when r1 != 0).
  const cxd disc = std::sqrt(g.s * g.s - 4.0 * g.p);
  const cxd cand1 = 0.5 * (g.s + disc);
  const cxd cand2 = 0.5 * (g.s - disc);
  const cxd r1 = std::abs(cand1) >= std::abs(cand2) ? cand1 : cand2;
  const cxd r2 = std::abs(r1) > 0.0 ? g.p / r1 : cxd(0.0);
  return std::abs(std::abs(r1) - 1.0) <= tol.eps_member &&
         std::abs(std::abs(r2) - 1.0) <= tol.eps_member;
}

double mu_diag(const Mat2& a, const Tolerance& tol) {
  const double norm = a.jacobiSvd().singularValues()(0);
  if (norm == 0.0) {
    return 0.0;
  }
  const cxd det = a.determinant();
  const auto member = [&](double t) {
    const TetraPoint scaled{a(0, 0) / t, a(1, 1) / t, det / (t * t)};
    return in_closed_tetrablock(scaled, tol);
  };
  // The feasible set {t : member(t)} is upward closed (scaling a point of
  // the tetrablock towards the origin stays inside), so bisection applies.
  double hi = 2.0 * norm + 1.0;
  if (!member(hi)) {
    throw NonConvergence("mu_diag: initial bracket 2*||A|| + 1 infeasible");
  }
  double lo = 0.0;
  for (int it = 0; it < kMuMaxIter && (hi - lo) > kMuRelTol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (member(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

TetraPoint tetra_targets(const Mat2& w, const Tolerance& tol) {
  const cxd det = w.determinant();
  if (std::abs(w(0, 0) * w(1, 1) - det) < tol.eps_eq) {
    throw DegenerateTarget(
        "tetra_targets: w11*w22 == det(w) (w12*w21 == 0); the tetrablock "
        "reduction requires x1*x2 != x3");
  }
  return TetraPoint{w(0, 0), w(1, 1), det};
}

GammaPoint gamma_targets(const Mat2& w, const Tolerance& tol) {
  const double off = std::abs(w(0, 1)) + std::abs(w(1, 0));
  const double diag_gap = std::abs(w(0, 0) - w(1, 1));
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  if (off <= tol.eps_eq * scale && diag_gap <= tol.eps_eq * scale) {
    throw ScalarMatrix(
        "gamma_targets: w is a scalar multiple of the identity");
  }
  return GammaPoint{w.trace(), w.determinant()};
}

}  // namespace saltire
