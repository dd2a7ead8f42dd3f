#pragma once

#include <optional>
#include <vector>

#include "saltire/domains.hpp"
#include "saltire/feasibility.hpp"
#include "saltire/maps.hpp"
#include "saltire/realization.hpp"
#include "saltire/types.hpp"

namespace saltire {

/// A realized solution of an interpolation problem: a 2x2 Schur-class
/// function theta together with the induced analytic map into the
/// tetrablock, x = (theta11, theta22, det theta).
struct Interpolant {
  Mat2Function theta;
  TetraMap x;
  MatX colligation;  ///< the matrix whose transfer function is theta
};

/// Realize an interpolant from a verified certificate: factor gamma from N
/// and V from M, form the column correspondence
///   (1, z_k gamma_jk, lambda_j V_jk)  ->  (psi(z_k, x_j), gamma_jk, V_jk),
/// complete it to a contraction (least-squares completion; unitary dilation
/// when unitary_extension is set and the Gramians match), and read the
/// interpolant off the completion's transfer function.
/// Throws InvalidProblem when the certificate fails verification,
/// GramianViolation when no contractive completion exists within tolerance,
/// and NodeMismatch when the realized map misses a target by more than
/// 1e-6.
Interpolant procedure_sw(const KernelCertificate& cert,
                         const Tolerance& tol = {},
                         bool unitary_extension = false);

/// Outcome of the end-to-end solver.
struct SolveResult {
  std::optional<Interpolant> interpolant;
  std::optional<KernelCertificate> certificate;
  /// Restart indices examined (successful index + 1, or the full budget).
  int restarts_used = 0;
};

/// Search for a certificate and realize it.  A certificate whose completion
/// fails the contraction guard is discarded and the search resumed at the
/// next restart index, so a run is still deterministic.  An empty result is
/// not an error.
SolveResult solve(const InterpolationProblem& problem,
                  const std::vector<cxd>& z_points,
                  const SearchConfig& config = {}, const Tolerance& tol = {},
                  bool unitary_extension = false);

/// Numerical health check of a realized interpolant.
struct VerificationReport {
  /// Largest componentwise target miss per node.
  std::vector<double> node_residuals;
  /// Sup over an interior grid of the tetrablock membership residual of
  /// x(lambda) (<= 0 means inside).
  double sup_membership_residual = 0.0;
  /// Sup over the same grid of ||theta(lambda)|| - 1.
  double sup_norm_excess = 0.0;
  /// Max over a near-boundary circle of |1 - |x3(lambda)||; near zero for
  /// inner theta, informational otherwise.
  double boundary_x3_gap = 0.0;
};

/// Evaluate the report on grid_size angles per circle (interior radii up to
/// 0.97 plus a near-boundary circle).
VerificationReport verify_interpolant(const Interpolant& interpolant,
                                      const InterpolationProblem& problem,
                                      int grid_size = 256);

/// Reduce structured-singular-value interpolation data (2x2 matrices W_j
/// to hit at the nodes) to tetrablock interpolation: targets are
/// (w11, w22, det W).  Structural validation only (matching nonempty
/// lists, distinct nodes in the open disc); target membership is checked
/// by the solver.  Throws DegenerateTarget (via the target map) and
/// InvalidProblem.
InterpolationProblem reduce_mu_problem(const std::vector<cxd>& nodes,
                                       const std::vector<Mat2>& values,
                                       const Tolerance& tol = {});

/// Check of a candidate matrix interpolant against mu-synthesis data.
struct MatrixInterpolantReport {
  std::vector<double> node_residuals;  ///< entrywise miss of W_j per node
  double sup_mu = 0.0;                 ///< grid sup of mu_diag(f(lambda))
  bool nodes_ok = false;               ///< all misses <= 1e-6
  bool mu_ok = false;                  ///< sup_mu <= 1 + 1e-6
};

MatrixInterpolantReport verify_matrix_interpolant(
    const Mat2Function& f, const std::vector<cxd>& nodes,
    const std::vector<Mat2>& values, int grid_size = 256,
    const Tolerance& tol = {});

}  // namespace saltire
