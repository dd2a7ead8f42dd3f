#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace saltire {

using cxd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

/// Numerical tolerances shared across the library.  Strict/closed set
/// distinctions are realised as margin parameters: floating point cannot
/// decide open conditions, so every predicate accepts a closed-set slack.
struct Tolerance {
  /// Slack for positive-semidefiniteness tests (eigenvalues >= -eps_psd).
  double eps_psd = 1e-9;
  /// Absolute threshold for equality / degeneracy tests (e.g. x1*x2 == x3).
  double eps_eq = 1e-12;
  /// Slack for membership predicates (|.| <= 1 + eps_member and the like).
  double eps_member = 1e-9;
  /// Eigenvalue-ratio threshold for numerical rank-one tests
  /// (second eigenvalue / first eigenvalue < eps_rank).
  double eps_rank = 1e-8;
  /// Number of samples used by boundary-grid suprema.
  int boundary_grid_size = 256;
};

/// Base class of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation hit (or came within eps of) a pole of a rational expression.
struct PoleError : Error {
  using Error::Error;
};
/// 2x2 target matrix has w11*w22 == det(w); the tetrablock data reduction
/// is undefined for such matrices.
struct DegenerateTarget : Error {
  using Error::Error;
};
/// 2x2 target matrix is a scalar multiple of the identity; the symmetrised
/// bidisc data reduction excludes these.
struct ScalarMatrix : Error {
  using Error::Error;
};
/// An iterative routine failed to bracket or reach its tolerance.
struct NonConvergence : Error {
  using Error::Error;
};
/// Inner-outer factorisation was asked for the zero function.
struct ZeroFunction : Error {
  using Error::Error;
};
/// A rational function tagged H-infinity has a pole in the closed unit disc.
struct PoleInDisc : Error {
  using Error::Error;
};
/// I - P22*X is numerically singular in a linear fractional transformation.
struct SingularPencil : Error {
  using Error::Error;
};
/// Range Gramian exceeds the domain Gramian: no contraction maps the given
/// domain vectors to the given range vectors.
struct GramianViolation : Error {
  using Error::Error;
};
/// A matrix required to be of numerical rank <= 1 has a second eigenvalue
/// above the configured ratio threshold.
struct RankTolerance : Error {
  using Error::Error;
};
/// Input map does not take values in the closed symmetrised bidisc.
struct NotInGamma : Error {
  using Error::Error;
};
/// Input map does not take values in the closed tetrablock.
struct NotInTetrablock : Error {
  using Error::Error;
};
/// A coefficient family fails the bidisc Schur-class bound.
struct NotSchurBidisc : Error {
  using Error::Error;
};
/// Denominator coefficient of a linear fractional family vanishes.
struct ZeroDenominator : Error {
  using Error::Error;
};
/// Matrix dimensions do not match the problem size.
struct ShapeMismatch : Error {
  using Error::Error;
};
/// Claimed interpolant does not reproduce the problem targets.
struct InterpolantMismatch : Error {
  using Error::Error;
};
/// F21 vanishes identically, so the kernel construction degenerates.
struct DegenerateF21 : Error {
  using Error::Error;
};
/// Search configuration violates its invariants.
struct InvalidConfig : Error {
  using Error::Error;
};
/// A synthesised function failed its node-interpolation postcondition.
struct NodeMismatch : Error {
  using Error::Error;
};
/// Interpolation problem data violates its invariants.
struct InvalidProblem : Error {
  using Error::Error;
};
/// Malformed input (JSON or otherwise).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace saltire
