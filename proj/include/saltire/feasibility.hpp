#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "saltire/domains.hpp"
#include "saltire/realization.hpp"
#include "saltire/types.hpp"

namespace saltire {

/// Two-point interpolation data: distinct nodes in the open unit disc with
/// target points in the closed tetrablock.
struct InterpolationProblem {
  std::vector<cxd> nodes;
  std::vector<TetraPoint> targets;
};

/// Throws InvalidProblem when the node/target lists are empty or of
/// different lengths, a node lies outside the open disc, two nodes
/// coincide, or a target lies outside the closed tetrablock.
void validate_problem(const InterpolationProblem& problem,
                      const Tolerance& tol = {});

/// A positive-kernel pair on the product node set, flattened node-major:
/// index (j, k) -> j * K + k for node j and disc sample z_k.
struct KernelPair {
  MatX n;
  MatX m;
};

/// How a certificate came to exist.
enum class Provenance { kForwardConstructed, kSearched, kExternal };

/// Candidate kernel certificate for an interpolation problem: matrices
/// N, M on the flattened product of nodes and disc samples, claimed to
/// satisfy N, M >= 0, rank N <= 1 and the slab inequality
///   LHS - Q o N - P o M >= 0,
/// where LHS[il,jk] = 1 - conj(psi(z_l, x_i)) psi(z_k, x_j),
/// Q[il,jk] = 1 - conj(z_l) z_k and P[il,jk] = 1 - conj(lambda_i) lambda_j
/// (o is the entrywise product).
struct KernelCertificate {
  std::vector<cxd> nodes;
  std::vector<TetraPoint> targets;
  std::vector<cxd> z_points;
  MatX n;
  MatX m;
  Provenance provenance = Provenance::kExternal;
  /// What the producer measured: Frobenius equality gap for forward
  /// construction, slab eigenvalue violation magnitude for search results,
  /// zero for external data.
  double production_residual = 0.0;
};

/// LHS[iK+l, jK+k] = 1 - conj(psi(z_l, x_i)) psi(z_k, x_j).
MatX lhs_kernel(const std::vector<cxd>& z_points,
                const std::vector<TetraPoint>& targets);

/// Q[iK+l, jK+k] = 1 - conj(z_l) z_k (independent of the node indices).
MatX q_kernel(const std::vector<cxd>& z_points, std::size_t node_count);

/// P[iK+l, jK+k] = 1 - conj(lambda_i) lambda_j (independent of the z
/// indices).
MatX p_kernel(const std::vector<cxd>& nodes, std::size_t z_count);

/// Smallest eigenvalue of the hermitized input (0 for an empty matrix).
double min_eigenvalue(const MatX& a);

/// Ratio of the second-largest to the largest eigenvalue of the hermitized
/// input, clamped below at 0; zero when the matrix has at most one row or
/// no positive eigenvalue.  Small values certify numerical rank <= 1.
double rank1_ratio(const MatX& a);

/// Nearest positive semidefinite matrix: hermitize, then clip negative
/// eigenvalues at zero.
MatX psd_project(const MatX& a);

/// Nearest PSD matrix of rank at most one: hermitize, keep the leading
/// eigenpair, the zero matrix when the leading eigenvalue is <= 0.
MatX rank1_project(const MatX& a);

/// Factor a PSD matrix as a^* a = V^H V: rows of V are sqrt(eig) times the
/// conjugated eigenvectors, eigenvalues below rel_cut times the largest
/// dropped, largest first.  The row count is the numerical rank.
MatX psd_factor(const MatX& a, double rel_cut = 1e-10);

/// Phase normalisation applied to rank-one factors.
enum class Gauge {
  kMaxModulus,    ///< entry of largest modulus (first on ties) made positive
  kFirstNonzero,  ///< first entry above 1e-12 of the max made positive
};

/// Vector f with a = conj(f) f^T entrywise, i.e. a[r,c] = conj(f_r) f_c,
/// from the leading eigenpair of the hermitized input; the zero vector when
/// the leading eigenvalue is <= 0.  The unimodular gauge freedom is fixed
/// per the requested convention.
VecX rank1_factor(const MatX& a, Gauge gauge = Gauge::kMaxModulus);

/// Outcome of checking a certificate against its defining conditions.
struct CertificateReport {
  bool verdict = false;       ///< all PSD/rank conditions hold within tolerance
  double n_min_eig = 0.0;
  double m_min_eig = 0.0;
  double slab_min_eig = 0.0;  ///< min eig of LHS - Q o N - P o M
  double n_rank_ratio = 0.0;  ///< second/first eigenvalue of N
  /// Entrywise theory bounds, informational only:
  /// |N[il,jk]| <= 1/((1-|x2_i|)(1-|x2_j|)) and
  /// |M[il,jk]| <= 2/|1-conj(lambda_i) lambda_j| *
  ///               sqrt(1+1/(1-|x2_i|)^2) sqrt(1+1/(1-|x2_j|)^2).
  bool n_bound_ok = true;
  bool m_bound_ok = true;
  /// True when (tN, tM) stays a certificate for every t in [0,1]; holds
  /// whenever the verdict is true and LHS itself is PSD.
  bool monotone_family = false;
  /// For forward-constructed certificates with the source function at
  /// hand: the equality residual rebuilt on an independent set of disc
  /// samples.  NaN when not computed.
  double second_triple_gap;
};

/// Check shapes, positivity, the rank-one condition on N, and the slab
/// inequality.  Throws ShapeMismatch on inconsistent dimensions.  When
/// source is non-null the certificate is rebuilt from it on a second,
/// fixed set of disc samples and the equality gap reported.
CertificateReport verify_certificate(const KernelCertificate& cert,
                                     const Tolerance& tol = {},
                                     const Mat2Function* source = nullptr);

/// Kernel pair of a 2x2 Schur-class function on the given nodes and disc
/// samples, per the decomposition used by certificate_from_interpolant but
/// without target data: N = conj(gamma) gamma^T and the Szego-quotient M.
KernelPair kernel_pair_from_function(const Mat2Function& f,
                                     const std::vector<cxd>& nodes,
                                     const std::vector<cxd>& z_points);

/// Build the certificate of an interpolating function: with
/// gamma(lambda, z) = f21(lambda)/(1 - f22(lambda) z) and
/// eta = (1, z gamma)^T,
///   N[il,jk] = conj(gamma_il) gamma_jk,
///   M[il,jk] = eta_il^H (I - F(lambda_i)^H F(lambda_j)) eta_jk
///              / (1 - conj(lambda_i) lambda_j),
/// which satisfy the slab EQUALITY.  Throws InterpolantMismatch when the
/// diagonal/determinant triple of f at a node misses its target and
/// DegenerateF21 when f21 vanishes at every node.
KernelCertificate certificate_from_interpolant(
    const Mat2Function& f, const InterpolationProblem& problem,
    const std::vector<cxd>& z_points, const Tolerance& tol = {});

/// Knobs of the certificate search.  All randomness derives from seed;
/// restarts use independently derived generators, so a run is reproducible
/// bit for bit and restarting the scan at a later index replays the same
/// candidates.
struct SearchConfig {
  int max_restarts = 50;
  int max_sweeps = 400;        ///< alternating-projection sweeps per restart
  std::uint64_t seed = 12345;
  double slack_weight = 1.0;   ///< weight of the inequality slack channel
  double stop_eig = 1e-9;      ///< accept when min eig(slab) >= -stop_eig
};

/// Alternating-projection search for a certificate: project iterates onto
/// the affine slab identity and onto the cones (rank-one PSD for N, PSD for
/// M and the slack), restarting from structured random initial data.
/// Returns the first certificate found in restart-index order starting at
/// first_restart, or nullopt when max_restarts is exhausted (not an error).
/// Throws InvalidConfig for nonsensical knobs and InvalidProblem /
/// ShapeMismatch for bad inputs.  When found_restart is non-null it
/// receives the index of the successful restart.
std::optional<KernelCertificate> search_certificate(
    const InterpolationProblem& problem, const std::vector<cxd>& z_points,
    const SearchConfig& config = {}, const Tolerance& tol = {},
    int first_restart = 0, int* found_restart = nullptr);

}  // namespace saltire
