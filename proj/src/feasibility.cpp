#include "saltire/feasibility.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace saltire {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBoundSlack = 1e-9;   // slack on the informational bounds
constexpr double kMPsdFloor = 1e-13;   // M eigenvalue floor at acceptance

MatX hermitize(const MatX& a) { return 0.5 * (a + a.adjoint()); }

/// Uniform double in [0, 1) built directly from generator words so results
/// do not depend on the standard library's distribution internals.
double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t flat(std::size_t j, std::size_t k, std::size_t z_count) {
  return j * z_count + k;
}

/// Fixed interior samples used to rebuild forward certificates on data the
/// original construction never saw.
const cxd kSecondSamples[] = {cxd(0.25, 0.0),   cxd(-0.35, 0.2),
                              cxd(0.15, -0.45), cxd(0.55, 0.0),
                              cxd(-0.1, 0.5),   cxd(0.4, 0.3),
                              cxd(-0.45, -0.15)};

}  // namespace

void validate_problem(const InterpolationProblem& problem,
                      const Tolerance& tol) {
  const std::size_t n = problem.nodes.size();
  if (n == 0) throw InvalidProblem("no interpolation nodes");
  if (problem.targets.size() != n)
    throw InvalidProblem("node and target counts differ");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(problem.nodes[i]) < 1.0))
      throw InvalidProblem("node outside the open unit disc");
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(problem.nodes[i] - problem.nodes[j]) < 1e-12)
        throw InvalidProblem("coincident interpolation nodes");
    if (!in_closed_tetrablock(problem.targets[i], tol))
      throw InvalidProblem("target outside the closed tetrablock");
  }
}

MatX lhs_kernel(const std::vector<cxd>& z_points,
                const std::vector<TetraPoint>& targets) {
  const std::size_t j_count = targets.size();
  const std::size_t k_count = z_points.size();
  const std::size_t dim = j_count * k_count;
  VecX values(static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < j_count; ++j)
    for (std::size_t k = 0; k < k_count; ++k)
      values(static_cast<Eigen::Index>(flat(j, k, k_count))) =
          psi(z_points[k], targets[j]);
  MatX lhs(dim, dim);
  for (Eigen::Index a = 0; a < lhs.rows(); ++a)
    for (Eigen::Index b = 0; b < lhs.cols(); ++b)
      lhs(a, b) = cxd(1.0) - std::conj(values(a)) * values(b);
  return lhs;
}

MatX q_kernel(const std::vector<cxd>& z_points, std::size_t node_count) {
  const std::size_t k_count = z_points.size();
  const std::size_t dim = node_count * k_count;
  MatX q(dim, dim);
  for (std::size_t i = 0; i < node_count; ++i)
    for (std::size_t l = 0; l < k_count; ++l)
      for (std::size_t j = 0; j < node_count; ++j)
        for (std::size_t k = 0; k < k_count; ++k)
          q(static_cast<Eigen::Index>(flat(i, l, k_count)),
            static_cast<Eigen::Index>(flat(j, k, k_count))) =
              cxd(1.0) - std::conj(z_points[l]) * z_points[k];
  return q;
}

MatX p_kernel(const std::vector<cxd>& nodes, std::size_t z_count) {
  const std::size_t j_count = nodes.size();
  const std::size_t dim = j_count * z_count;
  MatX p(dim, dim);
  for (std::size_t i = 0; i < j_count; ++i)
    for (std::size_t l = 0; l < z_count; ++l)
      for (std::size_t j = 0; j < j_count; ++j)
        for (std::size_t k = 0; k < z_count; ++k)
          p(static_cast<Eigen::Index>(flat(i, l, z_count)),
            static_cast<Eigen::Index>(flat(j, k, z_count))) =
              cxd(1.0) - std::conj(nodes[i]) * nodes[j];
  return p;
}

double min_eigenvalue(const MatX& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatX> solver(hermitize(a),
                                             Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double rank1_ratio(const MatX& a) {
  if (a.rows() < 2) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatX> solver(hermitize(a),
                                             Eigen::EigenvaluesOnly);
  const Eigen::VectorXd eigs = solver.eigenvalues();
  const double top = eigs(eigs.size() - 1);
  if (top <= 0.0) return 0.0;
  return std::max(eigs(eigs.size() - 2), 0.0) / top;
}

MatX psd_project(const MatX& a) {
  if (a.rows() == 0) return a;
  Eigen::SelfAdjointEigenSolver<MatX> solver(hermitize(a));
  const Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * clipped.asDiagonal() *
         solver.eigenvectors().adjoint();
}

MatX rank1_project(const MatX& a) {
  if (a.rows() == 0) return a;
  Eigen::SelfAdjointEigenSolver<MatX> solver(hermitize(a));
  const Eigen::Index last = solver.eigenvalues().size() - 1;
  const double top = solver.eigenvalues()(last);
  if (top <= 0.0) return MatX::Zero(a.rows(), a.cols());
  const VecX v = solver.eigenvectors().col(last);
  return top * v * v.adjoint();
}

MatX psd_factor(const MatX& a, double rel_cut) {
  Eigen::SelfAdjointEigenSolver<MatX> solver(hermitize(a));
  const Eigen::VectorXd eigs = solver.eigenvalues();
  const Eigen::Index dim = eigs.size();
  const double top = dim > 0 ? eigs(dim - 1) : 0.0;
  if (top <= 0.0) return MatX::Zero(0, a.cols());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = dim - 1; i >= 0; --i)
    if (eigs(i) > rel_cut * top) keep.push_back(i);
  MatX factor(static_cast<Eigen::Index>(keep.size()), dim);
  for (std::size_t r = 0; r < keep.size(); ++r)
    factor.row(static_cast<Eigen::Index>(r)) =
        std::sqrt(eigs(keep[r])) * solver.eigenvectors().col(keep[r]).adjoint();
  return factor;
}

VecX rank1_factor(const MatX& a, Gauge gauge) {
  if (a.rows() == 0) return VecX();
  Eigen::SelfAdjointEigenSolver<MatX> solver(hermitize(a));
  const Eigen::Index last = solver.eigenvalues().size() - 1;
  const double top = solver.eigenvalues()(last);
  if (top <= 0.0) return VecX::Zero(a.rows());
  VecX f = std::sqrt(top) * solver.eigenvectors().col(last).conjugate();
  const double max_mod = f.cwiseAbs().maxCoeff();
  if (max_mod == 0.0) return f;
  Eigen::Index pick = -1;
  if (gauge == Gauge::kMaxModulus) {
    for (Eigen::Index i = 0; i < f.size(); ++i)
      if (pick < 0 || std::abs(f(i)) > std::abs(f(pick))) pick = i;
  } else {
    for (Eigen::Index i = 0; i < f.size() && pick < 0; ++i)
      if (std::abs(f(i)) > 1e-12 * max_mod) pick = i;
  }
  if (pick >= 0 && std::abs(f(pick)) > 0.0)
    f *= std::conj(f(pick)) / std::abs(f(pick));
  return f;
}

KernelPair kernel_pair_from_function(const Mat2Function& f,
                                     const std::vector<cxd>& nodes,
                                     const std::vector<cxd>& z_points) {
  const std::size_t j_count = nodes.size();
  const std::size_t k_count = z_points.size();
  if (j_count == 0 || k_count == 0)
    throw ShapeMismatch("kernel pair needs nodes and disc samples");
  const std::size_t dim = j_count * k_count;

  std::vector<Mat2> at_node(j_count);
  for (std::size_t j = 0; j < j_count; ++j) at_node[j] = f(nodes[j]);

  VecX gamma(static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < j_count; ++j)
    for (std::size_t k = 0; k < k_count; ++k) {
      const cxd den = cxd(1.0) - at_node[j](1, 1) * z_points[k];
      if (std::abs(den) < 1e-14)
        throw PoleError("gamma coefficient undefined at a disc sample");
      gamma(static_cast<Eigen::Index>(flat(j, k, k_count))) =
          at_node[j](1, 0) / den;
    }

  KernelPair pair;
  pair.n = gamma.conjugate() * gamma.transpose();
  pair.m = MatX(dim, dim);
  for (std::size_t i = 0; i < j_count; ++i)
    for (std::size_t j = 0; j < j_count; ++j) {
      const Mat2 gram = Mat2::Identity() - at_node[i].adjoint() * at_node[j];
      const cxd szego = cxd(1.0) - std::conj(nodes[i]) * nodes[j];
      for (std::size_t l = 0; l < k_count; ++l)
        for (std::size_t k = 0; k < k_count; ++k) {
          Eigen::Vector2cd eta_il, eta_jk;
          eta_il << cxd(1.0),
              z_points[l] *
                  gamma(static_cast<Eigen::Index>(flat(i, l, k_count)));
          eta_jk << cxd(1.0),
              z_points[k] *
                  gamma(static_cast<Eigen::Index>(flat(j, k, k_count)));
          pair.m(static_cast<Eigen::Index>(flat(i, l, k_count)),
                 static_cast<Eigen::Index>(flat(j, k, k_count))) =
              (eta_il.adjoint() * gram * eta_jk)(0) / szego;
        }
    }
  return pair;
}

KernelCertificate certificate_from_interpolant(
    const Mat2Function& f, const InterpolationProblem& problem,
    const std::vector<cxd>& z_points, const Tolerance& tol) {
  validate_problem(problem, tol);
  if (z_points.empty()) throw InvalidProblem("no disc samples");
  const std::size_t j_count = problem.nodes.size();
  const std::size_t k_count = z_points.size();

  double f21_peak = 0.0;
  for (std::size_t j = 0; j < j_count; ++j) {
    const Mat2 w = f(problem.nodes[j]);
    f21_peak = std::max(f21_peak, std::abs(w(1, 0)));
    const TetraPoint& x = problem.targets[j];
    const cxd triple[3] = {w(0, 0), w(1, 1), w.determinant()};
    const cxd want[3] = {x.x1, x.x2, x.x3};
    for (int c = 0; c < 3; ++c)
      if (std::abs(triple[c] - want[c]) >
          tol.eps_eq * std::max(1.0, std::abs(want[c])))
        throw InterpolantMismatch(
            "function value at a node misses the target triple");
  }
  if (f21_peak < 1e-13) throw DegenerateF21("f21 vanishes at every node");

  const KernelPair pair = kernel_pair_from_function(f, problem.nodes, z_points);

  KernelCertificate cert;
  cert.nodes = problem.nodes;
  cert.targets = problem.targets;
  cert.z_points = z_points;
  cert.n = pair.n;
  cert.m = pair.m;
  cert.provenance = Provenance::kForwardConstructed;

  const MatX lhs = lhs_kernel(z_points, problem.targets);
  const MatX q = q_kernel(z_points, j_count);
  const MatX p = p_kernel(problem.nodes, k_count);
  cert.production_residual =
      (lhs - q.cwiseProduct(cert.n) - p.cwiseProduct(cert.m)).norm();
  return cert;
}

CertificateReport verify_certificate(const KernelCertificate& cert,
                                     const Tolerance& tol,
                                     const Mat2Function* source) {
  const std::size_t j_count = cert.nodes.size();
  const std::size_t k_count = cert.z_points.size();
  const std::size_t dim = j_count * k_count;
  if (j_count == 0 || k_count == 0 || cert.targets.size() != j_count)
    throw ShapeMismatch("certificate node/target/sample lists inconsistent");
  if (cert.n.rows() != static_cast<Eigen::Index>(dim) ||
      cert.n.cols() != static_cast<Eigen::Index>(dim) ||
      cert.m.rows() != static_cast<Eigen::Index>(dim) ||
      cert.m.cols() != static_cast<Eigen::Index>(dim))
    throw ShapeMismatch("certificate matrices must be square of size J*K");

  CertificateReport report;
  report.second_triple_gap = std::numeric_limits<double>::quiet_NaN();

  const MatX n = hermitize(cert.n);
  const MatX m = hermitize(cert.m);
  report.n_min_eig = min_eigenvalue(n);
  report.m_min_eig = min_eigenvalue(m);
  report.n_rank_ratio = rank1_ratio(n);

  const MatX lhs = lhs_kernel(cert.z_points, cert.targets);
  const MatX q = q_kernel(cert.z_points, j_count);
  const MatX p = p_kernel(cert.nodes, k_count);
  const MatX slab = lhs - q.cwiseProduct(n) - p.cwiseProduct(m);
  report.slab_min_eig = min_eigenvalue(slab);

  report.verdict = report.n_min_eig >= -tol.eps_psd &&
                   report.m_min_eig >= -tol.eps_psd &&
                   report.slab_min_eig >= -tol.eps_psd &&
                   report.n_rank_ratio < tol.eps_rank;
  report.monotone_family =
      report.verdict && min_eigenvalue(lhs) >= -tol.eps_psd;

  for (std::size_t i = 0; i < j_count; ++i)
    for (std::size_t j = 0; j < j_count; ++j) {
      const double gap_i = 1.0 - std::abs(cert.targets[i].x2);
      const double gap_j = 1.0 - std::abs(cert.targets[j].x2);
      if (gap_i <= 0.0 || gap_j <= 0.0) continue;  // bounds are vacuous
      const double n_cap = 1.0 / (gap_i * gap_j) + kBoundSlack;
      const double m_scale = std::sqrt(1.0 + 1.0 / (gap_i * gap_i)) *
                             std::sqrt(1.0 + 1.0 / (gap_j * gap_j));
      const double szego =
          std::abs(cxd(1.0) - std::conj(cert.nodes[i]) * cert.nodes[j]);
      const double m_cap = 2.0 / szego * m_scale + kBoundSlack;
      for (std::size_t l = 0; l < k_count; ++l)
        for (std::size_t k = 0; k < k_count; ++k) {
          const Eigen::Index a = static_cast<Eigen::Index>(flat(i, l, k_count));
          const Eigen::Index b = static_cast<Eigen::Index>(flat(j, k, k_count));
          if (std::abs(n(a, b)) > n_cap) report.n_bound_ok = false;
          if (std::abs(m(a, b)) > m_cap) report.m_bound_ok = false;
        }
    }

  if (source != nullptr) {
    std::vector<cxd> resample(k_count);
    for (std::size_t k = 0; k < k_count; ++k)
      resample[k] = kSecondSamples[k % (sizeof(kSecondSamples) /
                                        sizeof(kSecondSamples[0]))];
    const KernelCertificate rebuilt = certificate_from_interpolant(
        *source, {cert.nodes, cert.targets}, resample, tol);
    report.second_triple_gap = rebuilt.production_residual;
  }
  return report;
}

namespace {

VecX initial_gamma(int restart, const InterpolationProblem& problem,
                   const std::vector<cxd>& z_points, const MatX& lhs,
                   std::uint64_t seed) {
  const std::size_t j_count = problem.nodes.size();
  const std::size_t k_count = z_points.size();
  const std::size_t dim = j_count * k_count;
  VecX gamma(static_cast<Eigen::Index>(dim));
  if (restart == 0) {
    // Deterministic start: the leading eigenvector of LHS scaled to its
    // eigenvalue, the best rank-one proxy for the full kernel.
    Eigen::SelfAdjointEigenSolver<MatX> solver(hermitize(lhs));
    const Eigen::Index last = solver.eigenvalues().size() - 1;
    const double top = std::max(solver.eigenvalues()(last), 0.0);
    gamma = std::sqrt(top) * solver.eigenvectors().col(last).conjugate();
    return gamma;
  }
  // Structured random start: per node, a coefficient of modulus within the
  // Schur-feasible cap, spread over the disc samples with the Cauchy-type
  // profile 1/(1 - x2 z) that the coefficients of an actual interpolant
  // would have.
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL *
                                 static_cast<std::uint64_t>(restart));
  for (std::size_t j = 0; j < j_count; ++j) {
    const TetraPoint& x = problem.targets[j];
    const double cap = std::sqrt(
        std::max((1.0 - std::norm(x.x1)) * (1.0 - std::norm(x.x2)), 1e-4));
    const double mag = 0.15 + 0.84 * canonical(rng);
    const double phase = 2.0 * kPi * canonical(rng);
    const cxd c = cap * mag * std::polar(1.0, phase);
    for (std::size_t k = 0; k < k_count; ++k)
      gamma(static_cast<Eigen::Index>(flat(j, k, k_count))) =
          c / (cxd(1.0) - x.x2 * z_points[k]);
  }
  return gamma;
}

}  // namespace

std::optional<KernelCertificate> search_certificate(
    const InterpolationProblem& problem, const std::vector<cxd>& z_points,
    const SearchConfig& config, const Tolerance& tol, int first_restart,
    int* found_restart) {
  if (config.max_restarts < 1 || config.max_sweeps < 1 ||
      config.stop_eig < 0.0 || !(config.slack_weight > 0.0) ||
      first_restart < 0)
    throw InvalidConfig("nonsensical search configuration");
  validate_problem(problem, tol);
  if (z_points.empty()) throw InvalidProblem("no disc samples");
  for (const cxd& z : z_points)
    if (!(std::abs(z) < 1.0))
      throw InvalidProblem("disc sample outside the open unit disc");

  const std::size_t j_count = problem.nodes.size();
  const std::size_t k_count = z_points.size();

  const MatX lhs = lhs_kernel(z_points, problem.targets);
  const MatX q = q_kernel(z_points, j_count);
  const MatX p = p_kernel(problem.nodes, k_count);
  const MatX q_bar = q.conjugate();
  const MatX p_bar = p.conjugate();
  const MatX den =
      ((q.cwiseAbs2() + p.cwiseAbs2()).array() + config.slack_weight)
          .matrix()
          .cast<cxd>();

  for (int restart = first_restart; restart < config.max_restarts;
       ++restart) {
    const VecX gamma =
        initial_gamma(restart, problem, z_points, lhs, config.seed);
    MatX n = gamma.conjugate() * gamma.transpose();
    MatX m = psd_project((lhs - q.cwiseProduct(n)).cwiseQuotient(p));
    MatX s = psd_project(lhs - q.cwiseProduct(n) - p.cwiseProduct(m));

    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
      // Least-norm restoration of the affine identity
      //   Q o N + P o M + S = LHS
      // distributed over the three channels, then projection of each
      // channel onto its cone.
      const MatX r = lhs - q.cwiseProduct(n) - p.cwiseProduct(m) - s;
      n += q_bar.cwiseProduct(r).cwiseQuotient(den);
      m += p_bar.cwiseProduct(r).cwiseQuotient(den);
      s += config.slack_weight * r.cwiseQuotient(den);
      n = rank1_project(n);
      m = psd_project(m);
      s = psd_project(s);

      const double slab_min =
          min_eigenvalue(lhs - q.cwiseProduct(n) - p.cwiseProduct(m));
      if (slab_min >= -config.stop_eig && min_eigenvalue(m) >= -kMPsdFloor) {
        KernelCertificate cert;
        cert.nodes = problem.nodes;
        cert.targets = problem.targets;
        cert.z_points = z_points;
        cert.n = n;
        cert.m = m;
        cert.provenance = Provenance::kSearched;
        cert.production_residual = std::max(0.0, -slab_min);
        if (found_restart != nullptr) *found_restart = restart;
        return cert;
      }
    }
  }
  return std::nullopt;
}

}  // namespace saltire
