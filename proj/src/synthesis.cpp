#include "saltire/synthesis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <utility>

namespace saltire {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNodeTol = 1e-6;      // hard bound on realized target miss
constexpr double kSigmaSlack = 1e-6;   // completion norm slack
constexpr double kMuSlack = 1e-6;      // mu level slack in verification
constexpr double kBoundaryShrink = 1e-3;

/// Interior radii for sup-style verification grids.
const double kVerifyRadii[] = {0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 0.97};

double target_miss(const TetraPoint& got, const TetraPoint& want) {
  return std::max({std::abs(got.x1 - want.x1), std::abs(got.x2 - want.x2),
                   std::abs(got.x3 - want.x3)});
}

}  // namespace

Interpolant procedure_sw(const KernelCertificate& cert, const Tolerance& tol,
                         bool unitary_extension) {
  const CertificateReport report = verify_certificate(cert, tol);
  if (!report.verdict)
    throw InvalidProblem("certificate fails verification; cannot realize");

  const std::size_t j_count = cert.nodes.size();
  const std::size_t k_count = cert.z_points.size();
  const std::size_t dim = j_count * k_count;

  const VecX gamma = rank1_factor(cert.n, Gauge::kFirstNonzero);
  const MatX v = psd_factor(cert.m);
  const Eigen::Index m_rank = v.rows();

  MatX domain(2 + m_rank, dim);
  MatX range(2 + m_rank, dim);
  for (std::size_t j = 0; j < j_count; ++j)
    for (std::size_t k = 0; k < k_count; ++k) {
      const Eigen::Index col = static_cast<Eigen::Index>(j * k_count + k);
      domain(0, col) = cxd(1.0);
      domain(1, col) = cert.z_points[k] * gamma(col);
      range(0, col) = psi(cert.z_points[k], cert.targets[j]);
      range(1, col) = gamma(col);
      if (m_rank > 0) {
        domain.col(col).tail(m_rank) = cert.nodes[j] * v.col(col);
        range.col(col).tail(m_rank) = v.col(col);
      }
    }

  MatX l;
  if (unitary_extension) {
    l = unitary_completion(domain, range);
  } else {
    double sigma = 0.0;
    l = least_squares_completion(domain, range, &sigma);
    if (sigma > 1.0 + kSigmaSlack)
      throw GramianViolation("completion norm exceeds the contraction bound");
    if (sigma > 1.0) l /= sigma;
  }

  Interpolant result;
  result.colligation = l;
  result.theta = realized_function(std::move(l));
  result.x = ls_tetra(result.theta);
  for (std::size_t j = 0; j < j_count; ++j)
    if (target_miss(result.x(cert.nodes[j]), cert.targets[j]) > kNodeTol)
      throw NodeMismatch("realized map misses an interpolation target");
  return result;
}

SolveResult solve(const InterpolationProblem& problem,
                  const std::vector<cxd>& z_points,
                  const SearchConfig& config, const Tolerance& tol,
                  bool unitary_extension) {
  SolveResult result;
  result.restarts_used = config.max_restarts;
  int start = 0;
  while (start < config.max_restarts) {
    int found = -1;
    auto cert = search_certificate(problem, z_points, config, tol, start,
                                   &found);
    if (!cert) break;
    try {
      Interpolant interpolant =
          procedure_sw(*cert, tol, unitary_extension);
      result.interpolant = std::move(interpolant);
      result.certificate = std::move(cert);
      result.restarts_used = found + 1;
      return result;
    } catch (const GramianViolation&) {
      // The certificate admits no contractive completion at tolerance;
      // resume the scan just past it.
      start = found + 1;
    } catch (const NodeMismatch&) {
      start = found + 1;
    }
  }
  return result;
}

VerificationReport verify_interpolant(const Interpolant& interpolant,
                                      const InterpolationProblem& problem,
                                      int grid_size) {
  VerificationReport report;
  for (std::size_t j = 0; j < problem.nodes.size(); ++j)
    report.node_residuals.push_back(target_miss(
        interpolant.x(problem.nodes[j]), problem.targets[j]));

  const int angles =
      std::max(1, grid_size / static_cast<int>(std::size(kVerifyRadii)));
  double membership = -std::numeric_limits<double>::infinity();
  double norm_excess = -std::numeric_limits<double>::infinity();
  for (double radius : kVerifyRadii)
    for (int k = 0; k < angles; ++k) {
      const cxd lambda = std::polar(radius, 2.0 * kPi * k / angles);
      membership = std::max(
          membership, tetra_membership_residual(interpolant.x(lambda)));
      const Mat2 value = interpolant.theta(lambda);
      norm_excess = std::max(
          norm_excess,
          Eigen::JacobiSVD<Mat2>(value).singularValues()(0) - 1.0);
    }
  report.sup_membership_residual = membership;
  report.sup_norm_excess = norm_excess;

  double x3_gap = 0.0;
  const int g = std::max(grid_size, 1);
  for (int k = 0; k < g; ++k) {
    const cxd lambda = std::polar(1.0 - kBoundaryShrink, 2.0 * kPi * k / g);
    x3_gap = std::max(x3_gap,
                      std::abs(1.0 - std::abs(interpolant.x.x3(lambda))));
  }
  report.boundary_x3_gap = x3_gap;
  return report;
}

InterpolationProblem reduce_mu_problem(const std::vector<cxd>& nodes,
                                       const std::vector<Mat2>& values,
                                       const Tolerance& tol) {
  if (nodes.empty()) throw InvalidProblem("no interpolation nodes");
  if (values.size() != nodes.size())
    throw InvalidProblem("node and value counts differ");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(std::abs(nodes[i]) < 1.0))
      throw InvalidProblem("node outside the open unit disc");
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (std::abs(nodes[i] - nodes[j]) < 1e-12)
        throw InvalidProblem("coincident interpolation nodes");
  }
  InterpolationProblem problem;
  problem.nodes = nodes;
  for (const Mat2& w : values)
    problem.targets.push_back(tetra_targets(w, tol));
  return problem;
}

MatrixInterpolantReport verify_matrix_interpolant(
    const Mat2Function& f, const std::vector<cxd>& nodes,
    const std::vector<Mat2>& values, int grid_size, const Tolerance& tol) {
  if (values.size() != nodes.size())
    throw ShapeMismatch("node and value counts differ");
  MatrixInterpolantReport report;
  report.nodes_ok = true;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const Mat2 miss = f(nodes[j]) - values[j];
    const double gap = miss.cwiseAbs().maxCoeff();
    report.node_residuals.push_back(gap);
    if (gap > kNodeTol) report.nodes_ok = false;
  }

  const int angles =
      std::max(1, grid_size / static_cast<int>(std::size(kVerifyRadii)));
  double sup_mu = 0.0;
  for (double radius : kVerifyRadii)
    for (int k = 0; k < angles; ++k) {
      const cxd lambda = std::polar(radius, 2.0 * kPi * k / angles);
      sup_mu = std::max(sup_mu, mu_diag(f(lambda), tol));
    }
  report.sup_mu = sup_mu;
  report.mu_ok = sup_mu <= 1.0 + kMuSlack;
  return report;
}

}  // namespace saltire
