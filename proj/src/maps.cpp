#include "saltire/maps.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace saltire {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSchurSlack = 1e-6;      // boundary Schur bound slack
constexpr double kSigmaSlack = 1e-6;      // completion norm slack
constexpr double kBoundaryShrink = 1e-3;  // sampling radius 1 - shrink
constexpr double kDegenerateRel = 1e-10;  // z-independence detection

/// Off-diagonal lift [[d11, phi], [psi, d22]] with phi psi = r: phi takes
/// the inner part of r and half of the outer part, psi the other half, so
/// psi is zero-free in the disc.
Mat2Function lift_with_offdiag(Evaluable d11, Evaluable d22,
                               const RationalFunction& r) {
  auto factors = inner_outer_factorize(r);
  OuterFunction half = outer_sqrt(factors.second);
  return {std::move(d11), Evaluable(std::move(factors.first)) * Evaluable(half),
          Evaluable(half), std::move(d22)};
}

}  // namespace

cxd MobiusPencil::operator()(cxd z, cxd lambda) const {
  const cxd den = c(lambda) * z + d(lambda);
  if (std::abs(den) < 1e-14)
    throw ZeroDenominator("Moebius pencil denominator vanishes");
  return (a(lambda) * z + b(lambda)) / den;
}

MobiusPencil negate(const MobiusPencil& pencil) {
  return {-pencil.a, -pencil.b, pencil.c, pencil.d};
}

Mat2Function ln_gamma(const RationalFunction& s, const RationalFunction& p,
                      const Tolerance& tol) {
  const RationalFunction r = cxd(0.25) * (s * s) - p;
  const Evaluable half_s(cxd(0.5) * s);
  Mat2Function f = r.num_degree() < 0
                       ? diag_mat2(half_s, half_s)
                       : lift_with_offdiag(half_s, half_s, r);
  if (sup_operator_norm(f, std::max(tol.boundary_grid_size, 64),
                        kBoundaryShrink) > 1.0 + kSchurSlack)
    throw NotInGamma(
        "lift exceeds the Schur bound; the input leaves the symmetrised "
        "bidisc");
  return f;
}

Mat2Function ln_tetra(const RationalFunction& x1, const RationalFunction& x2,
                      const RationalFunction& x3, const Tolerance& tol) {
  const RationalFunction r = x1 * x2 - x3;
  Mat2Function f = r.num_degree() < 0
                       ? diag_mat2(Evaluable(x1), Evaluable(x2))
                       : lift_with_offdiag(Evaluable(x1), Evaluable(x2), r);
  if (sup_operator_norm(f, std::max(tol.boundary_grid_size, 64),
                        kBoundaryShrink) > 1.0 + kSchurSlack)
    throw NotInTetrablock(
        "lift exceeds the Schur bound; the input leaves the tetrablock");
  return f;
}

GammaMap ls_gamma(const Mat2Function& f) {
  return {f.e11 + f.e22, f.e11 * f.e22 - f.e12 * f.e21};
}

TetraMap ls_tetra(const Mat2Function& f) {
  return {f.e11, f.e22, f.e11 * f.e22 - f.e12 * f.e21, false};
}

MobiusPencil le_gamma(const GammaMap& h) {
  const Evaluable minus_half(cxd(-0.5));
  return {h.p, minus_half * h.s, minus_half * h.s, Evaluable(cxd(1.0))};
}

MobiusPencil le_tetra(const TetraMap& x) {
  return {-x.x3, x.x1, -x.x2, Evaluable(cxd(1.0))};
}

MobiusPencil se_map(const Mat2Function& f) {
  return {f.e11 * f.e22 - f.e12 * f.e21, -f.e11, -f.e22,
          Evaluable(cxd(1.0))};
}

GammaMap lw_gamma(const MobiusPencil& pencil) {
  return {Evaluable(cxd(-2.0)) * (pencil.b / pencil.d),
          pencil.a / pencil.d};
}

TetraMap lw_tetra(const MobiusPencil& pencil, const Tolerance& tol) {
  // The pencil is independent of z exactly when ad - bc vanishes
  // identically; sample on an interior circle.
  const int g = std::max(tol.boundary_grid_size, 8);
  double worst = 0.0;
  double scale = 1.0;
  for (int k = 0; k < g; ++k) {
    const cxd lambda = std::polar(1.0 - kBoundaryShrink, 2.0 * kPi * k / g);
    const cxd av = pencil.a(lambda);
    const cxd bv = pencil.b(lambda);
    const cxd cv = pencil.c(lambda);
    const cxd dv = pencil.d(lambda);
    worst = std::max(worst, std::abs(av * dv - bv * cv));
    scale = std::max({scale, std::abs(av), std::abs(bv), std::abs(cv),
                      std::abs(dv)});
  }
  if (worst <= kDegenerateRel * scale * scale)
    return {pencil.b / pencil.d, Evaluable(cxd(0.0)), Evaluable(cxd(0.0)),
            true};
  return {pencil.b / pencil.d, -(pencil.c / pencil.d),
          -(pencil.a / pencil.d), false};
}

KernelPair ue_map(const Mat2Function& f, const std::vector<cxd>& nodes,
                  const std::vector<cxd>& z_points) {
  return kernel_pair_from_function(f, nodes, z_points);
}

Mat2Function procedure_uw(const KernelPair& pair,
                          const std::vector<cxd>& nodes,
                          const std::vector<cxd>& z_points,
                          const Tolerance& tol) {
  const std::size_t j_count = nodes.size();
  const std::size_t k_count = z_points.size();
  const std::size_t dim = j_count * k_count;
  if (dim == 0) throw ShapeMismatch("kernel pair needs nodes and disc samples");
  if (pair.n.rows() != static_cast<Eigen::Index>(dim) ||
      pair.n.cols() != static_cast<Eigen::Index>(dim) ||
      pair.m.rows() != static_cast<Eigen::Index>(dim) ||
      pair.m.cols() != static_cast<Eigen::Index>(dim))
    throw ShapeMismatch("kernel matrices must be square of size J*K");

  if (min_eigenvalue(pair.n) < -tol.eps_psd ||
      min_eigenvalue(pair.m) < -tol.eps_psd)
    throw GramianViolation("kernel pair is not positive semidefinite");
  if (rank1_ratio(pair.n) >= tol.eps_rank)
    throw RankTolerance("kernel N is not of rank one");

  const MatX q = q_kernel(z_points, j_count);
  const MatX p = p_kernel(nodes, k_count);
  const MatX slack = MatX::Ones(dim, dim) - q.cwiseProduct(pair.n) -
                     p.cwiseProduct(pair.m);
  if (min_eigenvalue(slack) < -tol.eps_psd)
    throw GramianViolation("slack kernel is indefinite");
  if (rank1_ratio(slack) >= tol.eps_rank)
    throw RankTolerance("slack kernel is not of rank one");

  const VecX f = rank1_factor(pair.n, Gauge::kMaxModulus);
  const VecX g = rank1_factor(slack, Gauge::kMaxModulus);
  const MatX v = psd_factor(pair.m);
  const Eigen::Index m_rank = v.rows();

  MatX domain(2 + m_rank, dim);
  MatX range(2 + m_rank, dim);
  for (std::size_t j = 0; j < j_count; ++j)
    for (std::size_t k = 0; k < k_count; ++k) {
      const Eigen::Index col = static_cast<Eigen::Index>(j * k_count + k);
      domain(0, col) = cxd(1.0);
      domain(1, col) = z_points[k] * f(col);
      range(0, col) = g(col);
      range(1, col) = f(col);
      if (m_rank > 0) {
        domain.col(col).tail(m_rank) = nodes[j] * v.col(col);
        range.col(col).tail(m_rank) = v.col(col);
      }
    }

  double sigma = 0.0;
  MatX l = least_squares_completion(domain, range, &sigma);
  if (sigma > 1.0 + kSigmaSlack)
    throw GramianViolation("completion norm exceeds the contraction bound");
  if (sigma > 1.0) l /= sigma;
  return realized_function(std::move(l));
}

}  // namespace saltire
