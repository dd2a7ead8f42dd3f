#include "saltire/realization.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

namespace saltire {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPinvTrim = 1e-10;  // relative singular-value truncation

void require(bool ok, const char* what) {
  if (!ok) throw ShapeMismatch(what);
}

/// Moore-Penrose pseudoinverse with relative truncation of small singular
/// values.
MatX pinv(const MatX& a) {
  if (a.rows() == 0 || a.cols() == 0) return MatX::Zero(a.cols(), a.rows());
  Eigen::JacobiSVD<MatX> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma(0) <= 0.0)
    return MatX::Zero(a.cols(), a.rows());
  const double cut = kPinvTrim * sigma(0);
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > cut) ++r;
  return svd.matrixV().leftCols(r) *
         sigma.head(r).cwiseInverse().asDiagonal() *
         svd.matrixU().leftCols(r).adjoint();
}

double spectral_norm(const MatX& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return Eigen::JacobiSVD<MatX>(a).singularValues()(0);
}

}  // namespace

BlockOperator split_blocks(const MatX& m, Eigen::Index out1,
                           Eigen::Index in1) {
  require(out1 >= 0 && out1 <= m.rows() && in1 >= 0 && in1 <= m.cols(),
          "block split exceeds matrix dimensions");
  const Eigen::Index out2 = m.rows() - out1;
  const Eigen::Index in2 = m.cols() - in1;
  return {m.topLeftCorner(out1, in1), m.topRightCorner(out1, in2),
          m.bottomLeftCorner(out2, in1), m.bottomRightCorner(out2, in2)};
}

MatX assemble_blocks(const BlockOperator& p) {
  require(p.p11.rows() == p.p12.rows() && p.p21.rows() == p.p22.rows() &&
              p.p11.cols() == p.p21.cols() && p.p12.cols() == p.p22.cols(),
          "inconsistent block dimensions");
  MatX full(p.p11.rows() + p.p21.rows(), p.p11.cols() + p.p12.cols());
  full << p.p11, p.p12, p.p21, p.p22;
  return full;
}

MatX lft(const BlockOperator& p, const MatX& x) {
  require(p.p11.rows() == p.p12.rows() && p.p21.rows() == p.p22.rows() &&
              p.p11.cols() == p.p21.cols() && p.p12.cols() == p.p22.cols(),
          "inconsistent block dimensions");
  require(x.rows() == p.p22.cols() && x.cols() == p.p22.rows(),
          "lft argument has wrong shape");
  const Eigen::Index v = p.p22.rows();
  Eigen::FullPivLU<MatX> lu(MatX::Identity(v, v) - p.p22 * x);
  if (!lu.isInvertible())
    throw SingularPencil("singular pencil I - p22 x in lft");
  return p.p11 + p.p12 * x * lu.solve(p.p21);
}

cxd lft2(const Mat2& p, cxd z) {
  const cxd den = cxd(1.0) - p(1, 1) * z;
  if (std::abs(den) < 1e-14)
    throw SingularPencil("singular pencil 1 - p22 z in lft2");
  return p(0, 0) + p(0, 1) * z * p(1, 0) / den;
}

double network_identity_residual(const BlockOperator& p,
                                 const BlockOperator& q, const MatX& x,
                                 const MatX& y) {
  require(q.p11.rows() == p.p11.rows() && q.p11.cols() == p.p11.cols() &&
              q.p22.rows() == p.p22.rows() && q.p22.cols() == p.p22.cols(),
          "the two block operators must have matching block shapes");
  require(y.rows() == x.rows() && y.cols() == x.cols(),
          "the two lft arguments must have matching shapes");
  const Eigen::Index h = p.p11.cols();
  const Eigen::Index u = p.p12.cols();
  const Eigen::Index v = p.p21.rows();

  Eigen::FullPivLU<MatX> lu_p(MatX::Identity(v, v) - p.p22 * x);
  Eigen::FullPivLU<MatX> lu_q(MatX::Identity(v, v) - q.p22 * y);
  if (!lu_p.isInvertible() || !lu_q.isInvertible())
    throw SingularPencil("singular pencil in network identity");
  const MatX t_p = lu_p.solve(p.p21);  // v x h
  const MatX t_q = lu_q.solve(q.p21);  // v x h
  const MatX f_p = p.p11 + p.p12 * x * t_p;
  const MatX f_q = q.p11 + q.p12 * y * t_q;

  const MatX lhs = MatX::Identity(h, h) - f_q.adjoint() * f_p;
  const MatX term1 =
      t_q.adjoint() * (MatX::Identity(v, v) - y.adjoint() * x) * t_p;

  MatX row(h, h + u);
  row << MatX::Identity(h, h), t_q.adjoint() * y.adjoint();
  MatX col(h + u, h);
  col << MatX::Identity(h, h), x * t_p;
  const MatX mid = MatX::Identity(h + u, h + u) -
                   assemble_blocks(q).adjoint() * assemble_blocks(p);

  return (lhs - term1 - row * mid * col).norm();
}

Mat2 Mat2Function::operator()(cxd lambda) const {
  Mat2 out;
  out << e11(lambda), e12(lambda), e21(lambda), e22(lambda);
  return out;
}

Mat2Function constant_mat2(const Mat2& m) {
  return {Evaluable(m(0, 0)), Evaluable(m(0, 1)), Evaluable(m(1, 0)),
          Evaluable(m(1, 1))};
}

Mat2Function diag_mat2(Evaluable a, Evaluable d) {
  return {std::move(a), Evaluable(cxd(0.0)), Evaluable(cxd(0.0)),
          std::move(d)};
}

Mat2 state_space_eval(const MatX& l, cxd lambda) {
  require(l.rows() == l.cols() && l.rows() >= 2,
          "colligation matrix must be square of size >= 2");
  const Eigen::Index m = l.rows() - 2;
  const Mat2 a = l.topLeftCorner(2, 2);
  if (m == 0) return a;
  const MatX b = l.topRightCorner(2, m);
  const MatX c = l.bottomLeftCorner(m, 2);
  const MatX d = l.bottomRightCorner(m, m);
  Eigen::FullPivLU<MatX> lu(MatX::Identity(m, m) - lambda * d);
  if (!lu.isInvertible())
    throw SingularPencil("singular pencil I - lambda D in realization");
  return a + lambda * (b * lu.solve(c));
}

Mat2Function realized_function(MatX l) {
  require(l.rows() == l.cols() && l.rows() >= 2,
          "colligation matrix must be square of size >= 2");
  auto shared = std::make_shared<const MatX>(std::move(l));
  auto entry = [shared](int i, int j) {
    return Evaluable::from_function([shared, i, j](cxd lambda) {
      return state_space_eval(*shared, lambda)(i, j);
    });
  };
  return {entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
}

double sup_operator_norm(const Mat2Function& f, int grid_size,
                         double shrink) {
  const int g = std::max(grid_size, 1);
  const double r = 1.0 - shrink;
  double sup = 0.0;
  for (int k = 0; k < g; ++k) {
    const Mat2 value = f(std::polar(r, 2.0 * kPi * k / g));
    sup = std::max(sup, Eigen::JacobiSVD<Mat2>(value).singularValues()(0));
  }
  return sup;
}

MatX least_squares_completion(const MatX& u, const MatX& w,
                              double* sigma_max) {
  require(u.cols() == w.cols(),
          "domain and range must have the same number of columns");
  const MatX l = w * pinv(u);
  if (sigma_max != nullptr) *sigma_max = spectral_norm(l);
  return l;
}

MatX unitary_completion(const MatX& u, const MatX& w, double deficit_tol) {
  require(u.cols() == w.cols() && u.rows() == w.rows(),
          "unitary completion needs equal-shaped domain and range data");
  const Eigen::Index d = u.rows();
  const MatX gram_u = u.adjoint() * u;
  const MatX gram_w = w.adjoint() * w;
  const double deficit = spectral_norm(gram_u - gram_w);
  if (deficit > deficit_tol * std::max(1.0, spectral_norm(gram_u)))
    throw GramianViolation(
        "Gramian mismatch exceeds tolerance in unitary completion");

  const MatX base = least_squares_completion(u, w);

  // Orthonormal bases of the range complements, in SVD order so the
  // completion is canonical.
  Eigen::JacobiSVD<MatX> svd_u(u, Eigen::ComputeFullU);
  Eigen::JacobiSVD<MatX> svd_w(w, Eigen::ComputeFullU);
  const auto rank_of = [](const Eigen::JacobiSVD<MatX>& svd) {
    const Eigen::VectorXd sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) <= 0.0) return Eigen::Index(0);
    Eigen::Index r = 0;
    while (r < sigma.size() && sigma(r) > kPinvTrim * sigma(0)) ++r;
    return r;
  };
  const Eigen::Index ru = rank_of(svd_u);
  const Eigen::Index rw = rank_of(svd_w);
  if (ru != rw)
    throw GramianViolation(
        "domain and range ranks differ in unitary completion");

  const MatX comp_u = svd_u.matrixU().rightCols(d - ru);
  const MatX comp_w = svd_w.matrixU().rightCols(d - rw);
  const MatX l = base + comp_w * comp_u.adjoint();
  if ((l.adjoint() * l - MatX::Identity(d, d)).norm() >
      1e-6 * static_cast<double>(d))
    throw GramianViolation("completion failed to be unitary");
  return l;
}

}  // namespace saltire
