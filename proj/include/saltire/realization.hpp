#pragma once

#include <vector>

#include "saltire/hardy.hpp"
#include "saltire/types.hpp"

namespace saltire {

/// 2x2 block partition of an operator H (+) U -> G (+) V:
///   p11 : H -> G,  p12 : U -> G,  p21 : H -> V,  p22 : U -> V.
struct BlockOperator {
  MatX p11, p12, p21, p22;
};

/// Split a matrix into blocks with the given top-left block size.
/// Throws ShapeMismatch when the corner does not fit.
BlockOperator split_blocks(const MatX& m, Eigen::Index out1,
                           Eigen::Index in1);

/// Reassemble [[p11, p12], [p21, p22]]; throws ShapeMismatch on
/// inconsistent block dimensions.
MatX assemble_blocks(const BlockOperator& p);

/// Lower linear fractional transform
///   F_P(X) = p11 + p12 X (I - p22 X)^{-1} p21
/// for X : V -> U.  Throws ShapeMismatch on incompatible dimensions and
/// SingularPencil when I - p22 X is not invertible.
MatX lft(const BlockOperator& p, const MatX& x);

/// Scalar linear fractional transform of a 2x2 matrix:
///   F_P(z) = p11 + p12 z p21 / (1 - p22 z),
/// the 1x1 case of lft.  Throws SingularPencil when 1 - p22 z vanishes.
cxd lft2(const Mat2& p, cxd z);

/// Frobenius norm of the defect in the two-network coupling identity
///   I - F_Q(Y)* F_P(X)
///     = T_Q* (I - Y* X) T_P
///       + [I, T_Q* Y*] (I - Q* P) [I; X T_P],
/// where T_P = (I - p22 X)^{-1} p21 and T_Q = (I - q22 Y)^{-1} q21.
/// The identity holds for arbitrary block operators and arbitrary X, Y of
/// matching shapes, so the returned value is numerical noise; it is exposed
/// as a self-test of the lft plumbing.
double network_identity_residual(const BlockOperator& p,
                                 const BlockOperator& q, const MatX& x,
                                 const MatX& y);

/// 2x2 matrix-valued function of one disc variable, stored entrywise.
struct Mat2Function {
  Evaluable e11, e12, e21, e22;

  Mat2 operator()(cxd lambda) const;
};

/// Constant matrix function.
Mat2Function constant_mat2(const Mat2& m);

/// Diagonal matrix function diag(a, d).
Mat2Function diag_mat2(Evaluable a, Evaluable d);

/// Transfer function of the colligation L = [[A, B], [C, D]] with 2x2
/// upper-left block:
///   Theta(lambda) = A + lambda B (I - lambda D)^{-1} C.
/// Throws ShapeMismatch unless L is square of size >= 2 and SingularPencil
/// when the pencil is singular at lambda.
Mat2 state_space_eval(const MatX& l, cxd lambda);

/// state_space_eval wrapped as a Mat2Function (the colligation matrix is
/// shared, not copied per entry).
Mat2Function realized_function(MatX l);

/// Largest singular value of f over a grid on the circle of radius
/// 1 - shrink; grid points are at angles 2 pi k / grid_size.
double sup_operator_norm(const Mat2Function& f, int grid_size,
                         double shrink = 1e-3);

/// Least-squares completion L = W U^+ mapping columns of U to columns of W.
/// The pseudoinverse truncates singular values below 1e-10 times the
/// largest; L annihilates the orthogonal complement of range(U).  When
/// sigma_max is non-null it receives the largest singular value of L.
MatX least_squares_completion(const MatX& u, const MatX& w,
                              double* sigma_max = nullptr);

/// Unitary completion of the isometry mapping columns of U to columns of W.
/// Requires the Gramians to match: ||U*U - W*W||_2 <= deficit_tol *
/// max(1, ||U*U||_2), otherwise GramianViolation.  The extension is made
/// canonical (hence deterministic) by mapping the SVD-ordered orthonormal
/// basis of range(U)'s complement onto that of range(W)'s complement.
MatX unitary_completion(const MatX& u, const MatX& w,
                        double deficit_tol = 1e-7);

}  // namespace saltire
