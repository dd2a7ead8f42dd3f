#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "saltire/types.hpp"

namespace saltire {

/// Default node count of the Herglotz boundary quadrature.
inline constexpr int kHerglotzGridDefault = 4096;

/// Roots of a complex polynomial given by ascending coefficients, computed
/// as eigenvalues of the Frobenius companion matrix.  Coefficients that are
/// negligibly small relative to the largest one are trimmed first; a
/// (near-)constant polynomial has no roots.
std::vector<cxd> poly_roots(const std::vector<cxd>& coeffs);

/// Scalar rational function num/den with complex coefficients stored in
/// ascending degree.  Arithmetic works on coefficients; no approximate GCD
/// is attempted beyond trimming negligible leading coefficients and common
/// monomial factors.
class RationalFunction {
 public:
  /// The zero function 0/1.
  RationalFunction();
  RationalFunction(std::vector<cxd> num, std::vector<cxd> den);

  static RationalFunction constant(cxd c);
  /// Polynomial with the given ascending coefficients (denominator 1).
  static RationalFunction polynomial(std::vector<cxd> coeffs);

  /// Horner evaluation.  Throws PoleError when the denominator is
  /// negligible at lambda.
  cxd operator()(cxd lambda) const;

  const std::vector<cxd>& num() const { return num_; }
  const std::vector<cxd>& den() const { return den_; }

  /// Degree of the numerator (-1 for the zero function).
  int num_degree() const { return static_cast<int>(num_.size()) - 1; }
  int den_degree() const { return static_cast<int>(den_.size()) - 1; }

  /// True when every denominator root lies outside the closed unit disc
  /// (modulus > 1 + boundary_band), i.e. the function is analytic on a
  /// neighbourhood of the closed disc.
  bool h_infinity(double boundary_band = 1e-8) const;

  friend RationalFunction operator+(const RationalFunction& a,
                                    const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a,
                                    const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a,
                                    const RationalFunction& b);
  friend RationalFunction operator*(cxd c, const RationalFunction& a);
  RationalFunction operator-() const;

 private:
  std::vector<cxd> num_;
  std::vector<cxd> den_;
};

/// Finite Blaschke product c * prod (lambda - a_m)/(1 - conj(a_m) lambda)
/// with |c| = 1 and all |a_m| < 1 (zeros listed with multiplicity).
struct InnerFactor {
  cxd constant{1.0};
  std::vector<cxd> zeros;

  cxd operator()(cxd lambda) const;
};

/// Outer function represented by samples of its boundary log-modulus on a
/// uniform grid over the unit circle, evaluated through the Herglotz
/// integral
///   O(lambda) = exp( (1/G) sum_k (w_k + lambda)/(w_k - lambda) * log|f(w_k)| ).
/// The trapezoid rule on the uniform grid converges geometrically for
/// interior points; accuracy degrades within about 1e-3 of the boundary at
/// the default grid size.  O(0) = exp(mean log-modulus) is real and
/// positive by construction.
class OuterFunction {
 public:
  /// Samples are log|f| at theta_k = 2 pi k / G; values below the clip
  /// floor log(1e-30) are clipped (integrable log singularities).
  explicit OuterFunction(std::vector<double> log_modulus);

  static OuterFunction constant(double modulus,
                                int grid = kHerglotzGridDefault);
  /// Sample log|f(e^{i theta})| from a callable on [0, 2 pi).
  static OuterFunction from_log_modulus(
      const std::function<double(double)>& log_abs, int grid);

  /// Exact zero-free product exp(log_scale) * prod_i (1 - c_i lambda)^{w_i}
  /// with every |c_i| <= 1, so each base stays in the right half plane on
  /// the open disc and the principal logarithm never crosses a branch cut.
  /// Used for rational functions, where it avoids quadrature entirely.
  static OuterFunction exact_product(
      double log_scale, std::vector<std::pair<cxd, double>> factors);

  /// Herglotz-quadrature evaluation of the sampled part times the exact
  /// product part; requires |lambda| < 1.
  cxd operator()(cxd lambda) const;

  int grid_size() const { return static_cast<int>(log_modulus_.size()); }
  const std::vector<double>& log_modulus() const { return log_modulus_; }

 private:
  std::vector<double> log_modulus_;
  // (c, w) representing (1 - c*lambda)^w; empty for sampled-only outers.
  std::vector<std::pair<cxd, double>> factors_;
  double log_scale_ = 0.0;

  friend OuterFunction outer_sqrt(const OuterFunction& g);
};

/// Outer square root: halve the boundary log-modulus, the product exponents
/// and the scale.  The result g satisfies g(0) = sqrt(input(0)) >= 0 and g^2
/// reproduces the input up to quadrature error (exactly for exact products).
OuterFunction outer_sqrt(const OuterFunction& g);

/// Inner-outer factorisation of a rational H-infinity function: the inner
/// part collects the numerator zeros strictly inside the disc together with
/// a unimodular constant; the outer part is assembled in closed form from
/// the reflected inner zeros, the remaining numerator zeros (boundary zeros
/// included) and the poles, so no boundary quadrature is involved.
/// The unimodular constant is fixed by matching the phase of f at an
/// interior test point, which also makes outer(0) >= 0.
/// Throws ZeroFunction and PoleInDisc.
std::pair<InnerFactor, OuterFunction> inner_outer_factorize(
    const RationalFunction& f, double boundary_band = 1e-8,
    int grid = kHerglotzGridDefault);

/// Deterministic pointwise-evaluable scalar function: a shared immutable
/// expression DAG over rational functions, Blaschke products, outer
/// functions, constants, arbitrary callables, and the arithmetic closures
/// thereof.
class Evaluable {
 public:
  /// The zero function.
  Evaluable();
  Evaluable(cxd c);                   // NOLINT: implicit by design
  Evaluable(double c);                // NOLINT
  Evaluable(RationalFunction f);      // NOLINT
  Evaluable(InnerFactor f);           // NOLINT
  Evaluable(OuterFunction f);         // NOLINT

  static Evaluable from_function(std::function<cxd(cxd)> f);

  cxd operator()(cxd lambda) const;

  friend Evaluable operator+(const Evaluable& a, const Evaluable& b);
  friend Evaluable operator-(const Evaluable& a, const Evaluable& b);
  friend Evaluable operator*(const Evaluable& a, const Evaluable& b);
  /// Division; evaluation throws ZeroDenominator when the divisor is
  /// negligible at the point.
  friend Evaluable operator/(const Evaluable& a, const Evaluable& b);
  Evaluable operator-() const;

  /// Implementation detail, defined in the source file.
  struct Node;

 private:
  explicit Evaluable(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Samples of f on the circle of radius 1 - shrink (shrunk into the disc so
/// quadrature-backed functions stay in their reliable region).
std::vector<cxd> boundary_profile(const Evaluable& f, int grid_size,
                                  double shrink = 1e-3);

}  // namespace saltire
