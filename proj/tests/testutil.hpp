#pragma once

// Deterministic instance generators shared by the unit and acceptance test
// binaries.  All randomness flows through std::mt19937_64 seeded explicitly
// by the caller; the raw-bits-to-double conversion is hand-rolled so the
// streams are identical across standard libraries.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "saltire/domains.hpp"
#include "saltire/feasibility.hpp"
#include "saltire/hardy.hpp"
#include "saltire/realization.hpp"
#include "saltire/types.hpp"

namespace testutil {

using saltire::cxd;
using saltire::Mat2;
using saltire::MatX;

inline constexpr double kTau = 6.28318530717958647692;

/// Uniform double in [0, 1) from the top 53 bits of the generator.
inline double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * canonical(rng);
}

/// Standard complex Gaussian via Box-Muller (independent N(0,1) parts).
inline cxd gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - canonical(rng);  // (0, 1]
  const double u2 = canonical(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return cxd(r * std::cos(kTau * u2), r * std::sin(kTau * u2));
}

inline MatX gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                            std::mt19937_64& rng) {
  MatX m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = gaussian(rng);
  return m;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// column phases pinned by the R diagonal.
inline MatX haar_unitary(int n, std::mt19937_64& rng) {
  const MatX g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<MatX> qr(g);
  MatX q = qr.householderQ() * MatX::Identity(n, n);
  const MatX r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const cxd d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Random matrix rescaled to largest singular value sigma_cap exactly.
inline MatX random_contraction(Eigen::Index rows, Eigen::Index cols,
                               std::mt19937_64& rng, double sigma_cap) {
  MatX g = gaussian_matrix(rows, cols, rng);
  Eigen::JacobiSVD<MatX> svd(g);
  const double top = svd.singularValues()(0);
  if (top > 0.0) g *= sigma_cap / top;
  return g;
}

inline MatX random_contraction(Eigen::Index n, std::mt19937_64& rng,
                               double sigma_cap) {
  return random_contraction(n, n, rng, sigma_cap);
}

/// Polynomial with standard complex Gaussian coefficients, degree <= deg.
inline saltire::RationalFunction random_poly(std::mt19937_64& rng, int deg) {
  std::vector<cxd> coeffs(static_cast<std::size_t>(deg) + 1);
  for (cxd& c : coeffs) c = gaussian(rng);
  return saltire::RationalFunction::polynomial(std::move(coeffs));
}

/// Sup of |f| over a boundary grid.
inline double circle_sup(const saltire::RationalFunction& f, int grid = 512) {
  double sup = 0.0;
  for (int k = 0; k < grid; ++k)
    sup = std::max(sup, std::abs(f(std::polar(1.0, kTau * k / grid))));
  return sup;
}

/// Random polynomial of degree <= deg rescaled to boundary sup sup_cap.
inline saltire::RationalFunction random_poly_schur(std::mt19937_64& rng,
                                                   int deg, double sup_cap) {
  const saltire::RationalFunction f = random_poly(rng, deg);
  const double sup = circle_sup(f);
  return cxd(sup > 0.0 ? sup_cap / sup : 1.0) * f;
}

/// True when some root of the ascending-coefficient polynomial has modulus
/// strictly inside (lo, hi).  Instance generators reject such inputs: the
/// inner-outer split classifies zeros by a boundary band, and roots close
/// to the circle make that classification (harmlessly but measurably)
/// grid-dependent.
inline bool roots_in_band(const std::vector<cxd>& coeffs, double lo = 0.9,
                          double hi = 1.112) {
  for (const cxd& root : saltire::poly_roots(coeffs)) {
    const double m = std::abs(root);
    if (m > lo && m < hi) return true;
  }
  return false;
}

struct GammaInstance {
  saltire::RationalFunction s, p;
};

/// Analytic map into the symmetrised bidisc: symmetrisation of a pair of
/// disc-valued polynomials, rejecting near-circle roots of s^2/4 - p.
inline GammaInstance random_gamma_instance(std::mt19937_64& rng) {
  for (;;) {
    const saltire::RationalFunction u1 = random_poly_schur(rng, 2, 0.9);
    const saltire::RationalFunction u2 = random_poly_schur(rng, 2, 0.9);
    GammaInstance inst{u1 + u2, u1 * u2};
    const saltire::RationalFunction r =
        cxd(0.25) * (inst.s * inst.s) - inst.p;
    if (r.num_degree() >= 0 && roots_in_band(r.num())) continue;
    return inst;
  }
}

struct TetraInstance {
  saltire::RationalFunction x1, x2, x3;
};

/// Analytic map into the tetrablock: diagonal/determinant data of a random
/// polynomial matrix contraction, rejecting near-circle roots of the
/// off-diagonal product g12 * g21 = x1 x2 - x3.
inline TetraInstance random_tetra_instance(std::mt19937_64& rng) {
  for (;;) {
    std::array<saltire::RationalFunction, 4> g;
    for (auto& e : g) e = random_poly(rng, 2);
    double sup = 0.0;
    const int grid = 256;
    for (int k = 0; k < grid; ++k) {
      const cxd z = std::polar(1.0, kTau * k / grid);
      Mat2 m;
      m << g[0](z), g[1](z), g[2](z), g[3](z);
      sup = std::max(sup, m.jacobiSvd().singularValues()(0));
    }
    if (sup <= 0.0) continue;
    for (auto& e : g) e = cxd(0.95 / sup) * e;
    const saltire::RationalFunction off = g[1] * g[2];
    if (off.num_degree() >= 0 && roots_in_band(off.num())) continue;
    return {g[0], g[3], g[0] * g[3] - off};
  }
}

/// Distinct nodes in the closed disc of radius 0.7 with pairwise
/// separation at least 0.15.
inline std::vector<cxd> random_nodes(int count, std::mt19937_64& rng) {
  std::vector<cxd> nodes;
  while (static_cast<int>(nodes.size()) < count) {
    const cxd cand =
        std::polar(0.7 * std::sqrt(canonical(rng)), kTau * canonical(rng));
    bool clear = true;
    for (const cxd& other : nodes)
      clear = clear && std::abs(cand - other) >= 0.15;
    if (clear) nodes.push_back(cand);
  }
  return nodes;
}

struct RealizedInstance {
  MatX colligation;        ///< unitary of size 2 + d
  std::vector<cxd> nodes;  ///< n distinct interior nodes
};

/// Data for the forward kernel-construction checks: a unitary colligation
/// of state dimension d = min(6, 2(n-1)) with n = 2 + idx mod 3 nodes.
/// The state-dimension cap keeps the realized function reconstructible
/// from node data alone.
inline RealizedInstance realized_instance(int idx,
                                          std::uint64_t seed_base = 4242) {
  std::mt19937_64 rng(seed_base + static_cast<std::uint64_t>(idx));
  const int n = 2 + idx % 3;
  const int d = std::min(6, 2 * (n - 1));
  RealizedInstance inst;
  inst.colligation = haar_unitary(2 + d, rng);
  for (;;) {
    inst.nodes = random_nodes(n, rng);
    bool clear = true;
    for (const cxd& node : inst.nodes) {
      // x1 x2 - x3 = f12 f21 must not vanish at a node, else the target
      // is degenerate for the kernel construction.
      const Mat2 w = saltire::state_space_eval(inst.colligation, node);
      clear = clear && std::abs(w(0, 1) * w(1, 0)) >= 1e-9;
    }
    if (clear) return inst;
  }
}

/// Seeded two-node interpolation problem with targets drawn from a random
/// strictly contractive transfer function (state dimension 1 + idx mod 3),
/// hence always solvable.  Degenerate or near-boundary targets re-draw
/// from a shifted seed.
inline saltire::InterpolationProblem make_problem(
    int idx, std::uint64_t seed_base = 777) {
  for (std::uint64_t seed = seed_base + static_cast<std::uint64_t>(idx);;
       seed += 100000) {
    std::mt19937_64 rng(seed);
    const int d = 1 + idx % 3;
    MatX l = random_contraction(2 + d, rng, 0.95);
    l *= uniform(rng, 0.5, 1.0);
    std::vector<cxd> nodes;
    while (nodes.size() < 2) {
      const cxd cand(uniform(rng, -0.7, 0.7), uniform(rng, -0.7, 0.7));
      if (std::abs(cand) >= 0.75) continue;
      if (!nodes.empty() && std::abs(cand - nodes[0]) <= 0.2) continue;
      nodes.push_back(cand);
    }
    saltire::InterpolationProblem problem;
    problem.nodes = nodes;
    bool usable = true;
    for (const cxd& node : nodes) {
      const Mat2 w = saltire::state_space_eval(l, node);
      const saltire::TetraPoint x{w(0, 0), w(1, 1),
                                  w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0)};
      if (std::abs(x.x1 * x.x2 - x.x3) < 1e-9 || std::abs(x.x2) > 0.999) {
        usable = false;
        break;
      }
      problem.targets.push_back(x);
    }
    if (usable) return problem;
  }
}

}  // namespace testutil
