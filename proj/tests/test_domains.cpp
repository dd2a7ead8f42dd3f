#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "saltire/domains.hpp"
#include "saltire/types.hpp"
#include "testutil.hpp"

using namespace saltire;
using doctest::Approx;

TEST_CASE("magic function of the symmetrised bidisc") {
  SUBCASE("pinned value") {
    CHECK(std::abs(phi(cxd(0.5), {cxd(0.0), cxd(1.0)}) - cxd(0.5)) < 1e-15);
  }

  SUBCASE("constant -a on the royal variety (2a, a^2)") {
    const cxd a(0.3, 0.1);
    const GammaPoint g{2.0 * a, a * a};
    for (const cxd z : {cxd(0.0), cxd(0.4, -0.2), cxd(-0.7, 0.1)})
      CHECK(std::abs(phi(z, g) + a) < 1e-14);
  }

  SUBCASE("pole at zs = 2") {
    CHECK_THROWS_AS(phi(cxd(1.0), {cxd(2.0), cxd(1.0)}), PoleError);
  }
}

TEST_CASE("magic functions of the tetrablock") {
  SUBCASE("pinned value") {
    CHECK(std::abs(psi(cxd(0.5), {cxd(0.0), cxd(0.0), cxd(1.0)}) - cxd(-0.5)) <
          1e-15);
  }

  SUBCASE("constant x1 on the triangular variety x3 = x1 x2") {
    const cxd x1(0.2, 0.3), x2(-0.4, 0.1);
    const TetraPoint x{x1, x2, x1 * x2};
    for (const cxd z : {cxd(0.0), cxd(0.5), cxd(-0.3, 0.6)})
      CHECK(std::abs(psi(z, x) - x1) < 1e-14);
  }

  SUBCASE("upsilon swaps the roles of x1 and x2") {
    const TetraPoint x{cxd(0.3, 0.1), cxd(-0.2, 0.4), cxd(0.25, -0.15)};
    const TetraPoint swapped{x.x2, x.x1, x.x3};
    for (const cxd z : {cxd(0.1), cxd(-0.5, 0.2)})
      CHECK(std::abs(upsilon(z, x) - psi(z, swapped)) < 1e-15);
  }

  SUBCASE("pole when x2 z = 1") {
    CHECK_THROWS_AS(psi(cxd(0.5), {cxd(0.0), cxd(2.0), cxd(0.0)}), PoleError);
    CHECK_THROWS_AS(upsilon(cxd(0.5), {cxd(2.0), cxd(0.0), cxd(0.0)}),
                    PoleError);
  }
}

TEST_CASE("tetrablock membership") {
  SUBCASE("center and boundary") {
    CHECK(tetra_membership_residual({cxd(0.0), cxd(0.0), cxd(0.0)}) ==
          Approx(-1.0));
    CHECK(tetra_membership_residual({cxd(0.0), cxd(0.0), cxd(1.0)}) ==
          Approx(0.0));
    CHECK(in_closed_tetrablock({cxd(0.0), cxd(0.0), cxd(0.0)}));
    CHECK(in_closed_tetrablock({cxd(0.0), cxd(0.0), cxd(1.0)}));
    CHECK_FALSE(in_closed_tetrablock({cxd(1.2), cxd(0.0), cxd(0.0)}));
    CHECK_FALSE(in_closed_tetrablock({cxd(0.0), cxd(0.0), cxd(1.1)}));
  }

  SUBCASE("closed-form psi supremum agrees with a fine boundary grid") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      TetraPoint x{0.5 * testutil::gaussian(rng), 0.4 * testutil::gaussian(rng),
                   0.5 * testutil::gaussian(rng)};
      if (std::abs(x.x2) >= 0.95) continue;
      const double closed = psi_sup(x);
      double grid = 0.0;
      for (int k = 0; k < 4096; ++k) {
        const cxd z = std::polar(1.0 - 1e-9, testutil::kTau * k / 4096);
        grid = std::max(grid, std::abs(psi(z, x)));
      }
      CHECK(grid <= closed + 1e-9);
      CHECK(closed - grid <= 1e-4 * std::max(1.0, closed));
    }
  }

  SUBCASE("psi supremum on the degenerate branches") {
    // Constant psi: x3 = x1 x2 with the pole inside the disc.
    const cxd x1(0.3, 0.2), x2(1.5, 0.0);
    CHECK(psi_sup({x1, x2, x1 * x2}) == Approx(std::abs(x1)));
    // Genuine interior pole: the supremum is infinite.
    CHECK(std::isinf(psi_sup({cxd(0.3), cxd(1.5), cxd(0.1)})));
  }

  SUBCASE("quadratic-inequality and psi-supremum tests agree off-boundary") {
    std::mt19937_64 rng(11);
    int compared = 0;
    for (int trial = 0; trial < 500; ++trial) {
      TetraPoint x{0.6 * testutil::gaussian(rng), 0.6 * testutil::gaussian(rng),
                   0.6 * testutil::gaussian(rng)};
      const double residual = tetra_membership_residual(x);
      const double sup = psi_sup(x);
      if (std::abs(residual) < 1e-6) continue;
      if (std::isfinite(sup) && std::abs(sup - 1.0) < 1e-6) continue;
      ++compared;
      CHECK(in_closed_tetrablock(x) == in_closed_tetrablock_psi(x));
    }
    CHECK(compared > 400);
  }

  SUBCASE("distinguished boundary") {
    const cxd x2(0.4, 0.3);
    const cxd x3 = std::polar(1.0, 0.77);
    CHECK(in_tetra_distinguished_boundary({std::conj(x2) * x3, x2, x3}));
    CHECK_FALSE(
        in_tetra_distinguished_boundary({std::conj(x2) * x3, x2, 0.9 * x3}));
    CHECK_FALSE(in_tetra_distinguished_boundary({cxd(0.0), x2, x3}));
  }
}

TEST_CASE("symmetrised bidisc membership") {
  SUBCASE("interior, boundary, exterior") {
    CHECK(in_closed_gamma({cxd(0.0), cxd(0.0)}));
    CHECK(in_closed_gamma({cxd(2.0), cxd(1.0)}));  // royal corner
    CHECK(in_closed_gamma({cxd(0.5, 0.2), cxd(0.1)}));
    CHECK_FALSE(in_closed_gamma({cxd(2.5), cxd(1.0)}));
    CHECK_FALSE(in_closed_gamma({cxd(0.0), cxd(1.5)}));
  }

  SUBCASE("symmetrised pairs of disc points always belong") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      const cxd z1 = std::polar(testutil::canonical(rng),
                                testutil::kTau * testutil::canonical(rng));
      const cxd z2 = std::polar(testutil::canonical(rng),
                                testutil::kTau * testutil::canonical(rng));
      CHECK(in_closed_gamma({z1 + z2, z1 * z2}));
    }
  }

  SUBCASE("distinguished boundary wants both roots unimodular") {
    const cxd z1 = std::polar(1.0, 0.3), z2 = std::polar(1.0, -1.2);
    CHECK(in_gamma_distinguished_boundary({z1 + z2, z1 * z2}));
    CHECK_FALSE(in_gamma_distinguished_boundary({cxd(0.5), cxd(0.3)}));
    CHECK_FALSE(in_gamma_distinguished_boundary({z1 + 0.5, z1 * 0.5}));
  }
}

TEST_CASE("structured singular value for diagonal perturbations") {
  SUBCASE("pinned values") {
    CHECK(mu_diag(Mat2::Identity()) == Approx(1.0).epsilon(1e-8));
    Mat2 two_zero;
    two_zero << cxd(2.0), cxd(0.0), cxd(0.0), cxd(0.0);
    CHECK(mu_diag(two_zero) == Approx(2.0).epsilon(1e-8));
    CHECK(mu_diag(Mat2::Zero()) < 1e-12);
    Mat2 nilpotent;
    nilpotent << cxd(0.0), cxd(1.0), cxd(0.0), cxd(0.0);
    CHECK(mu_diag(nilpotent) < 1e-8);
  }

  SUBCASE("diagonal matrices give the max modulus") {
    Mat2 d;
    d << cxd(0.5), cxd(0.0), cxd(0.0), cxd(0.25, 0.25);
    CHECK(mu_diag(d) == Approx(0.5).epsilon(1e-8));
  }

  SUBCASE("dominated by the operator norm and absolutely homogeneous") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      Mat2 a;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) a(r, c) = testutil::gaussian(rng);
      const double mu = mu_diag(a);
      CHECK(mu <= a.jacobiSvd().singularValues()(0) + 1e-8);
      CHECK(mu_diag(Mat2(0.5 * a)) == Approx(0.5 * mu).epsilon(1e-7));
    }
  }
}

TEST_CASE("matrix data reductions") {
  SUBCASE("tetrablock targets") {
    Mat2 w;
    w << cxd(0.3), cxd(0.2), cxd(0.1), cxd(-0.4);
    const TetraPoint x = tetra_targets(w);
    CHECK(std::abs(x.x1 - cxd(0.3)) < 1e-15);
    CHECK(std::abs(x.x2 - cxd(-0.4)) < 1e-15);
    CHECK(std::abs(x.x3 - (w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0))) < 1e-15);
  }

  SUBCASE("triangular matrices have no faithful tetrablock data") {
    Mat2 w;
    w << cxd(0.5), cxd(0.2), cxd(0.0), cxd(0.7);
    CHECK_THROWS_AS(tetra_targets(w), DegenerateTarget);
  }

  SUBCASE("symmetrised-bidisc targets") {
    Mat2 w;
    w << cxd(0.3), cxd(0.2), cxd(0.1), cxd(-0.4);
    const GammaPoint g = gamma_targets(w);
    CHECK(std::abs(g.s - cxd(-0.1)) < 1e-15);
    CHECK(std::abs(g.p - (w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0))) < 1e-15);
    CHECK_THROWS_AS(gamma_targets(Mat2(3.0 * Mat2::Identity())),
                    ScalarMatrix);
  }
}
