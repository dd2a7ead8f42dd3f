#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "saltire/feasibility.hpp"
#include "saltire/maps.hpp"
#include "saltire/synthesis.hpp"
#include "saltire/types.hpp"
#include "testutil.hpp"

using namespace saltire;

namespace {

const std::vector<cxd> kZProbes = {cxd(0.0), cxd(0.5), cxd(-0.5)};

KernelCertificate one_node_certificate() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat2 w;
  w << cxd(0.0), cxd(-r), cxd(r), cxd(0.0);
  const InterpolationProblem problem{{cxd(0.0)}, {TetraPoint{0.0, 0.0, 0.5}}};
  return certificate_from_interpolant(constant_mat2(w), problem, kZProbes);
}

}  // namespace

TEST_CASE("realizing an interpolant from a certificate") {
  SUBCASE("the one-node fixture produces the constant target map") {
    const Interpolant interpolant = procedure_sw(one_node_certificate());
    for (const cxd lambda : {cxd(0.0), cxd(0.3), cxd(-0.2, 0.4), cxd(0.7)}) {
      const TetraPoint x = interpolant.x(lambda);
      CHECK(std::abs(x.x1) < 1e-8);
      CHECK(std::abs(x.x2) < 1e-8);
      CHECK(std::abs(x.x3 - cxd(0.5)) < 1e-8);
    }
    CHECK(sup_operator_norm(interpolant.theta, 128) <= 1.0 + 1e-8);
  }

  SUBCASE("tampered certificates are rejected before realization") {
    KernelCertificate cert = one_node_certificate();
    cert.n *= 2.0;
    CHECK_THROWS_AS(procedure_sw(cert), InvalidProblem);
  }

  SUBCASE("unitary extension realizes forward data exactly") {
    // State dimension within the reconstruction cap, so the column
    // correspondence extends to a unitary colligation.
    const testutil::RealizedInstance inst = testutil::realized_instance(1);
    const Mat2Function f = realized_function(inst.colligation);
    const TetraMap data = ls_tetra(f);
    InterpolationProblem problem;
    problem.nodes = inst.nodes;
    for (const cxd& node : inst.nodes) problem.targets.push_back(data(node));
    const KernelCertificate cert =
        certificate_from_interpolant(f, problem, kZProbes);
    const Interpolant interpolant = procedure_sw(cert, {}, true);
    const MatX& l = interpolant.colligation;
    CHECK((l.adjoint() * l - MatX::Identity(l.cols(), l.cols())).norm() <
          1e-6);
    for (const cxd& node : inst.nodes) {
      const TetraPoint got = interpolant.x(node);
      const TetraPoint want = data(node);
      CHECK(std::abs(got.x1 - want.x1) < 1e-6);
      CHECK(std::abs(got.x2 - want.x2) < 1e-6);
      CHECK(std::abs(got.x3 - want.x3) < 1e-6);
    }
  }
}

TEST_CASE("end-to-end solver") {
  SUBCASE("solves a seeded two-node problem with a verified result") {
    const InterpolationProblem problem = testutil::make_problem(0);
    const SolveResult result = solve(problem, kZProbes);
    REQUIRE(result.interpolant.has_value());
    REQUIRE(result.certificate.has_value());
    CHECK(result.restarts_used >= 1);
    CHECK(verify_certificate(*result.certificate).verdict);
    const VerificationReport report =
        verify_interpolant(*result.interpolant, problem, 128);
    for (double miss : report.node_residuals) CHECK(miss <= 1e-6);
    CHECK(report.sup_membership_residual <= 1e-8);
    CHECK(report.sup_norm_excess <= 1e-8);
  }

  SUBCASE("solver output is reproducible") {
    const InterpolationProblem problem = testutil::make_problem(3);
    const SolveResult a = solve(problem, kZProbes);
    const SolveResult b = solve(problem, kZProbes);
    REQUIRE(a.interpolant.has_value());
    REQUIRE(b.interpolant.has_value());
    CHECK(a.restarts_used == b.restarts_used);
    CHECK((a.interpolant->colligation - b.interpolant->colligation).norm() ==
          0.0);
  }

  SUBCASE("an exhausted budget reports not-found without throwing") {
    // An infeasible problem: two distinguished-boundary targets of
    // different unimodular x3 cannot be interpolated by one inner triple;
    // with a tiny budget the search must simply give up.
    InterpolationProblem problem;
    problem.nodes = {cxd(0.2), cxd(-0.3)};
    problem.targets = {TetraPoint{0.0, 0.0, 1.0}, TetraPoint{0.0, 0.0, -1.0}};
    SearchConfig config;
    config.max_restarts = 2;
    config.max_sweeps = 40;
    const SolveResult result = solve(problem, kZProbes, config);
    CHECK_FALSE(result.interpolant.has_value());
    CHECK(result.restarts_used == 2);
  }
}

TEST_CASE("reduction of matrix interpolation data") {
  SUBCASE("diagonal/determinant data of the values") {
    std::mt19937_64 rng(89);
    const std::vector<cxd> nodes = {cxd(0.2), cxd(-0.4, 0.1)};
    std::vector<Mat2> values;
    for (int j = 0; j < 2; ++j) {
      Mat2 w;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) w(r, c) = 0.4 * testutil::gaussian(rng);
      values.push_back(w);
    }
    const InterpolationProblem problem = reduce_mu_problem(nodes, values);
    REQUIRE(problem.targets.size() == 2);
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(problem.targets[j].x1 - values[j](0, 0)) < 1e-15);
      CHECK(std::abs(problem.targets[j].x2 - values[j](1, 1)) < 1e-15);
    }
  }

  SUBCASE("structural errors") {
    Mat2 w;
    w << cxd(0.3), cxd(0.2), cxd(0.1), cxd(0.4);
    CHECK_THROWS_AS(reduce_mu_problem({cxd(0.2)}, {w, w}), InvalidProblem);
    CHECK_THROWS_AS(reduce_mu_problem({cxd(1.2)}, {w}), InvalidProblem);
    CHECK_THROWS_AS(reduce_mu_problem({cxd(0.2), cxd(0.2)}, {w, w}),
                    InvalidProblem);
    Mat2 triangular;
    triangular << cxd(0.3), cxd(0.2), cxd(0.0), cxd(0.4);
    CHECK_THROWS_AS(reduce_mu_problem({cxd(0.2)}, {triangular}),
                    DegenerateTarget);
  }

  SUBCASE("membership is the solver's concern, not the reduction's") {
    Mat2 big;
    big << cxd(3.0), cxd(0.2), cxd(0.1), cxd(2.0);
    const InterpolationProblem problem =
        reduce_mu_problem({cxd(0.2)}, {big});
    CHECK(problem.targets.size() == 1);
    CHECK_THROWS_AS(solve(problem, kZProbes), InvalidProblem);
  }
}

TEST_CASE("verification of matrix interpolants") {
  std::mt19937_64 rng(97);
  const MatX l = testutil::random_contraction(5, rng, 0.9);
  const Mat2Function f = realized_function(l);
  const std::vector<cxd> nodes = {cxd(0.3), cxd(-0.2, 0.4)};
  std::vector<Mat2> values;
  for (const cxd& node : nodes) values.push_back(f(node));
  const MatrixInterpolantReport report =
      verify_matrix_interpolant(f, nodes, values, 128);
  CHECK(report.nodes_ok);
  CHECK(report.mu_ok);
  CHECK(report.sup_mu <= 0.9 + 1e-6);
  for (double miss : report.node_residuals) CHECK(miss < 1e-12);

  std::vector<Mat2> wrong = values;
  wrong[0](0, 0) += cxd(0.1);
  const MatrixInterpolantReport bad =
      verify_matrix_interpolant(f, nodes, wrong, 64);
  CHECK_FALSE(bad.nodes_ok);
}
