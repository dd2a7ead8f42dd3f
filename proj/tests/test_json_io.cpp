#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "saltire/feasibility.hpp"
#include "saltire/json_io.hpp"
#include "saltire/types.hpp"

using namespace saltire;
using nlohmann::json;

TEST_CASE("scalar and matrix serialization round trips") {
  SUBCASE("complex numbers are [re, im]; bare numbers read as real") {
    const cxd z(1.5, -2.25);
    CHECK(complex_from(json_of(z)) == z);
    CHECK(complex_from(json::parse("3.5")) == cxd(3.5));
    CHECK_THROWS_AS(complex_from(json::parse("[1, 2, 3]")), saltire::ParseError);
    CHECK_THROWS_AS(complex_from(json::parse("\"x\"")), saltire::ParseError);
  }

  SUBCASE("matrices are arrays of rows") {
    MatX m(2, 3);
    m << cxd(1.0), cxd(0.0, 1.0), cxd(-2.0),
        cxd(0.5), cxd(0.25, -0.5), cxd(3.0);
    const MatX back = matrix_from(json_of(m));
    CHECK((back - m).norm() == 0.0);
    CHECK_THROWS_AS(matrix_from(json::parse("[[1], [2, 3]]")),
                    saltire::ParseError);
    Mat2 two;
    two << cxd(0.1), cxd(0.2), cxd(0.3), cxd(0.4);
    CHECK((mat2_from(json_of(MatX(two))) - two).norm() == 0.0);
    CHECK_THROWS_AS(mat2_from(json::parse("[[1, 2, 3], [4, 5, 6]]")),
                    saltire::ParseError);
  }

  SUBCASE("domain points accept object and array forms") {
    const TetraPoint x{cxd(0.1, 0.2), cxd(-0.3), cxd(0.5, -0.1)};
    const TetraPoint back = tetra_from(json_of(x));
    CHECK(back.x1 == x.x1);
    CHECK(back.x2 == x.x2);
    CHECK(back.x3 == x.x3);
    const TetraPoint from_array = tetra_from(json::parse("[0.1, 0.2, 0.3]"));
    CHECK(from_array.x2 == cxd(0.2));
    const GammaPoint g{cxd(0.4), cxd(-0.2, 0.1)};
    CHECK(gamma_from(json_of(g)).p == g.p);
  }
}

TEST_CASE("problem and certificate serialization") {
  InterpolationProblem problem;
  problem.nodes = {cxd(0.2), cxd(-0.3, 0.25)};
  problem.targets = {TetraPoint{0.1, 0.2, 0.3},
                     TetraPoint{cxd(0.0, 0.1), cxd(-0.2), cxd(0.05)}};

  SUBCASE("problems round trip") {
    const InterpolationProblem back = problem_from(json_of(problem));
    REQUIRE(back.nodes.size() == 2);
    CHECK(back.nodes[1] == problem.nodes[1]);
    CHECK(back.targets[1].x3 == problem.targets[1].x3);
    CHECK_THROWS_AS(problem_from(json::parse("{\"nodes\": []}")),
                    saltire::ParseError);
  }

  SUBCASE("certificates round trip with provenance") {
    KernelCertificate cert;
    cert.nodes = problem.nodes;
    cert.targets = problem.targets;
    cert.z_points = {cxd(0.0), cxd(0.5)};
    cert.n = MatX::Identity(4, 4);
    cert.m = 2.0 * MatX::Identity(4, 4);
    cert.provenance = Provenance::kSearched;
    cert.production_residual = 1e-12;
    const KernelCertificate back = certificate_from(json_of(cert));
    CHECK(back.provenance == Provenance::kSearched);
    CHECK(back.production_residual == cert.production_residual);
    CHECK((back.n - cert.n).norm() == 0.0);
    CHECK((back.m - cert.m).norm() == 0.0);
    CHECK(back.z_points == cert.z_points);
  }

  SUBCASE("provenance defaults to external when absent") {
    json doc = json_of(problem);
    doc["z_points"] = json::array({json_of(cxd(0.0))});
    doc["n"] = json_of(MatX::Identity(2, 2));
    doc["m"] = json_of(MatX::Identity(2, 2));
    const KernelCertificate back = certificate_from(doc);
    CHECK(back.provenance == Provenance::kExternal);
    CHECK(back.production_residual == 0.0);
  }
}

TEST_CASE("document parsing and key access") {
  CHECK_THROWS_AS(parse_document("not json"), saltire::ParseError);
  const json doc = parse_document("{\"a\": 1}");
  CHECK(at_key(doc, "a") == json(1));
  CHECK_THROWS_AS(at_key(doc, "b"), saltire::ParseError);
  CHECK_THROWS_AS(at_key(json::parse("[1]"), "a"), saltire::ParseError);
}

TEST_CASE("serialization is deterministic") {
  MatX m(1, 2);
  m << cxd(0.1, 0.7), cxd(-0.333333333333333, 2.0);
  CHECK(json_of(m).dump() == json_of(m).dump());
  const std::string text = json_of(m).dump();
  CHECK(json_of(matrix_from(json::parse(text))).dump() == text);
}
