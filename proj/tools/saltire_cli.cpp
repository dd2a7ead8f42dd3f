// Command-line front end: JSON in, JSON out, deterministic for fixed inputs.
//
// Subcommands:
//   check-point  membership tests for single points
//   mu           structured singular value of a 2x2 matrix
//   reduce       mu-synthesis data -> tetrablock interpolation problem
//   solve        search a certificate and realize an interpolant
//   verify       check a kernel certificate
//   synthesize   realize an interpolant from a given certificate
//   roundtrip    self-consistency suites over the map web
//
// Exit codes: 0 success / all pass / found; 1 failure or nothing found;
// 2 malformed command line or JSON; 3 invalid problem or shapes.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"
#include "saltire/domains.hpp"
#include "saltire/feasibility.hpp"
#include "saltire/hardy.hpp"
#include "saltire/json_io.hpp"
#include "saltire/maps.hpp"
#include "saltire/realization.hpp"
#include "saltire/synthesis.hpp"
#include "saltire/types.hpp"

namespace {

using nlohmann::json;
using namespace saltire;

constexpr double kTau = 6.28318530717958647692;

std::string read_input(const std::string& path) {
  if (path == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

/// Default disc samples for certificate construction when the input does
/// not provide any.
std::vector<cxd> default_z_points() {
  return {cxd(0.0), cxd(0.5), cxd(-0.5)};
}

std::vector<cxd> z_points_from(const json& doc) {
  if (doc.is_object() && doc.contains("z_points"))
    return complex_list_from(doc.at("z_points"));
  return default_z_points();
}

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

int run_check_point(const json& doc, const Tolerance& tol) {
  json out = json::object();
  bool saw_any = false;
  if (doc.is_object() && doc.contains("tetra")) {
    saw_any = true;
    const TetraPoint x = tetra_from(doc.at("tetra"));
    json t;
    t["membership_residual"] = tetra_membership_residual(x);
    t["in_tetrablock"] = in_closed_tetrablock(x, tol);
    const double sup = psi_sup(x);
    t["psi_sup"] = std::isfinite(sup) ? json(sup) : json();
    t["in_tetrablock_psi"] = in_closed_tetrablock_psi(x, tol);
    t["on_distinguished_boundary"] = in_tetra_distinguished_boundary(x, tol);
    out["tetra"] = std::move(t);
  }
  if (doc.is_object() && doc.contains("gamma")) {
    saw_any = true;
    const GammaPoint g = gamma_from(doc.at("gamma"));
    json s;
    s["in_gamma"] = in_closed_gamma(g, tol);
    s["on_distinguished_boundary"] = in_gamma_distinguished_boundary(g, tol);
    out["gamma"] = std::move(s);
  }
  if (!saw_any)
    throw ParseError("check-point input needs a 'tetra' or 'gamma' key");
  emit(out);
  return 0;
}

int run_mu(const json& doc, const Tolerance& tol) {
  const Mat2 a = mat2_from(doc.is_object() && doc.contains("matrix")
                               ? doc.at("matrix")
                               : doc);
  json out;
  out["mu_diag"] = mu_diag(a, tol);
  try {
    out["reduced_target"] = json_of(tetra_targets(a, tol));
  } catch (const DegenerateTarget&) {
    out["reduced_target"] = json();  // no faithful triple for this matrix
  }
  emit(out);
  return 0;
}

int run_reduce(const json& doc, const Tolerance& tol) {
  const std::vector<cxd> nodes = complex_list_from(at_key(doc, "nodes"));
  std::vector<Mat2> values;
  const json& vals = at_key(doc, "values");
  if (!vals.is_array()) throw ParseError("'values' must be an array");
  for (const json& v : vals) values.push_back(mat2_from(v));
  emit(json_of(reduce_mu_problem(nodes, values, tol)));
  return 0;
}

int run_solve(const json& doc, const SearchConfig& config,
              const Tolerance& tol, bool unitary_extension, int grid) {
  const InterpolationProblem problem = problem_from(doc);
  const std::vector<cxd> z_points = z_points_from(doc);
  const SolveResult result =
      solve(problem, z_points, config, tol, unitary_extension);
  json out;
  out["found"] = result.interpolant.has_value();
  out["restarts_used"] = result.restarts_used;
  if (!result.interpolant) {
    emit(out);
    return 1;
  }
  out["certificate"] = json_of(*result.certificate);
  out["colligation"] = json_of(result.interpolant->colligation);
  json at_nodes = json::array();
  for (const cxd& node : problem.nodes)
    at_nodes.push_back(json_of(result.interpolant->x(node)));
  out["x_at_nodes"] = std::move(at_nodes);
  out["verification"] =
      json_of(verify_interpolant(*result.interpolant, problem, grid));
  emit(out);
  return 0;
}

int run_verify(const json& doc, const Tolerance& tol) {
  const KernelCertificate cert = certificate_from(
      doc.is_object() && doc.contains("certificate") ? doc.at("certificate")
                                                     : doc);
  const CertificateReport report = verify_certificate(cert, tol);
  emit(json_of(report));
  return report.verdict ? 0 : 1;
}

int run_synthesize(const json& doc, const Tolerance& tol,
                   bool unitary_extension, int grid) {
  const KernelCertificate cert = certificate_from(
      doc.is_object() && doc.contains("certificate") ? doc.at("certificate")
                                                     : doc);
  const Interpolant interpolant = procedure_sw(cert, tol, unitary_extension);
  json out;
  out["colligation"] = json_of(interpolant.colligation);
  json at_nodes = json::array();
  for (const cxd& node : cert.nodes)
    at_nodes.push_back(json_of(interpolant.x(node)));
  out["x_at_nodes"] = std::move(at_nodes);
  out["verification"] = json_of(
      verify_interpolant(interpolant, {cert.nodes, cert.targets}, grid));
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// roundtrip suites
// ---------------------------------------------------------------------------

RationalFunction poly(std::vector<cxd> coeffs) {
  return RationalFunction::polynomial(std::move(coeffs));
}

/// Deterministic unitary matrix: QR of a fixed full-rank complex matrix,
/// with column phases pinned by the R diagonal.
MatX fixed_unitary(int d, int variant) {
  MatX a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      a(i, j) = std::polar(1.0 + 0.1 * i,
                           0.7 * (i + 1) * (j + 2) + 0.37 * variant) +
                cxd(0.2 * (i - j), 0.15 * (i + j) + 0.11 * variant);
  Eigen::HouseholderQR<MatX> qr(a);
  MatX q_mat = qr.householderQ() * MatX::Identity(d, d);
  const MatX r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cxd diag = r(j, j);
    if (std::abs(diag) > 0.0) q_mat.col(j) *= diag / std::abs(diag);
  }
  return q_mat;
}

struct SuiteResult {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Interior lambda grid used by the map-identity suites.
std::vector<cxd> lambda_grid() {
  std::vector<cxd> grid;
  for (int k = 0; k < 24; ++k) grid.push_back(std::polar(0.9, kTau * k / 24));
  for (int k = 0; k < 12; ++k) grid.push_back(std::polar(0.45, kTau * k / 12));
  grid.push_back(cxd(0.0));
  return grid;
}

struct GammaInstance {
  RationalFunction s, p;
};

std::vector<GammaInstance> gamma_instances() {
  std::vector<std::pair<RationalFunction, RationalFunction>> factor_pairs = {
      {poly({cxd(0.0), cxd(0.45), cxd(0.2)}),
       poly({cxd(0.1), cxd(-0.3), cxd(0.25)})},
      {poly({cxd(0.2), cxd(0.3)}), poly({cxd(-0.15), cxd(0.2), cxd(0.1)})},
      {poly({cxd(0.0), cxd(0.5)}), poly({cxd(0.0), cxd(0.5)})},  // royal
  };
  std::vector<GammaInstance> out;
  for (auto& [u1, u2] : factor_pairs) out.push_back({u1 + u2, u1 * u2});
  return out;
}

struct TetraInstance {
  RationalFunction x1, x2, x3;
};

std::vector<TetraInstance> tetra_instances() {
  std::vector<TetraInstance> out;
  // Diagonal/determinant triples of small polynomial Schur-class matrices;
  // membership in the tetrablock is inherited from the matrix being a
  // contraction on the disc.
  const std::vector<std::array<RationalFunction, 4>> mats = {
      {poly({cxd(0.1), cxd(0.25)}), poly({cxd(0.3)}),
       poly({cxd(0.0), cxd(0.4)}), poly({cxd(-0.2), cxd(0.15)})},
      {poly({cxd(0.0), cxd(0.0), cxd(0.35)}), poly({cxd(0.25), cxd(0.1)}),
       poly({cxd(0.2)}), poly({cxd(0.15), cxd(-0.25)})},
  };
  for (const auto& g : mats)
    out.push_back(
        {g[0], g[3], g[0] * g[3] - g[1] * g[2]});
  // Degenerate triple x3 = x1 x2 with x2 = 0.
  out.push_back({poly({cxd(0.0), cxd(0.4)}), RationalFunction(),
                 RationalFunction()});
  return out;
}

SuiteResult suite_south_north(const Tolerance& tol) {
  SuiteResult suite{"south-north", 0.0, 1e-8, false};
  const std::vector<cxd> grid = lambda_grid();
  for (const GammaInstance& inst : gamma_instances()) {
    const Mat2Function f = ln_gamma(inst.s, inst.p, tol);
    const GammaMap back = ls_gamma(f);
    for (const cxd& lambda : grid) {
      suite.worst = std::max(
          suite.worst, std::abs(back.s(lambda) - inst.s(lambda)));
      suite.worst = std::max(
          suite.worst, std::abs(back.p(lambda) - inst.p(lambda)));
    }
  }
  for (const TetraInstance& inst : tetra_instances()) {
    const Mat2Function f = ln_tetra(inst.x1, inst.x2, inst.x3, tol);
    const TetraMap back = ls_tetra(f);
    for (const cxd& lambda : grid) {
      suite.worst = std::max(
          suite.worst, std::abs(back.x1(lambda) - inst.x1(lambda)));
      suite.worst = std::max(
          suite.worst, std::abs(back.x2(lambda) - inst.x2(lambda)));
      suite.worst = std::max(
          suite.worst, std::abs(back.x3(lambda) - inst.x3(lambda)));
    }
  }
  suite.pass = suite.worst <= suite.tolerance;
  return suite;
}

SuiteResult suite_east_west(const Tolerance& tol) {
  SuiteResult suite{"east-west", 0.0, 1e-10, false};
  const std::vector<cxd> grid = lambda_grid();
  for (const GammaInstance& inst : gamma_instances()) {
    const GammaMap h{Evaluable(inst.s), Evaluable(inst.p)};
    const GammaMap back = lw_gamma(le_gamma(h));
    for (const cxd& lambda : grid) {
      suite.worst =
          std::max(suite.worst, std::abs(back.s(lambda) - h.s(lambda)));
      suite.worst =
          std::max(suite.worst, std::abs(back.p(lambda) - h.p(lambda)));
    }
  }
  for (const TetraInstance& inst : tetra_instances()) {
    const TetraMap x{Evaluable(inst.x1), Evaluable(inst.x2),
                     Evaluable(inst.x3), false};
    const TetraMap back = lw_tetra(le_tetra(x), tol);
    const bool expect_degenerate =
        (inst.x1 * inst.x2 - inst.x3).num_degree() < 0;
    if (back.degenerate != expect_degenerate) suite.worst = 1.0;
    for (const cxd& lambda : grid) {
      suite.worst =
          std::max(suite.worst, std::abs(back.x1(lambda) - x.x1(lambda)));
      if (!expect_degenerate) {
        suite.worst =
            std::max(suite.worst, std::abs(back.x2(lambda) - x.x2(lambda)));
        suite.worst =
            std::max(suite.worst, std::abs(back.x3(lambda) - x.x3(lambda)));
      }
    }
  }
  suite.pass = suite.worst <= suite.tolerance;
  return suite;
}

SuiteResult suite_southeast(const Tolerance& tol) {
  SuiteResult suite{"southeast", 0.0, 1e-8, false};
  std::vector<cxd> z_grid;
  for (int k = 0; k < 8; ++k) z_grid.push_back(std::polar(0.7, kTau * k / 8));
  const std::vector<cxd> grid = lambda_grid();
  for (const GammaInstance& inst : gamma_instances()) {
    const Mat2Function f = ln_gamma(inst.s, inst.p, tol);
    const MobiusPencil via_se = se_map(f);
    const MobiusPencil via_le =
        le_gamma(GammaMap{Evaluable(inst.s), Evaluable(inst.p)});
    for (const cxd& lambda : grid)
      for (const cxd& z : z_grid)
        suite.worst = std::max(
            suite.worst, std::abs(via_se(z, lambda) - via_le(z, lambda)));
  }
  for (const TetraInstance& inst : tetra_instances()) {
    const Mat2Function f = ln_tetra(inst.x1, inst.x2, inst.x3, tol);
    const MobiusPencil via_se = negate(se_map(f));
    const MobiusPencil via_le = le_tetra(TetraMap{
        Evaluable(inst.x1), Evaluable(inst.x2), Evaluable(inst.x3), false});
    for (const cxd& lambda : grid)
      for (const cxd& z : z_grid)
        suite.worst = std::max(
            suite.worst, std::abs(via_se(z, lambda) - via_le(z, lambda)));
  }
  suite.pass = suite.worst <= suite.tolerance;
  return suite;
}

SuiteResult suite_kernel_completion(const Tolerance& tol) {
  SuiteResult suite{"kernel-completion", 0.0, 1e-8, false};
  const std::vector<cxd> nodes = {cxd(0.2), cxd(-0.3, 0.25), cxd(0.0, 0.4)};
  const std::vector<cxd> z_points = {cxd(0.3), cxd(-0.41, 0.13)};
  for (int variant = 0; variant < 2; ++variant) {
    const Mat2Function f = realized_function(fixed_unitary(4, variant));
    const KernelPair pair = ue_map(f, nodes, z_points);
    const Mat2Function rebuilt = procedure_uw(pair, nodes, z_points, tol);
    const KernelPair pair2 = ue_map(rebuilt, nodes, z_points);
    suite.worst = std::max(suite.worst,
                           (pair.n - pair2.n).cwiseAbs().maxCoeff());
    suite.worst = std::max(suite.worst,
                           (pair.m - pair2.m).cwiseAbs().maxCoeff());
    // Gauge-invariant comparison of the functions themselves.
    for (const cxd& lambda : lambda_grid()) {
      const Mat2 a = f(lambda);
      const Mat2 b = rebuilt(lambda);
      suite.worst = std::max(
          suite.worst, (a.cwiseAbs() - b.cwiseAbs()).cwiseAbs().maxCoeff());
    }
  }
  suite.pass = suite.worst <= suite.tolerance;
  return suite;
}

SuiteResult suite_synthesis(const SearchConfig& config, const Tolerance& tol) {
  SuiteResult suite{"synthesis", 0.0, 1e-6, false};
  // One-node fixture with a constant interpolant.
  {
    const double r = 1.0 / std::sqrt(2.0);
    Mat2 w;
    w << cxd(0.0), cxd(-r), cxd(r), cxd(0.0);
    const InterpolationProblem problem{{cxd(0.0)},
                                       {TetraPoint{0.0, 0.0, 0.5}}};
    const KernelCertificate cert = certificate_from_interpolant(
        constant_mat2(w), problem, default_z_points(), tol);
    suite.worst = std::max(suite.worst, cert.production_residual);
    if (!verify_certificate(cert, tol).verdict) suite.worst = 1.0;
    const Interpolant interpolant = procedure_sw(cert, tol);
    for (const cxd& probe : {cxd(0.0), cxd(0.3), cxd(-0.2, 0.4)}) {
      const TetraPoint got = interpolant.x(probe);
      suite.worst = std::max({suite.worst, std::abs(got.x1),
                              std::abs(got.x2), std::abs(got.x3 - 0.5)});
    }
  }
  // Two-node searched problem with targets drawn from a fixed contraction.
  {
    const Mat2Function g = realized_function(0.8 * fixed_unitary(4, 1));
    const std::vector<cxd> nodes = {cxd(0.25), cxd(-0.35)};
    InterpolationProblem problem;
    problem.nodes = nodes;
    const TetraMap targets = ls_tetra(g);
    for (const cxd& node : nodes) problem.targets.push_back(targets(node));
    const SolveResult result =
        solve(problem, default_z_points(), config, tol);
    if (!result.interpolant) {
      suite.worst = 1.0;
    } else {
      const VerificationReport report =
          verify_interpolant(*result.interpolant, problem, 128);
      for (double miss : report.node_residuals)
        suite.worst = std::max(suite.worst, miss);
      suite.worst = std::max(suite.worst, report.sup_membership_residual);
      suite.worst = std::max(suite.worst, report.sup_norm_excess);
    }
  }
  suite.pass = suite.worst <= suite.tolerance;
  return suite;
}

int run_roundtrip(const std::string& filter, const SearchConfig& config,
                  const Tolerance& tol) {
  std::vector<std::function<SuiteResult()>> suites = {
      [&] { return suite_south_north(tol); },
      [&] { return suite_east_west(tol); },
      [&] { return suite_southeast(tol); },
      [&] { return suite_kernel_completion(tol); },
      [&] { return suite_synthesis(config, tol); },
  };
  json out;
  out["suites"] = json::array();
  bool all_pass = true;
  bool any_run = false;
  for (auto& run : suites) {
    SuiteResult result = run();
    if (!filter.empty() && result.name.find(filter) == std::string::npos)
      continue;
    any_run = true;
    all_pass = all_pass && result.pass;
    out["suites"].push_back({{"name", result.name},
                             {"worst_residual", result.worst},
                             {"tolerance", result.tolerance},
                             {"pass", result.pass}});
  }
  if (!any_run) throw ParseError("no suite matches filter: " + filter);
  out["pass"] = all_pass;
  emit(out);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tetrablock interpolation toolkit"};
  app.require_subcommand(1);

  std::string input_path = "-";
  std::uint64_t seed = 12345;
  int restarts = 50;
  int grid = 256;
  double tol_psd = 1e-9;
  double tol_eq = 1e-12;
  bool unitary_extension = false;
  std::string suite_filter;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("input", input_path,
                    "input JSON file ('-' reads standard input)");
  };
  auto add_tols = [&](CLI::App* cmd) {
    cmd->add_option("--tol-psd", tol_psd, "eigenvalue slack for PSD checks");
    cmd->add_option("--tol-eq", tol_eq, "equality comparison tolerance");
    cmd->add_option("--grid", grid, "grid size for sup-style checks");
  };

  CLI::App* check = app.add_subcommand("check-point",
                                       "membership tests for single points");
  add_io(check);
  add_tols(check);

  CLI::App* mu = app.add_subcommand("mu",
                                    "structured singular value of a 2x2 "
                                    "matrix");
  add_io(mu);
  add_tols(mu);

  CLI::App* reduce = app.add_subcommand(
      "reduce", "mu-synthesis data to a tetrablock interpolation problem");
  add_io(reduce);
  add_tols(reduce);

  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "search a certificate and realize an interpolant");
  add_io(solve_cmd);
  add_tols(solve_cmd);
  solve_cmd->add_option("--seed", seed, "search seed");
  solve_cmd->add_option("--restarts", restarts, "restart budget");
  solve_cmd->add_flag("--unitary-extension", unitary_extension,
                      "complete to a unitary colligation when possible");

  CLI::App* verify = app.add_subcommand("verify",
                                        "check a kernel certificate");
  add_io(verify);
  add_tols(verify);

  CLI::App* synthesize = app.add_subcommand(
      "synthesize", "realize an interpolant from a certificate");
  add_io(synthesize);
  add_tols(synthesize);
  synthesize->add_flag("--unitary-extension", unitary_extension,
                       "complete to a unitary colligation when possible");

  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "self-consistency suites over the map web");
  add_tols(roundtrip);
  roundtrip->add_option("--seed", seed, "search seed");
  roundtrip->add_option("--restarts", restarts, "restart budget");
  roundtrip->add_option("--suite", suite_filter,
                        "run only suites whose name contains this text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Tolerance tol;
  tol.eps_psd = tol_psd;
  tol.eps_eq = tol_eq;
  tol.boundary_grid_size = grid;

  SearchConfig config;
  config.seed = seed;
  config.max_restarts = restarts;

  try {
    if (app.got_subcommand(check))
      return run_check_point(parse_document(read_input(input_path)), tol);
    if (app.got_subcommand(mu))
      return run_mu(parse_document(read_input(input_path)), tol);
    if (app.got_subcommand(reduce))
      return run_reduce(parse_document(read_input(input_path)), tol);
    if (app.got_subcommand(solve_cmd))
      return run_solve(parse_document(read_input(input_path)), config, tol,
                       unitary_extension, grid);
    if (app.got_subcommand(verify))
      return run_verify(parse_document(read_input(input_path)), tol);
    if (app.got_subcommand(synthesize))
      return run_synthesize(parse_document(read_input(input_path)), tol,
                            unitary_extension, grid);
    if (app.got_subcommand(roundtrip))
      return run_roundtrip(suite_filter, config, tol);
  } catch (const ParseError& e) {
    emit(json{{"error", e.what()}});
    return 2;
  } catch (const InvalidProblem& e) {
    emit(json{{"error", e.what()}});
    return 3;
  } catch (const InvalidConfig& e) {
    emit(json{{"error", e.what()}});
    return 3;
  } catch (const ShapeMismatch& e) {
    emit(json{{"error", e.what()}});
    return 3;
  } catch (const DegenerateTarget& e) {
    emit(json{{"error", e.what()}});
    return 3;
  } catch (const ScalarMatrix& e) {
    emit(json{{"error", e.what()}});
    return 3;
  } catch (const Error& e) {
    emit(json{{"error", e.what()}});
    return 1;
  }
  return 2;
}
