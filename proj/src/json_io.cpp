#include "saltire/json_io.hpp"

#include <string>

namespace saltire {

namespace {

using nlohmann::json;

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kForwardConstructed:
      return "forward-constructed";
    case Provenance::kSearched:
      return "searched";
    case Provenance::kExternal:
      return "external";
  }
  return "external";
}

Provenance provenance_from(const std::string& name) {
  if (name == "forward-constructed") return Provenance::kForwardConstructed;
  if (name == "searched") return Provenance::kSearched;
  if (name == "external") return Provenance::kExternal;
  throw ParseError("unknown provenance tag: " + name);
}

/// Fetch a required key or throw ParseError naming it.
const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number_from(const json& j) {
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

}  // namespace

const json& at_key(const json& j, const char* key) { return at(j, key); }

json json_of(cxd z) { return json::array({z.real(), z.imag()}); }

json json_of(const MatX& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json_of(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json json_of(const TetraPoint& x) {
  return {{"x1", json_of(x.x1)}, {"x2", json_of(x.x2)}, {"x3", json_of(x.x3)}};
}

json json_of(const GammaPoint& g) {
  return {{"s", json_of(g.s)}, {"p", json_of(g.p)}};
}

json json_of(const std::vector<cxd>& v) {
  json out = json::array();
  for (const cxd& z : v) out.push_back(json_of(z));
  return out;
}

json json_of(const InterpolationProblem& problem) {
  json targets = json::array();
  for (const TetraPoint& x : problem.targets) targets.push_back(json_of(x));
  return {{"nodes", json_of(problem.nodes)}, {"targets", std::move(targets)}};
}

json json_of(const KernelCertificate& cert) {
  json targets = json::array();
  for (const TetraPoint& x : cert.targets) targets.push_back(json_of(x));
  return {{"nodes", json_of(cert.nodes)},
          {"targets", std::move(targets)},
          {"z_points", json_of(cert.z_points)},
          {"n", json_of(cert.n)},
          {"m", json_of(cert.m)},
          {"provenance", provenance_name(cert.provenance)},
          {"production_residual", cert.production_residual}};
}

json json_of(const CertificateReport& report) {
  return {{"verdict", report.verdict},
          {"n_min_eig", report.n_min_eig},
          {"m_min_eig", report.m_min_eig},
          {"slab_min_eig", report.slab_min_eig},
          {"n_rank_ratio", report.n_rank_ratio},
          {"n_bound_ok", report.n_bound_ok},
          {"m_bound_ok", report.m_bound_ok},
          {"monotone_family", report.monotone_family},
          {"second_triple_gap", report.second_triple_gap}};
}

json json_of(const VerificationReport& report) {
  return {{"node_residuals", report.node_residuals},
          {"sup_membership_residual", report.sup_membership_residual},
          {"sup_norm_excess", report.sup_norm_excess},
          {"boundary_x3_gap", report.boundary_x3_gap}};
}

json json_of(const MatrixInterpolantReport& report) {
  return {{"node_residuals", report.node_residuals},
          {"sup_mu", report.sup_mu},
          {"nodes_ok", report.nodes_ok},
          {"mu_ok", report.mu_ok}};
}

cxd complex_from(const json& j) {
  if (j.is_number()) return cxd(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    throw ParseError("a complex number must be [re, im] or a plain number");
  return cxd(number_from(j[0]), number_from(j[1]));
}

std::vector<cxd> complex_list_from(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of complex numbers");
  std::vector<cxd> out;
  out.reserve(j.size());
  for (const json& item : j) out.push_back(complex_from(item));
  return out;
}

MatX matrix_from(const json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("expected a nonempty array of matrix rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    throw ParseError("matrix rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  MatX m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from(j[r][c]);
  }
  return m;
}

Mat2 mat2_from(const json& j) {
  const MatX m = matrix_from(j);
  if (m.rows() != 2 || m.cols() != 2)
    throw ParseError("expected a 2x2 matrix");
  return m;
}

TetraPoint tetra_from(const json& j) {
  if (j.is_array()) {
    if (j.size() != 3)
      throw ParseError("a tetrablock point as an array must have 3 entries");
    return {complex_from(j[0]), complex_from(j[1]), complex_from(j[2])};
  }
  return {complex_from(at(j, "x1")), complex_from(at(j, "x2")),
          complex_from(at(j, "x3"))};
}

GammaPoint gamma_from(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2)
      throw ParseError("a symmetrised-bidisc point as an array must have 2 "
                       "entries");
    return {complex_from(j[0]), complex_from(j[1])};
  }
  return {complex_from(at(j, "s")), complex_from(at(j, "p"))};
}

InterpolationProblem problem_from(const json& j) {
  InterpolationProblem problem;
  problem.nodes = complex_list_from(at(j, "nodes"));
  const json& targets = at(j, "targets");
  if (!targets.is_array()) throw ParseError("targets must be an array");
  for (const json& t : targets) problem.targets.push_back(tetra_from(t));
  return problem;
}

KernelCertificate certificate_from(const json& j) {
  KernelCertificate cert;
  cert.nodes = complex_list_from(at(j, "nodes"));
  const json& targets = at(j, "targets");
  if (!targets.is_array()) throw ParseError("targets must be an array");
  for (const json& t : targets) cert.targets.push_back(tetra_from(t));
  cert.z_points = complex_list_from(at(j, "z_points"));
  cert.n = matrix_from(at(j, "n"));
  cert.m = matrix_from(at(j, "m"));
  if (j.contains("provenance"))
    cert.provenance = provenance_from(j.at("provenance").get<std::string>());
  if (j.contains("production_residual"))
    cert.production_residual = number_from(j.at("production_residual"));
  return cert;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace saltire
