#pragma once

#include <vector>

#include "json.hpp"
#include "saltire/domains.hpp"
#include "saltire/feasibility.hpp"
#include "saltire/synthesis.hpp"
#include "saltire/types.hpp"

namespace saltire {

/// JSON conventions: a complex number is a two-element array [re, im]; a
/// matrix is an array of rows of complex numbers; structured types are
/// objects with snake_case keys.  All readers throw ParseError on
/// malformed input.

nlohmann::json json_of(cxd z);
nlohmann::json json_of(const MatX& m);
nlohmann::json json_of(const TetraPoint& x);
nlohmann::json json_of(const GammaPoint& g);
nlohmann::json json_of(const std::vector<cxd>& v);
nlohmann::json json_of(const InterpolationProblem& problem);
nlohmann::json json_of(const KernelCertificate& cert);
nlohmann::json json_of(const CertificateReport& report);
nlohmann::json json_of(const VerificationReport& report);
nlohmann::json json_of(const MatrixInterpolantReport& report);

/// Fetch a required object key, throwing ParseError when it is absent.
const nlohmann::json& at_key(const nlohmann::json& j, const char* key);

cxd complex_from(const nlohmann::json& j);
std::vector<cxd> complex_list_from(const nlohmann::json& j);
MatX matrix_from(const nlohmann::json& j);
Mat2 mat2_from(const nlohmann::json& j);
TetraPoint tetra_from(const nlohmann::json& j);
GammaPoint gamma_from(const nlohmann::json& j);
InterpolationProblem problem_from(const nlohmann::json& j);
KernelCertificate certificate_from(const nlohmann::json& j);

/// Parse a whole document; wraps the parser's exceptions in ParseError.
nlohmann::json parse_document(const std::string& text);

}  // namespace saltire
