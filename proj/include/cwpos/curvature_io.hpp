#pragma once

// JSON encoding of curvature points, forms and witnesses.
//
// Curvature file:
//   { "schema_version": 1, "n": 3, "r": 2,
//     "theta": [ [ {"entries": [ {"j": 1, "k": 1, "re": 0.0, "im": -1.0}, ... ]}, ... ], ... ] }
// theta[a][b] holds Theta_{a+1,b+1} = sum entries (re + i im) e_j^v ^ conj(e_k^v),
// with j and k 1-based. A missing schema_version is read as version 1.

#include <string>
#include <vector>

#include "json.hpp"

#include "cwpos/chern_weil.hpp"

namespace cwpos {

inline constexpr int kCurvatureSchemaVersion = 1;

nlohmann::json curvature_to_json(const CurvaturePoint& c);
/// Throws ParseError for malformed documents and InvalidArgument naming the
/// entry when Hermitian symmetry fails.
CurvaturePoint curvature_from_json(const nlohmann::json& doc);

CurvaturePoint read_curvature_file(const std::string& path);
void write_curvature_file(const std::string& path, const CurvaturePoint& c);

/// {"n", "p", "q", "terms": [{"hol": [...], "antihol": [...], "re", "im"}]}, indices 1-based.
nlohmann::json form_to_json(const ExteriorForm& u);
ExteriorForm form_from_json(const nlohmann::json& doc);

/// [[re, im], ...]
nlohmann::json complex_vector_to_json(const std::vector<Complex>& v);
std::vector<Complex> complex_vector_from_json(const nlohmann::json& doc);

}  // namespace cwpos
