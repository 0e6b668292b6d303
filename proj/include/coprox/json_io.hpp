/**
 * JSON schema for spaces, subspaces, vectors, matrices and verdicts.
 *
 * Exact values are written as "a/b" strings. On the exact path numbers may be
 * given as integers, "a/b" strings or plain decimal strings; JSON floats are
 * rejected there. Errors name the JSON pointer of the offending value.
 */

#ifndef COPROX_JSON_IO_HPP
#define COPROX_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "coprox/coapprox.hpp"
#include "coprox/faces.hpp"
#include "coprox/operators.hpp"
#include "coprox/spaces.hpp"
#include "coprox/verdict.hpp"

namespace coprox::io {

using nlohmann::json;

Rational parse_rational(const json& j, const std::string& path);
/** Accepts JSON numbers as well as rational strings. */
double parse_real(const json& j, const std::string& path);

QVector parse_qvector(const json& j, const std::string& path);
/** Rational vector, additionally accepting JSON floats (taken at their exact binary value). */
QVector parse_qvector_lenient(const json& j, const std::string& path);
RVector parse_rvector(const json& j, const std::string& path);
std::vector<QVector> parse_qvectors(const json& j, const std::string& path);

Space parse_space(const json& j, const std::string& path);
/** Floats accepted in the basis only when `lenient` (non-polyhedral ambient spaces). */
Subspace parse_subspace(const json& j, std::size_t ambient_dim, bool lenient, const std::string& path);

Matrix parse_matrix(const json& j, const std::string& path);
QMatrix parse_qmatrix(const json& j, const std::string& path);

json to_json(const Rational& r);
json to_json(const QVector& v);
json to_json(const RVector& v);
json to_json(const std::vector<QVector>& vs);
json to_json(const Matrix& m);
json to_json(const Certificate& c);
json to_json(const FaceDescriptor& f);
json to_json(const DefectReport& d);
json to_json(const NecessaryReport& r);

}   // namespace coprox::io

#endif
