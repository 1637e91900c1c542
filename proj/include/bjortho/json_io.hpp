#ifndef BJORTHO_JSON_IO_HPP_
#define BJORTHO_JSON_IO_HPP_

#include "bjortho/core.hpp"
#include "bjortho/lp2_exact.hpp"
#include "bjortho/operator_engine.hpp"
#include "bjortho/operator_orthogonality.hpp"
#include "bjortho/vector_orthogonality.hpp"

#include <json.hpp>

#include <string>

namespace bjortho {

using json = nlohmann::json;

// Wire format: vectors {"re": [...], "im": [...]}, matrices
// {"rows": m, "cols": n, "re": [[...]], "im": [[...]]} with re[i][j] the
// entry in row i, column j. A missing "im" means the real case.
CVector vector_from_json(const json& j);
json vector_to_json(const CVector& x);
COperator operator_from_json(const json& j);
json operator_to_json(const COperator& t);

json complex_to_json(Complex z);

NumericConfig config_from_json(const json& j, NumericConfig base = {});
json config_to_json(const NumericConfig& cfg);

// p given as a number or as "inf".
PExponent exponent_from_string(const std::string& s);
json exponent_to_json(const PExponent& p);

json to_json(const NormResult& r);
json to_json(const AttainmentSet& s);
json to_json(const MembershipVerdict& m);
json to_json(const VectorOrthVerdict& v);
json to_json(const OrthVerdict& v);
json to_json(const WitnessTable& t);
json to_json(const PhiSplitResult& r);
json to_json(const ConnectedResult& r);
json to_json(const MtStructureReport& r);
json to_json(const LeftSymClass& c);
json to_json(const NotLeftSymCertificate& c);

json read_json_file(const std::string& path);

// Serializes with sorted keys and floats at 17 significant digits, so equal
// documents are byte-identical. Non-finite floats become null.
std::string dump_json(const json& j, int indent = 2);

}  // namespace bjortho

#endif  // BJORTHO_JSON_IO_HPP_
