#pragma once

#include "sac/blockmodel.hpp"
#include "sac/witness.hpp"

#include "json.hpp"

#include <string>

namespace sac {

using Json = nlohmann::ordered_json;

// Doubles serialize as IEEE shortest round-trip decimals (nlohmann default);
// +inf serializes as the literal string "inf".
Json json_number(double v);
std::string format_double(double v); // shortest round-trip, for CSV cells

Json to_json(const BoundValue& bv);
Json to_json(const WitnessMatrix3& w);
Json to_json(const WitnessReport& r);
Json to_json(const RemdelReport& r);
Json to_json(const AngleReport& r);
Json to_json(const GapReport& r);
Json to_json(const CertifyResult& r);

Json to_json(const Matrix& m); // nested row-major arrays
Matrix matrix_from_json(const Json& j);

// Instance schema:
// { "a0": [[..]], "a1": [[..]], "b": [[..]],
//   "sigma0": [..], "sigma1": [..], "gap": {"lo":, "hi":, "d":} }
Json to_json(const BlockMatrix& m);
BlockMatrix block_matrix_from_json(const Json& j); // SchemaError on bad structure

} // namespace sac
