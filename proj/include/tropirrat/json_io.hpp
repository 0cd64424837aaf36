#pragma once

// JSON encodings of polytopes, liftings, subdivisions and statuses.
//
// Integers are written as JSON numbers when they fit in 64 bits and as decimal
// strings otherwise; both forms are accepted on input. Rationals are "p/q" strings.

#include "tropirrat/classify.hpp"
#include "tropirrat/polytope.hpp"
#include "tropirrat/subdivision.hpp"

#include "json.hpp"

#include <string>

namespace tropirrat {

using Json = nlohmann::ordered_json;

/// Errors raised while decoding carry code "Schema" and name the offending field.
Int int_from_json(const Json& j, const std::string& field);
IntVec ivec_from_json(const Json& j, const std::string& field);
Rat rat_from_json(const Json& j, const std::string& field);

Json to_json(const Int& x);
Json to_json(const IntVec& v);
Json rat_to_json(const Rat& q);

Json polytope_to_json(const LatticePolytope& p);
LatticePolytope polytope_from_json(const Json& j);

Json lifting_to_json(const Lifting& l);
/// Lifting over the given polytope, or over the embedded "polytope" field when p is null.
Lifting lifting_from_json(const Json& j, const LatticePolytope* p = nullptr);

Json subdivision_to_json(const Subdivision& s);
Json map_to_json(const UnimodularMap& m);
Json status_to_json(const RationalityStatus& s);

Json parse_json_file(const std::string& path);

}  // namespace tropirrat
