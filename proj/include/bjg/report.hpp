#pragma once

// JSON views of every result type, plus the human rendering of a report tree.

#include <string>
#include <string_view>

#include "bjg/extremality.hpp"
#include "bjg/grothendieck.hpp"
#include "bjg/symmetry.hpp"
#include "json.hpp"

namespace bjg {

using Json = nlohmann::ordered_json;

// Real scalars as numbers, complex scalars as [re, im].
Json scalar_json(Scalar z, Field field);
Json matrix_json(const OperatorMatrix& t);
Json point_json(const Point& x, Field field);
Json membership_json(const HullMembership& h);
Json norming_json(const NormingSet& ns, Field field);
Json orthogonality_json(const OperatorOrthogonality& o, Field field);
Json extremality_json(const ExtremalityCertificate& cert, const OperatorMatrix& t);
Json witness_json(const WitnessReport& report);
Json pair_json(const SymmetryPair& pair, Field field);
Json vector_system_json(const VectorSystem& system);
Json grothendieck_json(const GrothendieckSearchResult& result);

// 64-bit FNV-1a as 16 lowercase hex digits.
std::string content_hash(std::string_view bytes);

// Indented "key: value" lines; numeric rows stay on one line.
std::string render_human(const Json& tree);

}  // namespace bjg
