#pragma once

#include <string>

#include "dms/crooked.hpp"
#include "json.hpp"

namespace dms {

using Json = nlohmann::json;

// Parse / schema errors throw ParseError naming the offending field.
Json read_json_file(const std::string& path);
// Two-space indent plus a trailing newline. Doubles print as shortest round-trip decimals.
std::string dump(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

Json vec_to_json(const Vec21& v);
Vec21 vec_from_json(const Json& j);

// Generators as [[a,b],[c,d]], the domain with its side pairings and spike words, and the
// tolerances. Reading does not audit.
Json surface_to_json(const DecoratedSurface& s);
DecoratedSurface surface_from_json(const Json& j);
Json audit_to_json(const AuditReport& r);
// Either a full surface document or a recipe {"construct": family, ...constructor parameters};
// {"construct": "bundled", "name": ...} picks a bundled example.
DecoratedSurface surface_from_document(const Json& j);

Json arcs_to_json(const WeightedArcFamily& x);
WeightedArcFamily arcs_from_json(const Json& j);

// Cocycle keyed by generator name ("g0", "g1", ...).
Json tangent_to_json(const TangentVector& t, int base_tile);
TangentVector tangent_from_json(const Json& j);
Json tile_map_to_json(const TileMap& m);

Json admissible_to_json(const AdmissibleReport& r);
Json opposite_sign_to_json(const OppositeSignReport& r);
Json spacetime_to_json(const DecoratedSpacetime& d);

}  // namespace dms
