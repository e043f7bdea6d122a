#pragma once

#include <json.hpp>

#include "cfx/cf.hpp"
#include "cfx/hyperbolic.hpp"
#include "cfx/identities.hpp"
#include "cfx/modgroup.hpp"

namespace cfx {

constexpr const char* kSchema = "cfx/1";

nlohmann::json expansion_to_json(const Space& space, const Expansion& e);
Expansion expansion_from_json(const Space& space, const nlohmann::json& j);

nlohmann::json eval_to_json(const Space& space, const EvalResult& r);
nlohmann::json classification_to_json(const Classification& c);
nlohmann::json trace_to_json(const Space& space, const HoroballTrace& t);
nlohmann::json geodesic_to_json(const GeodesicMinHeight& g);
nlohmann::json properness_to_json(const PropernessReport& p);
nlohmann::json validation_to_json(const ValidationReport& v);

/// Canonical dump (sorted keys, stable formatting) so that parse + re-emit
/// is byte-identical.
std::string json_dump(const nlohmann::json& j);

} // namespace cfx
