#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "qw/state.hpp"
#include "qw/walk.hpp"

namespace qw {

using json = nlohmann::json;

// Walk file: {"name", "d", "n", "entries": n x n arrays of
// {"shift": [s_1..s_d], "re", "im"} term lists}.  Parsing validates the
// schema (SchemaError) and the unitarity gate (NonUnitaryError).
WalkDefinition parse_walk(const json& j);
json serialize_walk(const WalkDefinition& w);

// State file: {"d", "n", "amplitudes": [{"pos": [..], "comp", "re", "im"}]}
// with comp zero-based.
StateVector parse_state(const json& j);
json serialize_state(const StateVector& s);

json load_json(const std::string& path);           // IOError / SchemaError
void save_json(const std::string& path, const json& j);

WalkDefinition load_walk(const std::string& path);
StateVector load_state(const std::string& path);

}  // namespace qw
