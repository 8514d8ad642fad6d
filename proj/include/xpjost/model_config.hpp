#pragma once

#include <string>

#include "xpjost/jost.hpp"

namespace xpjost {

/// Parses {"model": "M1"|"M2", "a": {...}, "b": {...}, "L": number|"infinite"}.
/// Potentials are objects tagged by "family" (see family_name). Throws
/// ConfigError naming the offending field, or the line and column of a JSON
/// syntax error.
ModelSpec parse_model(const std::string& json_text);

/// Reads a file, or parses the argument directly when it starts with '{'.
ModelSpec load_model(const std::string& path_or_json);

/// Inverse of parse_model (compact JSON).
std::string model_to_json(const ModelSpec& m);

}  // namespace xpjost
