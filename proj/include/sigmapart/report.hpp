#pragma once

#include <string>

#include "json.hpp"

namespace sigmapart {

using Json = nlohmann::json;

/// %.17g; non-finite values become "nan", "inf", "-inf".
std::string format_double(double x);

/// Deterministic JSON text: keys in lexicographic order (std::map backing),
/// floats at 17 significant digits, non-finite floats as null, two-space
/// indentation, trailing LF.
std::string dump_json(const Json& j);

}  // namespace sigmapart
