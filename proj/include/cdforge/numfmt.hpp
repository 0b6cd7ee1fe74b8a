#pragma once

#include <string>

#include <json.hpp>

namespace cdforge {

// %.17g-equivalent rendering via std::to_chars: locale-independent,
// round-trip exact.
std::string format_double(double v);

// Serialize with every floating-point number printed to 17 significant
// digits.  Object keys keep nlohmann's canonical (sorted) order, so equal
// documents dump to identical bytes.
std::string dump_json17(const nlohmann::json& j, int indent = 2);

}  // namespace cdforge
