#pragma once

#include <json.hpp>

#include <string>

namespace scl {

using json = nlohmann::json;

/// Compact, key-sorted, UTF-8 serialization. nlohmann::json objects are
/// std::map backed, so key order is lexicographic by construction.
inline std::string canonical_dump(const json& value) {
    return value.dump(-1, ' ', false, json::error_handler_t::strict);
}

}  // namespace scl
