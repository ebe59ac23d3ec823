#pragma once

#include <string>

#include "scl/canonical.hpp"
#include "scl/error.hpp"

namespace scl {

/// A named tool invocation with positional arguments.
struct ToolCall {
    std::string tool;
    json args = json::array();

    /// Tool name plus canonical argument bytes; the identity used for
    /// deduplication and redundancy counting.
    [[nodiscard]] std::string canonical() const { return tool + canonical_dump(args); }

    /// True when this call's leading arguments equal `key_args`.
    [[nodiscard]] bool matches(const std::string& name, const json& key_args) const {
        if (tool != name || !args.is_array() || !key_args.is_array()) return false;
        if (key_args.size() > args.size()) return false;
        for (std::size_t i = 0; i < key_args.size(); ++i) {
            if (args[i] != key_args[i]) return false;
        }
        return true;
    }

    friend bool operator==(const ToolCall&, const ToolCall&) = default;
};

inline json to_json(const ToolCall& c) { return json{{"tool", c.tool}, {"args", c.args}}; }

inline ToolCall tool_call_from_json(const json& j) {
    ToolCall c;
    c.tool = j.at("tool").get<std::string>();
    c.args = j.value("args", json::array());
    if (!c.args.is_array()) throw ValidationError("tool call args must be an array");
    return c;
}

/// Canonicalizes argument values: strings are trimmed of surrounding
/// whitespace, everything else is kept as is.
inline json canonical_args(const json& args) {
    json out = json::array();
    for (const auto& a : args) {
        if (a.is_string()) {
            auto s = a.get<std::string>();
            const auto b = s.find_first_not_of(" \t\n");
            const auto e = s.find_last_not_of(" \t\n");
            out.push_back(b == std::string::npos ? std::string{} : s.substr(b, e - b + 1));
        } else {
            out.push_back(a);
        }
    }
    return out;
}

}  // namespace scl
