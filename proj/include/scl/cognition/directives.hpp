#pragma once

#include <string_view>

namespace scl::cognition {

/// Standing instructions given to Cognition every cycle. Versioned and
/// logged with each trace so runs stay comparable.
struct Directives {
    std::string_view version;
    std::string_view text;
};

inline constexpr Directives kDirectives{
    "scl-directives/1",
    "Read MEM before proposing. Propose the minimal next action that advances the goal. "
    "Avoid redundancy: do not repeat an executed call unless the context changed. "
    "Reference MEM facts: cite evidence for every proposal as 'path comparator literal'. "
    "Declare completion with propose=terminate citing goal evidence."};

}  // namespace scl::cognition
