#pragma once

#include <string>
#include <string_view>

#include "scl/canonical.hpp"
#include "scl/error.hpp"

namespace scl {

/// Why the loop may stop. `declared` is only produced with control
/// disabled, where Cognition's own terminate proposal is taken as final.
enum class TerminationGuard { none, goal_satisfied, confidence_threshold, budget_exhausted, declared };

inline std::string_view to_string(TerminationGuard g) {
    switch (g) {
        case TerminationGuard::none: return "none";
        case TerminationGuard::goal_satisfied: return "goal_satisfied";
        case TerminationGuard::confidence_threshold: return "confidence_threshold";
        case TerminationGuard::budget_exhausted: return "budget_exhausted";
        case TerminationGuard::declared: return "declared";
    }
    return "none";
}

inline TerminationGuard guard_from_string(std::string_view s) {
    for (auto g : {TerminationGuard::none, TerminationGuard::goal_satisfied,
                   TerminationGuard::confidence_threshold, TerminationGuard::budget_exhausted,
                   TerminationGuard::declared}) {
        if (to_string(g) == s) return g;
    }
    throw ValidationError("unknown termination guard '" + std::string(s) + "'");
}

struct TerminationStatus {
    bool ready = false;
    TerminationGuard guard = TerminationGuard::none;

    friend bool operator==(const TerminationStatus&, const TerminationStatus&) = default;
};

inline json to_json(const TerminationStatus& s) {
    json j{{"ready", s.ready}};
    if (s.ready) j["guard"] = std::string(to_string(s.guard));
    return j;
}

inline TerminationStatus termination_from_json(const json& j) {
    TerminationStatus s;
    s.ready = j.value("ready", false);
    s.guard = j.contains("guard") ? guard_from_string(j.at("guard").get<std::string>())
                                  : TerminationGuard::none;
    if (s.ready && s.guard == TerminationGuard::none) {
        throw ValidationError("termination ready without a guard");
    }
    return s;
}

}  // namespace scl
