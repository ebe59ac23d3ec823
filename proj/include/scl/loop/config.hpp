#pragma once

#include <functional>
#include <optional>
#include <string>

#include "scl/cognition/policy.hpp"
#include "scl/error.hpp"
#include "scl/mem/episode_memory.hpp"

namespace scl::loop {

enum class PolicyKind { oracle, faulty, adapter };

inline std::string_view to_string(PolicyKind p) {
    switch (p) {
        case PolicyKind::oracle: return "oracle";
        case PolicyKind::faulty: return "faulty";
        case PolicyKind::adapter: return "adapter";
    }
    return "?";
}

inline PolicyKind policy_from_string(std::string_view s) {
    if (s == "oracle") return PolicyKind::oracle;
    if (s == "faulty") return PolicyKind::faulty;
    if (s == "adapter") return PolicyKind::adapter;
    throw ConfigError("unknown cognition policy '" + std::string(s) + "'");
}

/// Builds the adapter transport for one episode run.
using TransportFactory = std::function<cognition::Transport(const scenarios::EpisodeSpec&, std::uint64_t seed)>;

struct AgentConfig {
    bool memory_enabled = true;
    bool control_enabled = true;
    PolicyKind policy = PolicyKind::oracle;
    cognition::FaultModel faults;
    /// Overrides the episode's own budget when set.
    std::optional<int> budget;
    double confidence_threshold = 0.99;
    std::size_t window = 2;
    double p_transient = 0.0;
    TransportFactory transport;

    /// System names used on the command line and in reports.
    [[nodiscard]] std::string system() const {
        if (memory_enabled && control_enabled) return "scl";
        if (!memory_enabled && control_enabled) return "no-mem";
        if (memory_enabled && !control_enabled) return "no-control";
        return "none";
    }

    [[nodiscard]] mem::StoreMode store_mode() const {
        return memory_enabled ? mem::StoreMode::full_history() : mem::StoreMode::windowed_slots(window);
    }

    void validate() const {
        faults.validate();
        if (budget && *budget < 0) throw ConfigError("budget must be non-negative");
        if (confidence_threshold < 0 || confidence_threshold > 1) throw ConfigError("confidence threshold outside [0,1]");
        if (window == 0) throw ConfigError("memory window must be at least 1");
        if (p_transient < 0 || p_transient >= 1) throw ConfigError("transient failure probability outside [0,1)");
    }
};

inline AgentConfig config_for_system(std::string_view system) {
    AgentConfig c;
    if (system == "scl") return c;
    if (system == "no-mem") {
        c.memory_enabled = false;
    } else if (system == "no-control") {
        c.control_enabled = false;
    } else if (system == "none") {
        c.memory_enabled = false;
        c.control_enabled = false;
    } else {
        throw ConfigError("unknown system '" + std::string(system) + "'");
    }
    return c;
}

inline json to_json(const AgentConfig& c) {
    return json{{"system", c.system()},
                {"memory_enabled", c.memory_enabled},
                {"control_enabled", c.control_enabled},
                {"policy", std::string(to_string(c.policy))},
                {"faults", cognition::to_json(c.faults)},
                {"budget", c.budget ? json(*c.budget) : json(nullptr)},
                {"confidence_threshold", c.confidence_threshold},
                {"window", c.window},
                {"p_transient", c.p_transient}};
}

}  // namespace scl::loop
